#pragma once

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nashlab/game.hpp"

namespace nashlab {

// Every solver validates its output against this regret tolerance.
inline constexpr double kSolverTol = 1e-8;
// Equilibria closer than this in l_inf (over the concatenated pair) are one.
inline constexpr double kDedupTol = 1e-7;

struct SupportPair {
  std::vector<int> rows;
  std::vector<int> cols;
};

struct SolverReport {
  std::vector<EquilibriumRecord> equilibria;
  std::string method;
  long long examined = 0;  // pivots or support pairs, depending on method
  bool degenerate = false;
  long long skipped_singular = 0;
  long long skipped_singular_unequal = 0;
  std::vector<SupportPair> skipped;  // support pairs with singular systems
  // Equilibria whose exact support pair had |S| != |T| (only populated when
  // unequal pairs are enumerated; expected empty for continuous games).
  long long unequal_support_found = 0;
};

struct ZeroSumSolution {
  double value = 0.0;
  MixedStrategy x;  // maximizer (rows)
  MixedStrategy y;  // minimizer (cols)
  long long pivots = 0;
};

struct SolverLimits {
  long long pivot_limit = 1'000'000;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

class SolverTimeout : public std::runtime_error {
 public:
  explicit SolverTimeout(const std::string& what) : std::runtime_error(what) {}
};

// Minimax solution of the zero-sum game (C, -C) via a dense primal simplex
// on the standard payoff LP (Dantzig entering rule with a Bland fallback
// against stalling). Postcondition: both regrets of (x, y) in (C, -C) are
// <= 1e-8 and value = x^T C y; throws on numerical failure.
ZeroSumSolution solve_zero_sum(const Matrix& c, const SolverLimits& limits = {});

// Complementary pivoting with lexicographic degeneracy resolution. Payoffs
// are shifted internally to be strictly positive; the shift cancels in the
// returned strategies. initial_label is 0-based in [0, rows + cols).
// Deterministic in (game, initial_label).
EquilibriumRecord lemke_howson(const BimatrixGame& game, int initial_label,
                               const SolverLimits& limits = {});

// Exhaustively solves the indifference system for every support pair with
// |S| = |T| <= max_support (Gaussian elimination; singular pairs are skipped
// and recorded). include_unequal additionally examines |S| != |T| pairs,
// which admit an exact-support equilibrium only for degenerate games.
SolverReport support_enumeration(const BimatrixGame& game, int max_support,
                                 bool include_unequal = false,
                                 const SolverLimits& limits = {});

// All cells (i, j) with A[i][j] maximal in column j and B[i][j] maximal in
// row i, ties included, in row-major order.
std::vector<std::pair<int, int>> pure_equilibria(const BimatrixGame& game);

// True iff full support enumeration over unequal pairs finds no equilibrium
// whose exact support sizes differ. Degenerate games (singular systems with
// consistent unequal-support candidates) may return false; *degenerate is
// set when that happens.
bool only_support_sizes_equal_check(const BimatrixGame& game, bool* degenerate = nullptr);

}  // namespace nashlab
