#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nashlab/matrix.hpp"

namespace nashlab {

inline constexpr double kDefaultSupportTol = 1e-9;

// Two-player game in normal form. payoff_a is the row player's matrix,
// payoff_b the column player's; both n x m. Rectangular games are allowed
// even though the reduction only ever emits square ones.
struct BimatrixGame {
  Matrix payoff_a;
  Matrix payoff_b;

  BimatrixGame() = default;
  BimatrixGame(Matrix a, Matrix b);

  int rows() const { return payoff_a.rows; }
  int cols() const { return payoff_a.cols; }
};

// Probability vector with an explicit support set. Construction renormalizes
// when |sum - 1| <= 1e-9 and rejects larger deviations; entries in
// [-1e-9, 0) are clamped to zero, more negative ones are rejected.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  explicit MixedStrategy(std::vector<double> weights, double support_tol = kDefaultSupportTol);

  static MixedStrategy one_hot(int n, int index, double support_tol = kDefaultSupportTol);
  static MixedStrategy uniform(int n, double support_tol = kDefaultSupportTol);

  const std::vector<double>& weights() const { return weights_; }
  const std::vector<int>& support() const { return support_; }
  double support_tol() const { return support_tol_; }
  int size() const { return static_cast<int>(weights_.size()); }
  double operator[](int i) const { return weights_[i]; }
  double l2() const;

 private:
  std::vector<double> weights_;
  std::vector<int> support_;
  double support_tol_ = kDefaultSupportTol;
};

struct EquilibriumRecord {
  MixedStrategy x;
  MixedStrategy y;
  double regret_row = 0.0;
  double regret_col = 0.0;
  std::pair<int, int> support_sizes{0, 0};
  std::pair<double, double> l2_norms{0.0, 0.0};
};

// (x^T A y, x^T B y). Throws std::invalid_argument on dimension mismatch.
std::pair<double, double> payoff(const BimatrixGame& game, const MixedStrategy& x,
                                 const MixedStrategy& y);

// (max_i e_i^T A y - x^T A y, max_j x^T B e_j - x^T B y). Both are >= 0 up
// to roundoff for any strategies.
std::pair<double, double> regrets(const BimatrixGame& game, const MixedStrategy& x,
                                  const MixedStrategy& y);

bool is_epsilon_equilibrium(const BimatrixGame& game, const MixedStrategy& x,
                            const MixedStrategy& y, double eps);

EquilibriumRecord make_record(const BimatrixGame& game, MixedStrategy x, MixedStrategy y);

// Submatrices in the induced index order, with index maps back to the parent.
struct RestrictedGame {
  BimatrixGame game;
  std::vector<int> row_map;  // restricted row i came from parent row row_map[i]
  std::vector<int> col_map;
};

RestrictedGame restrict(const BimatrixGame& game, const std::vector<int>& row_set,
                        const std::vector<int>& col_set);

// Text format: line 1 "n m"; next n lines rows of A; next n lines rows of B.
// Whitespace-separated decimal floats, written with 17 significant digits so
// round-trips are bit-exact.
BimatrixGame load_game(std::istream& in);
BimatrixGame load_game_file(const std::string& path);
void save_game(std::ostream& out, const BimatrixGame& game);
void save_game_file(const std::string& path, const BimatrixGame& game);

// Strategy format: one line of n floats.
MixedStrategy load_strategy_line(const std::string& line, double support_tol = kDefaultSupportTol);

// 17-significant-digit formatting used for every number the artifact writes;
// guarantees exact double round-trip and byte-stable output.
std::string fmt_double(double v);

}  // namespace nashlab
