#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "nashlab/game.hpp"
#include "nashlab/matrix.hpp"
#include "nashlab/rng.hpp"

namespace nashlab {

// One-dimensional sampling distribution; all mass lies in [-bound, bound].
// difference_of(X) draws two independent X samples per variate and subtracts
// them (first minus second), doubling the bound.
struct NoiseSpec {
  enum class Family { kUniformInterval, kRademacherScaled, kDiscreteTable, kDifferenceOf };

  Family family = Family::kDiscreteTable;
  std::vector<double> values;  // discrete_table support (or the single scale param)
  std::vector<double> probs;   // discrete_table probabilities
  double bound = 0.0;
  std::shared_ptr<const NoiseSpec> inner;  // difference_of child

  static NoiseSpec uniform_interval(double b);
  static NoiseSpec rademacher_scaled(double s);
  static NoiseSpec discrete_table(std::vector<double> values, std::vector<double> probs);
  static NoiseSpec point_mass(double v);
  static NoiseSpec difference_of(NoiseSpec x);

  double sample(Rng& rng) const;
  std::string to_string() const;
  // Grammar: uniform:B | rademacher:S | point:V | table:v@p,v@p,... | diff(SPEC)
  static NoiseSpec parse(const std::string& text);
};

// Y := X - X'. Sampling the result equals drawing two independent X variates
// and subtracting.
NoiseSpec symmetrize(const NoiseSpec& x);

// n x n matrix with entries i.i.d. from spec, in row-major draw order.
// Deterministic in (spec, n, seed).
Matrix sample_noise_matrix(const NoiseSpec& spec, int n, std::uint64_t seed);

// Contiguous partition of [n] into b blocks of length ell.
struct BlockMap {
  int n = 0;
  int blocks = 0;
  int block_len = 0;

  BlockMap() = default;
  BlockMap(int b, int ell) : n(b * ell), blocks(b), block_len(ell) {}
  int block_of(int i) const { return i / block_len; }
  int begin(int blk) const { return blk * block_len; }
  int end(int blk) const { return (blk + 1) * block_len; }
};

// P tensored with the all-ones ell x ell block: out[r][c] = P[r/ell][c/ell].
Matrix tensor_with_ones(const Matrix& p, int ell);

// Ablation hook: zero out any subset of the sampled gadget matrices.
struct GadgetMask {
  bool zero_z0 = false;
  bool zero_z1 = false;
  bool zero_a_eps = false;
  bool zero_b_eps = false;
};

struct ReductionOptions {
  double signal_scale = 1.0;  // multiplies P and Q inside the construction
  bool scale_third = false;   // divide the final payoffs by 3
  GadgetMask mask;
};

// A fully materialized reduced instance:
//   A = signal_scale*(P (x) J) + Z0 + Z1 + A_eps
//   B = signal_scale*(Q (x) J) - Z0 - Z1 + B_eps
// with Z0 Rademacher(+-1), Z1 uniform[-1,1], A_eps/B_eps i.i.d. from noise,
// all four regenerable bit-identically from the recorded sub-seeds. For the
// general-X variant the worst-case part W and fresh noise N are stored so
// the instance literally matches the smoothed-problem shape (W + N).
struct ReductionInstance {
  BimatrixGame source;   // (P, Q), b x b, as supplied (signal_scale not applied)
  BimatrixGame reduced;  // (A, B), n x n
  BlockMap block_map;
  NoiseSpec noise;
  std::uint64_t master_seed = 0;
  std::uint64_t seed_z0 = 0, seed_z1 = 0, seed_a_eps = 0, seed_b_eps = 0;
  ReductionOptions options;
  bool general_x = false;

  Matrix z0, z1, a_eps, b_eps;      // sampled gadget realizations (pre-scaling)
  Matrix w_a, w_b, n_a, n_b;        // general-X split (empty otherwise)
  std::vector<std::string> warnings;

  // max |A + B - scale*((sP + sQ) (x) J) - scale*A_eps - scale*B_eps|;
  // the zero-sum gadgets cancel exactly, so this is pure roundoff.
  double gadget_residual() const;
  double payoff_scale() const { return options.scale_third ? 1.0 / 3.0 : 1.0; }
};

ReductionInstance build_reduced_game(const Matrix& p, const Matrix& q, int ell,
                                     const NoiseSpec& noise, std::uint64_t master_seed,
                                     const ReductionOptions& options = {});

// General-X rewrite: noise Y = X - X' with the subtracted sample folded into
// the worst-case part, W_A = sP(x)J + Z0 + Z1 - A'_X and N_A = A_X. Given
// matched seeds, W + N reproduces the symmetric construction with noise
// difference_of(X) to within roundoff.
ReductionInstance build_general_x_game(const Matrix& p, const Matrix& q, int ell,
                                       const NoiseSpec& x, std::uint64_t master_seed,
                                       const ReductionOptions& options = {});

// Block-sum decoding x_hat[i] = sum over block I_i of x (compensated
// summation). Mass is preserved exactly up to the 1e-12 renormalization.
std::pair<MixedStrategy, MixedStrategy> decode_strategies(const MixedStrategy& x,
                                                          const MixedStrategy& y,
                                                          const BlockMap& bm);

// Max regret of the decoded pair in the source game (P, Q): the empirical
// approximation defect of the decoding map. (x, y) is expected to be a
// 1e-6-equilibrium of the reduced game; *reduced_ok reports that check.
double decoding_defect(const ReductionInstance& inst, const MixedStrategy& x,
                       const MixedStrategy& y, bool* reduced_ok = nullptr);

// Directory layout: manifest.json + source.game + reduced.game, plus the
// four gadget matrices as .mat files when persist_noise is set. Loading
// rebuilds from the manifest seeds and cross-checks the stored games.
void save_instance(const std::string& dir, const ReductionInstance& inst,
                   bool persist_noise = false);
ReductionInstance load_instance(const std::string& dir);

}  // namespace nashlab
