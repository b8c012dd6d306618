#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace nashlab {

// Geometric level partition of a distribution's coordinates. D is the level
// ratio, L the level count and the sparse/dense threshold. The asymptotic
// analysis takes both to astronomically large values; these desk-scale
// defaults keep every level populated at feasible n. Natural log everywhere
// a beta or sqrt(log n) appears.
struct PartitionParams {
  double level_ratio = 4.0;  // D > 1
  int level_count = 2;       // L >= 1

  static PartitionParams defaults_for(int n);
};

struct PartitionReport {
  // levels[i] lists the coordinates whose value lies in E_{i+1}; zero-valued
  // coordinates land in the last level but do not count as nonzeros.
  std::vector<std::vector<int>> levels;
  std::vector<int> nonzeros_per_level;
  std::vector<int> dense_levels;  // 1-based level ids with > L nonzeros
  std::vector<double> sparse_part;
  std::vector<double> dense_part;
  double beta = 0.0;
  double sparse_l1 = 0.0;
  double dense_l2 = 0.0;
};

// Coordinates exactly at a boundary D^-i go to the lower level (the
// half-open intervals (D^-i, D^-(i-1)] read literally).
PartitionReport robust_partition(std::span<const double> x, const PartitionParams& params);

// sqrt(ln n) * ||x_dense||_2 + ||x_sparse||_1, computed in one pass.
double benchmark_beta(std::span<const double> x, const PartitionParams& params);

struct ProbabilityEstimate {
  double estimate = 0.0;
  double wilson_lo = 0.0;
  double wilson_hi = 1.0;
  long long trials = 0;
  bool exact = false;
  double threshold = 0.0;  // c * beta(x)
};

// Pr[<v, x> >= c * beta(x)] over Rademacher v. Monte Carlo with a Wilson 95%
// interval, or exact enumeration over all sign patterns of the support when
// exact is set (support must have at most 25 nonzeros).
ProbabilityEstimate anti_concentration_estimate(std::span<const double> x,
                                                const PartitionParams& params, double c,
                                                long long trials, std::uint64_t seed,
                                                bool exact = false);

// Exact Pr[<v, x> >= threshold] by sign enumeration (test oracle surface).
double sign_enumeration_probability(std::span<const double> x, double threshold);

}  // namespace nashlab
