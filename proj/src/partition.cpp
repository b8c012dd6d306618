#include "nashlab/partition.hpp"

#include <cmath>
#include <stdexcept>

#include "nashlab/rng.hpp"
#include "nashlab/stats.hpp"

namespace nashlab {

PartitionParams PartitionParams::defaults_for(int n) {
  PartitionParams p;
  int log2n = 0;
  while ((1 << log2n) < n) ++log2n;
  p.level_count = std::max(2, (log2n + 7) / 8);
  return p;
}

namespace {

void check_distribution(std::span<const double> x) {
  if (x.empty()) throw std::invalid_argument("partition input must be nonempty");
  double sum = 0.0;
  for (double v : x) {
    if (v < 0.0) throw std::invalid_argument("partition input must be a distribution (v >= 0)");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("partition input must sum to 1 (got " + std::to_string(sum) + ")");
}

void check_params(const PartitionParams& p) {
  if (!(p.level_ratio > 1.0)) throw std::invalid_argument("level ratio D must be > 1");
  if (p.level_count < 1) throw std::invalid_argument("level count L must be >= 1");
}

// 1-based level of value v: smallest i < L with v > D^-i, else L.
int level_of(double v, double d, int l) {
  double thr = 1.0;
  for (int i = 1; i < l; ++i) {
    thr /= d;
    if (v > thr) return i;
  }
  return l;
}

}  // namespace

PartitionReport robust_partition(std::span<const double> x, const PartitionParams& params) {
  check_distribution(x);
  check_params(params);
  const int n = static_cast<int>(x.size());
  const int l = params.level_count;

  PartitionReport rep;
  rep.levels.assign(l, {});
  rep.nonzeros_per_level.assign(l, 0);
  std::vector<int> level_of_coord(n);
  for (int j = 0; j < n; ++j) {
    const int lv = level_of(x[j], params.level_ratio, l);
    level_of_coord[j] = lv;
    rep.levels[lv - 1].push_back(j);
    if (x[j] != 0.0) ++rep.nonzeros_per_level[lv - 1];
  }
  std::vector<bool> dense(l, false);
  for (int i = 0; i < l; ++i)
    if (rep.nonzeros_per_level[i] > l) {
      dense[i] = true;
      rep.dense_levels.push_back(i + 1);
    }
  rep.sparse_part.assign(n, 0.0);
  rep.dense_part.assign(n, 0.0);
  double l2sq = 0.0;
  for (int j = 0; j < n; ++j) {
    if (dense[level_of_coord[j] - 1]) {
      rep.dense_part[j] = x[j];
      l2sq += x[j] * x[j];
    } else {
      rep.sparse_part[j] = x[j];
      rep.sparse_l1 += x[j];
    }
  }
  rep.dense_l2 = std::sqrt(l2sq);
  rep.beta = std::sqrt(std::log(static_cast<double>(n))) * rep.dense_l2 + rep.sparse_l1;
  return rep;
}

double benchmark_beta(std::span<const double> x, const PartitionParams& params) {
  check_distribution(x);
  check_params(params);
  const int n = static_cast<int>(x.size());
  const int l = params.level_count;
  std::vector<int> counts(l, 0);
  std::vector<double> l1(l, 0.0), l2sq(l, 0.0);
  for (double v : x) {
    const int lv = level_of(v, params.level_ratio, l) - 1;
    if (v != 0.0) ++counts[lv];
    l1[lv] += v;
    l2sq[lv] += v * v;
  }
  double sparse_l1 = 0.0, dense_l2sq = 0.0;
  for (int i = 0; i < l; ++i) {
    if (counts[i] > l)
      dense_l2sq += l2sq[i];
    else
      sparse_l1 += l1[i];
  }
  return std::sqrt(std::log(static_cast<double>(n))) * std::sqrt(dense_l2sq) + sparse_l1;
}

double sign_enumeration_probability(std::span<const double> x, double threshold) {
  std::vector<double> nz;
  for (double v : x)
    if (v != 0.0) nz.push_back(v);
  const int k = static_cast<int>(nz.size());
  if (k > 25)
    throw std::invalid_argument("exact sign enumeration limited to 25 nonzeros (got " +
                                std::to_string(k) + ")");
  const std::uint64_t total = 1ull << k;
  std::uint64_t hits = 0;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    double dot = 0.0;
    for (int i = 0; i < k; ++i) dot += (mask >> i) & 1u ? nz[i] : -nz[i];
    if (dot >= threshold) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(total);
}

ProbabilityEstimate anti_concentration_estimate(std::span<const double> x,
                                                const PartitionParams& params, double c,
                                                long long trials, std::uint64_t seed, bool exact) {
  const double beta = benchmark_beta(x, params);
  ProbabilityEstimate out;
  out.threshold = c * beta;
  if (exact) {
    out.exact = true;
    out.estimate = sign_enumeration_probability(x, out.threshold);
    out.wilson_lo = out.wilson_hi = out.estimate;
    int k = 0;
    for (double v : x)
      if (v != 0.0) ++k;
    out.trials = 1ll << k;
    return out;
  }
  if (trials <= 0) throw std::invalid_argument("anti-concentration estimate needs trials > 0");
  Rng rng(seed);
  long long hits = 0;
  const int n = static_cast<int>(x.size());
  for (long long t = 0; t < trials; ++t) {
    double dot = 0.0;
    for (int j = 0; j < n; ++j) dot += rng.rademacher(1.0) * x[j];
    if (dot >= out.threshold) ++hits;
  }
  const WilsonInterval w = wilson_interval(hits, trials);
  out.estimate = w.estimate;
  out.wilson_lo = w.lo;
  out.wilson_hi = w.hi;
  out.trials = trials;
  return out;
}

}  // namespace nashlab
