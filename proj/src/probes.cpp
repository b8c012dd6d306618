#include "nashlab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "nashlab/rng.hpp"
#include "nashlab/stats.hpp"

namespace nashlab {

namespace {

// Uniform distribution on a random k-subset of [n].
std::vector<double> sparse_uniform(int n, int k, Rng& rng, std::vector<int>& scratch) {
  scratch.resize(static_cast<std::size_t>(n));
  std::iota(scratch.begin(), scratch.end(), 0);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
    std::swap(scratch[i], scratch[j]);
  }
  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < k; ++i) x[scratch[i]] = 1.0 / k;
  return x;
}

// Dirichlet(1,...,1) via normalized Exp(1) draws.
std::vector<double> dense_random(int n, Rng& rng) {
  std::vector<double> x(static_cast<std::size_t>(n));
  double sum = 0.0;
  for (double& v : x) {
    v = -std::log(1.0 - rng.u01());
    sum += v;
  }
  for (double& v : x) v /= sum;
  return x;
}

}  // namespace

BilinearProbeResult bilinear_concentration_probe(const Matrix& m, long long sample_count,
                                                 std::uint64_t seed,
                                                 const PartitionParams& params) {
  if (m.rows != m.cols) throw std::invalid_argument("bilinear probe expects a square matrix");
  const int n = m.rows;
  if (sample_count <= 0) throw std::invalid_argument("sample_count must be > 0");

  BilinearProbeResult res;
  res.families = {{"one_hot", 0, 0.0, 0.0}, {"sparse_uniform", 0, 0.0, 0.0},
                  {"dense_random", 0, 0.0, 0.0}};
  const double sqrt_log_n = std::sqrt(std::log(static_cast<double>(std::max(n, 2))));

  Rng rng(seed);
  std::vector<int> scratch;
  int sparse_k = 1;
  for (long long t = 0; t < sample_count; ++t) {
    const int fam = static_cast<int>(t % 3);
    std::vector<double> x, y;
    switch (fam) {
      case 0: {
        const int i = static_cast<int>(rng.below(n));
        x.assign(static_cast<std::size_t>(n), 0.0);
        x[i] = 1.0;
        // half the time probe the diagonal pairing
        const int j = (rng.next_u64() & 1) ? i : static_cast<int>(rng.below(n));
        y.assign(static_cast<std::size_t>(n), 0.0);
        y[j] = 1.0;
        break;
      }
      case 1: {
        x = sparse_uniform(n, sparse_k, rng, scratch);
        y = sparse_uniform(n, sparse_k, rng, scratch);
        sparse_k = sparse_k * 2 > n ? 1 : sparse_k * 2;
        break;
      }
      default:
        x = dense_random(n, rng);
        y = dense_random(n, rng);
    }
    const double v = std::abs(bilinear(x, m, y));
    const double subg = v / (sqrt_log_n * (l2_norm(x) + l2_norm(y)));
    const double betar = v / (benchmark_beta(x, params) + benchmark_beta(y, params));
    auto& f = res.families[fam];
    ++f.samples;
    f.max_subgauss_ratio = std::max(f.max_subgauss_ratio, subg);
    f.max_beta_ratio = std::max(f.max_beta_ratio, betar);
    res.max_subgauss_ratio = std::max(res.max_subgauss_ratio, subg);
    res.max_beta_ratio = std::max(res.max_beta_ratio, betar);
  }
  return res;
}

HalfspaceResult halfspace_interval_density(const std::vector<std::vector<double>>& rows,
                                           long long probe_count, double interval_len,
                                           std::uint64_t seed) {
  if (rows.empty()) throw std::invalid_argument("halfspace probe needs at least one row");
  const int n = static_cast<int>(rows.size());
  const int d = static_cast<int>(rows[0].size());
  if (d > n)
    throw std::invalid_argument("halfspace probe requires d <= n (got d=" + std::to_string(d) +
                                ", n=" + std::to_string(n) + ")");
  for (const auto& g : rows)
    if (static_cast<int>(g.size()) != d)
      throw std::invalid_argument("halfspace probe rows must share one dimension");
  if (!(interval_len > 0.0)) throw std::invalid_argument("interval length must be > 0");
  if (probe_count <= 0) throw std::invalid_argument("probe_count must be > 0");

  HalfspaceResult res;
  Rng rng(seed);
  std::vector<double> v(static_cast<std::size_t>(d));
  std::vector<double> z(static_cast<std::size_t>(n));
  for (long long p = 0; p < probe_count; ++p) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& c : v) {
        c = rng.gaussian();
        norm += c * c;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (double& c : v) c /= norm;

    for (int i = 0; i < n; ++i) {
      double dot = 0.0;
      for (int c = 0; c < d; ++c) dot += rows[i][c] * v[c];
      z[i] = dot;
    }
    std::sort(z.begin(), z.end());

    HalfspaceProbe probe;
    // max rows inside one closed interval of the given length
    int right = 0, best_count = 0;
    for (int left = 0; left < n; ++left) {
      if (right < left) right = left;
      while (right < n && z[right] <= z[left] + interval_len) ++right;
      best_count = std::max(best_count, right - left);
    }
    probe.max_fraction = static_cast<double>(best_count) / n;

    // best split: S2 = {z <= r}, S1 = {z >= r + interval_len}, maximize
    // min(|S1|, |S2|); thresholds swept over the data points
    int h = 0;
    long long best_min = 0;
    GapSplit best_split;
    for (int k = 1; k <= n; ++k) {
      const double r = z[k - 1];
      while (h < n && z[h] < r + interval_len) ++h;
      const long long high = n - h;
      const long long lo = k;
      if (std::min(lo, high) > best_min) {
        best_min = std::min(lo, high);
        best_split = {r, lo, high};
      }
    }
    if (best_min > 0) probe.split = best_split;
    if (best_count == n) res.degenerate = true;
    res.max_fraction = std::max(res.max_fraction, probe.max_fraction);
    res.probes.push_back(std::move(probe));
  }
  return res;
}

}  // namespace nashlab
