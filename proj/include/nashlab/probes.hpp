#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nashlab/matrix.hpp"
#include "nashlab/partition.hpp"

namespace nashlab {

// Empirical probe of the bilinear concentration bounds: over sampled
// l1-normalized pairs (x, y) it tracks
//   subgauss ratio:  |x^T M y| / (sqrt(ln n) * (||x||_2 + ||y||_2))
//   beta ratio:      |x^T M y| / (beta(x) + beta(y))
// The sample mix cycles one-hots, sparse signed-support distributions of
// varying density, and dense random distributions.
struct BilinearProbeResult {
  struct FamilyStat {
    std::string family;
    long long samples = 0;
    double max_subgauss_ratio = 0.0;
    double max_beta_ratio = 0.0;
  };
  double max_subgauss_ratio = 0.0;
  double max_beta_ratio = 0.0;
  std::vector<FamilyStat> families;
};

BilinearProbeResult bilinear_concentration_probe(const Matrix& m, long long sample_count,
                                                 std::uint64_t seed,
                                                 const PartitionParams& params);

// Sliding-interval density of halfspace projections: for random unit
// directions v, the largest fraction of rows g_i with <g_i, v> inside one
// interval of the given length (exact sliding-window maximum over the sorted
// projections), plus the best certified gap split (S1 above r + interval_len,
// S2 below r, maximizing min(|S1|, |S2|)).
struct GapSplit {
  double r = 0.0;
  long long low_count = 0;
  long long high_count = 0;
};

struct HalfspaceProbe {
  double max_fraction = 0.0;
  std::optional<GapSplit> split;
};

struct HalfspaceResult {
  double max_fraction = 0.0;  // worst over all probes
  bool degenerate = false;    // some probe put every row in one interval
  std::vector<HalfspaceProbe> probes;
};

HalfspaceResult halfspace_interval_density(const std::vector<std::vector<double>>& rows,
                                           long long probe_count, double interval_len,
                                           std::uint64_t seed);

}  // namespace nashlab
