#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nashlab/partition.hpp"
#include "nashlab/reduction.hpp"
#include "nashlab/solvers.hpp"
#include "nashlab/stats.hpp"

namespace nashlab {

enum class GameGenerator { kIidUniform, kZeroSumUniform, kZeroSumRademacher, kReducedInstance };
enum class SolverChoice { kAuto, kLp, kLemkeHowson, kSupportEnum };

GameGenerator parse_generator(const std::string& name);
std::string generator_name(GameGenerator g);
SolverChoice parse_solver(const std::string& name);

// Fresh game with i.i.d. entries (square, n x n); zero-sum variants sample C
// and play (C, -C). Deterministic in (generator, n, seed).
BimatrixGame generate_game(GameGenerator gen, int n, std::uint64_t seed);

struct GeometryOptions {
  GameGenerator generator = GameGenerator::kZeroSumUniform;
  int n = 16;
  SolverChoice solver = SolverChoice::kAuto;
  int lh_label = 0;
  // reduced-instance parameters
  int blocks = 4;
  int block_len = 16;
  NoiseSpec noise = NoiseSpec::uniform_interval(0.1);
  bool general_x = false;  // treat noise as X and build the W + N form
  ReductionOptions reduction;
  double goodness_c = 0.1;
  PartitionParams partition;  // level_count <= 0 means per-n defaults
  double trial_timeout_s = 60.0;
  long long pivot_limit = 1'000'000;
};

struct GeometryTrial {
  long long index = 0;
  std::uint64_t subseed = 0;
  std::string status = "ok";  // ok | timeout | error:<what>
  int n = 0;
  int equilibria_found = 0;
  // geometry of the first equilibrium found
  int support_x = 0, support_y = 0;
  double support_frac_x = 0.0, support_frac_y = 0.0;
  double l2_x = 0.0, l2_y = 0.0;
  double regret_row = 0.0, regret_col = 0.0;
  bool has_pure = false;
  int pure_count = 0;
  // reduced-instance extras
  double defect = 0.0;
  double beta_x = 0.0, beta_y = 0.0;
  std::vector<long long> s_good_per_block;
  std::vector<long long> t_good_per_block;
  // all (x, y) support fractions / l2 norms seen this trial, for aggregation
  std::vector<double> all_support_fracs;
  std::vector<double> all_l2;
};

struct GeometryStats {
  std::vector<GeometryTrial> trials;
  long long ok = 0, failed = 0;
  WilsonInterval pure_rate;
  double median_support_frac = 0.0;
  double median_l2 = 0.0;
  double median_defect = 0.0;  // reduced instances only
};

GeometryTrial run_geometry_trial(const GeometryOptions& opt, std::uint64_t master_seed,
                                 long long trial_index);

// Runs `trials` independent trials with sub-seeds derived from master_seed;
// solver failures are recorded per trial, never fatal.
GeometryStats equilibrium_geometry_experiment(const GeometryOptions& opt, long long trials,
                                              std::uint64_t master_seed);

}  // namespace nashlab
