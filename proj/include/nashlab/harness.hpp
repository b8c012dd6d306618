#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace nashlab {

// Experiment kinds:
//   pure_rate               pure-equilibrium frequency of random games
//   geometry                equilibrium support / norm geometry
//   decoding                reduced-instance decoding defect
//   probe_bilinear          bilinear concentration ratios
//   probe_halfspace         halfspace interval density
//   probe_anticoncentration sparse anti-concentration probabilities
//   verify_erdos            random exact dominance checks
//   verify_binom_tail       exact tail bound over an n range (grid-driven)
//   verify_entropy          exact entropy bound over an n range (grid-driven)
struct ExperimentConfig {
  std::string kind;
  long long trials = 0;
  std::uint64_t master_seed = 0;
  int workers = 1;
  double timeout_s = 60.0;
  std::string out;  // optional default output directory
  nlohmann::json params;  // kind-specific, strictly validated

  // Strict parse: any unknown field (top level or params) is rejected with
  // the field named. Round-trips losslessly through to_json().
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig from_file(const std::string& path);
  nlohmann::json to_json() const;
};

struct TrialRecord {
  long long index = 0;
  std::uint64_t subseed = 0;
  std::string status = "ok";
  std::vector<std::string> cells;  // aligned with the kind's column list
  double runtime_s = 0.0;          // written to timings.csv, never trials.csv
};

struct RunResult {
  std::filesystem::path dir;
  long long ok = 0;
  long long failed = 0;  // status != ok
  bool trial_failures() const { return failed > 0; }
};

// Executes the experiment and writes manifest.json, trials.csv, summary.json
// (and timings.csv) under out_dir. trials.csv is byte-identical for a given
// config regardless of worker count; per-trial wall-clock lives only in
// timings.csv for that reason. Throws on config or I/O errors; trial
// failures are recorded in rows with status != ok.
RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir);

// Re-runs the config saved in dir/manifest.json (optionally with a different
// worker count) and byte-compares the resulting trials.csv against the saved
// one. The rerun happens in a scratch directory that is removed afterwards.
bool replay_matches(const std::filesystem::path& dir, int workers_override = 0);

}  // namespace nashlab
