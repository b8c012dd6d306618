// Command line front end: solve games, build reduced instances, analyze
// them, and drive the experiment harness.

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "nashlab/bounds.hpp"
#include "nashlab/geometry.hpp"
#include "nashlab/harness.hpp"
#include "nashlab/probes.hpp"
#include "nashlab/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nashlab;

namespace {

json record_to_json(const EquilibriumRecord& rec) {
  return {{"x", rec.x.weights()},
          {"y", rec.y.weights()},
          {"regret_row", rec.regret_row},
          {"regret_col", rec.regret_col},
          {"support_sizes", {rec.support_sizes.first, rec.support_sizes.second}},
          {"l2_norms", {rec.l2_norms.first, rec.l2_norms.second}}};
}

fs::path default_out_dir(const ExperimentConfig& cfg, const std::string& cli_out) {
  if (!cli_out.empty()) return cli_out;
  if (!cfg.out.empty()) return cfg.out;
  const char* root = std::getenv("NASHLAB_OUT_ROOT");
  fs::path base = root ? fs::path(root) : fs::path("runs");
  return base / (cfg.kind + "-seed" + std::to_string(cfg.master_seed));
}

int finish_run(const RunResult& res) {
  std::cout << "wrote " << res.dir.string() << " (" << res.ok << " ok, " << res.failed
            << " failed)\n";
  return res.trial_failures() ? 2 : 0;
}

int cmd_solve(const std::string& method, const std::string& game_file, int label,
              int max_support) {
  BimatrixGame game = load_game_file(game_file);
  json out;
  out["method"] = method;
  json eqs = json::array();
  if (method == "lp") {
    ZeroSumSolution sol = solve_zero_sum(game.payoff_a);
    out["value"] = sol.value;
    out["pivots"] = sol.pivots;
    eqs.push_back(record_to_json(make_record(game, sol.x, sol.y)));
  } else if (method == "lh") {
    if (label < 1 || label > game.rows() + game.cols())
      throw std::invalid_argument("--label must be in [1, n+m]");
    eqs.push_back(record_to_json(lemke_howson(game, label - 1)));
  } else if (method == "support-enum") {
    const int cap = max_support > 0 ? max_support : std::min(game.rows(), game.cols());
    SolverReport rep = support_enumeration(game, cap);
    out["supports_examined"] = rep.examined;
    out["degenerate"] = rep.degenerate;
    out["skipped_singular"] = rep.skipped_singular;
    for (const auto& e : rep.equilibria) eqs.push_back(record_to_json(e));
  } else {
    throw std::invalid_argument("--method must be lp|lh|support-enum");
  }
  out["equilibria"] = eqs;
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_analyze(const std::string& input, const std::string& what, int label, double c) {
  ReductionInstance inst = load_instance(input);
  EquilibriumRecord rec = lemke_howson(inst.reduced, label - 1);
  const PartitionParams pp = PartitionParams::defaults_for(inst.block_map.n);
  json out;
  out["instance"] = input;
  out["n"] = inst.block_map.n;
  out["blocks"] = inst.block_map.blocks;
  if (what == "partition") {
    auto dump_partition = [&](const MixedStrategy& s) {
      PartitionReport r = robust_partition(s.weights(), pp);
      return json{{"beta", r.beta},
                  {"sparse_l1", r.sparse_l1},
                  {"dense_l2", r.dense_l2},
                  {"dense_levels", r.dense_levels},
                  {"nonzeros_per_level", r.nonzeros_per_level}};
    };
    out["x"] = dump_partition(rec.x);
    out["y"] = dump_partition(rec.y);
    out["level_ratio"] = pp.level_ratio;
    out["level_count"] = pp.level_count;
  } else if (what == "beta") {
    out["beta_x"] = benchmark_beta(rec.x.weights(), pp);
    out["beta_y"] = benchmark_beta(rec.y.weights(), pp);
  } else if (what == "geometry") {
    bool reduced_ok = false;
    out["support_sizes"] = {rec.support_sizes.first, rec.support_sizes.second};
    out["l2_norms"] = {rec.l2_norms.first, rec.l2_norms.second};
    out["regrets"] = {rec.regret_row, rec.regret_col};
    out["defect"] = decoding_defect(inst, rec.x, rec.y, &reduced_ok);
    out["reduced_equilibrium_ok"] = reduced_ok;
  } else if (what == "goodness") {
    GeometryOptions opt;
    opt.generator = GameGenerator::kReducedInstance;
    opt.goodness_c = c;
    // count directly off the loaded instance
    Matrix row_gadget = inst.z0 + inst.z1 + inst.a_eps;
    Matrix col_gadget = (-(inst.z0 + inst.z1)) + inst.b_eps;
    std::vector<double> row_pay = row_gadget.mul_vec(rec.y.weights());
    std::vector<double> col_pay = col_gadget.vec_mul(rec.x.weights());
    const double thr_s = c * benchmark_beta(rec.y.weights(), pp);
    const double thr_t = c * benchmark_beta(rec.x.weights(), pp);
    std::vector<char> in_s(inst.block_map.n, 0), in_t(inst.block_map.n, 0);
    for (int i : rec.x.support()) in_s[i] = 1;
    for (int j : rec.y.support()) in_t[j] = 1;
    std::vector<long long> s_good(inst.block_map.blocks, 0), t_good(inst.block_map.blocks, 0);
    for (int i = 0; i < inst.block_map.n; ++i) {
      if (!in_s[i] && row_pay[i] > thr_s) ++s_good[inst.block_map.block_of(i)];
      if (!in_t[i] && col_pay[i] > thr_t) ++t_good[inst.block_map.block_of(i)];
    }
    out["c"] = c;
    out["s_good_per_block"] = s_good;
    out["t_good_per_block"] = t_good;
  } else {
    throw std::invalid_argument("--what must be partition|beta|geometry|goodness");
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"smoothed-hard game construction, equilibrium solving, and structural probes"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // solve
  std::string method = "lh", game_file, source_file, noise_str = "uniform:0.1";
  int label = 1, max_support = 0;
  auto* solve = app.add_subcommand("solve", "compute equilibria of a game file");
  solve->add_option("--method", method, "lp|lh|support-enum")->required();
  solve->add_option("--game", game_file, "game file")->required()->check(CLI::ExistingFile);
  solve->add_option("--label", label, "Lemke-Howson starting label, 1-based");
  solve->add_option("--max-support", max_support, "support enumeration cap (default min(n,m))");

  // reduce
  int blocks = 4, block_len = 64;
  std::uint64_t seed = 0;
  bool general_x = false, scale_third = false, persist_noise = false;
  double signal_scale = 1.0;
  std::string out_dir;
  auto* reduce = app.add_subcommand("reduce", "build a reduced smoothed-hard instance");
  reduce->add_option("--source", source_file, "source game file (P, Q)")
      ->required()
      ->check(CLI::ExistingFile);
  reduce->add_option("--blocks", blocks, "number of blocks b (must equal source size)");
  reduce->add_option("--block-len", block_len, "block length ell")->required();
  reduce->add_option("--noise", noise_str, "noise spec, e.g. uniform:0.1 or diff(uniform:0.05)");
  reduce->add_option("--seed", seed, "master seed")->required();
  reduce->add_flag("--general-x", general_x, "use the general-X (W + N) construction");
  reduce->add_flag("--scale-third", scale_third, "scale payoffs by 1/3");
  reduce->add_flag("--persist-noise", persist_noise, "also write gadget matrices");
  reduce->add_option("--signal-scale", signal_scale, "multiply P, Q inside the construction");
  reduce->add_option("--out", out_dir, "output directory")->required();

  // analyze
  std::string input_dir, what = "geometry";
  double goodness_c = 0.1;
  auto* analyze = app.add_subcommand("analyze", "analyze a saved instance's equilibrium");
  analyze->add_option("--input", input_dir, "instance directory")->required();
  analyze->add_option("--what", what, "partition|beta|geometry|goodness");
  analyze->add_option("--label", label, "Lemke-Howson starting label, 1-based");
  analyze->add_option("--c", goodness_c, "goodness threshold constant");

  // probe
  std::string probe_kind;
  long long trials = 10, inner = 100000;
  int probe_n = 64, probe_d = 8, nonzeros = 6;
  double interval_len = 0.05, anticonc_c = 0.5;
  int workers = 1;
  std::string probe_matrix = "rademacher";
  auto* probe = app.add_subcommand("probe", "run a structural probe experiment");
  probe->add_option("kind", probe_kind, "bilinear|halfspace|anticoncentration")->required();
  probe->add_option("--matrix", probe_matrix, "bilinear matrix entries: rademacher|uniform");
  probe->add_option("--n", probe_n, "dimension");
  probe->add_option("--d", probe_d, "halfspace direction dimension");
  probe->add_option("--trials", trials, "trial count");
  probe->add_option("--samples", inner, "samples/probes per trial");
  probe->add_option("--interval-len", interval_len, "halfspace interval length");
  probe->add_option("--nonzeros", nonzeros, "anticoncentration support size");
  probe->add_option("--c", anticonc_c, "anticoncentration threshold constant");
  probe->add_option("--seed", seed, "master seed");
  probe->add_option("--out", out_dir, "output directory");
  probe->add_option("--workers", workers, "worker threads");

  // verify-bounds
  std::string bound_kind;
  long n_lo = 30, n_hi = 2000, n_max = 2000;
  auto* verify = app.add_subcommand("verify-bounds", "exact combinatorial bound checks");
  verify->add_option("kind", bound_kind, "erdos|binom-tail|entropy")->required();
  verify->add_option("--n-lo", n_lo, "smallest n (binom-tail)");
  verify->add_option("--n-hi", n_hi, "largest n (binom-tail)");
  verify->add_option("--n-max", n_max, "largest n (entropy, erdos)");
  verify->add_option("--trials", trials, "random instances (erdos)");
  verify->add_option("--seed", seed, "master seed (erdos)");
  verify->add_option("--out", out_dir, "output directory");
  verify->add_option("--workers", workers, "worker threads");

  // experiment run | replay
  std::string config_file, replay_dir;
  auto* experiment = app.add_subcommand("experiment", "run or replay a configured experiment");
  experiment->require_subcommand(1);
  auto* run = experiment->add_subcommand("run", "run CONFIG.json");
  run->add_option("config", config_file, "experiment config")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--workers", workers, "override worker threads");
  auto* replay = experiment->add_subcommand("replay", "re-run a saved experiment and compare");
  replay->add_option("dir", replay_dir, "saved run directory")->required();
  replay->add_option("--workers", workers, "override worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) return cmd_solve(method, game_file, label, max_support);

    if (*reduce) {
      BimatrixGame source = load_game_file(source_file);
      if (blocks != source.rows())
        throw std::invalid_argument("--blocks must equal the source game size");
      ReductionOptions opts;
      opts.signal_scale = signal_scale;
      opts.scale_third = scale_third;
      NoiseSpec noise = NoiseSpec::parse(noise_str);
      ReductionInstance inst =
          general_x
              ? build_general_x_game(source.payoff_a, source.payoff_b, block_len, noise, seed,
                                     opts)
              : build_reduced_game(source.payoff_a, source.payoff_b, block_len, noise, seed, opts);
      for (const auto& w : inst.warnings) std::cerr << "warning: " << w << '\n';
      save_instance(out_dir, inst, persist_noise);
      std::cout << "wrote " << out_dir << " (n=" << inst.block_map.n
                << ", gadget residual=" << fmt_double(inst.gadget_residual()) << ")\n";
      return 0;
    }

    if (*analyze) return cmd_analyze(input_dir, what, label, goodness_c);

    if (*probe) {
      ExperimentConfig cfg;
      cfg.trials = trials;
      cfg.master_seed = seed;
      cfg.workers = workers;
      if (probe_kind == "bilinear") {
        cfg.kind = "probe_bilinear";
        cfg.params = {{"matrix", probe_matrix}, {"n", probe_n}, {"samples", inner}};
      } else if (probe_kind == "halfspace") {
        cfg.kind = "probe_halfspace";
        cfg.params = {
            {"n", probe_n}, {"d", probe_d}, {"probes", inner}, {"interval_len", interval_len}};
      } else if (probe_kind == "anticoncentration") {
        cfg.kind = "probe_anticoncentration";
        cfg.params = {{"n", probe_n}, {"c", anticonc_c}, {"nonzeros", nonzeros}};
      } else {
        throw std::invalid_argument("probe kind must be bilinear|halfspace|anticoncentration");
      }
      cfg = ExperimentConfig::from_json(cfg.to_json());  // validate like any config
      return finish_run(run_experiment(cfg, default_out_dir(cfg, out_dir)));
    }

    if (*verify) {
      ExperimentConfig cfg;
      cfg.master_seed = seed;
      cfg.workers = workers;
      if (bound_kind == "erdos") {
        cfg.kind = "verify_erdos";
        cfg.trials = trials;
        cfg.params = {{"n_max", std::min<long>(n_max, 14)}};
      } else if (bound_kind == "binom-tail") {
        cfg.kind = "verify_binom_tail";
        cfg.params = {{"n_lo", n_lo}, {"n_hi", n_hi}};
      } else if (bound_kind == "entropy") {
        cfg.kind = "verify_entropy";
        cfg.params = {{"n_max", n_max}};
      } else {
        throw std::invalid_argument("verify-bounds kind must be erdos|binom-tail|entropy");
      }
      cfg = ExperimentConfig::from_json(cfg.to_json());
      return finish_run(run_experiment(cfg, default_out_dir(cfg, out_dir)));
    }

    if (*experiment) {
      if (*run) {
        ExperimentConfig cfg = ExperimentConfig::from_file(config_file);
        if (run->count("--workers")) cfg.workers = workers;
        return finish_run(run_experiment(cfg, default_out_dir(cfg, out_dir)));
      }
      const bool same = replay_matches(replay_dir, replay->count("--workers") ? workers : 0);
      std::cout << (same ? "replay identical\n" : "replay DIFFERS\n");
      return same ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
