#include "nashlab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "nashlab/bounds.hpp"
#include "nashlab/geometry.hpp"
#include "nashlab/probes.hpp"
#include "nashlab/version.hpp"

namespace nashlab {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Config parsing. Strict: every field must be known.
// ---------------------------------------------------------------------------

struct ParamSpec {
  std::vector<std::string> required;
  std::vector<std::string> optional;
};

const std::map<std::string, ParamSpec>& param_specs() {
  static const std::map<std::string, ParamSpec> specs = {
      {"pure_rate", {{"generator", "n"}, {}}},
      {"geometry", {{"generator", "n"}, {"solver", "lh_label"}}},
      {"decoding",
       {{"blocks", "block_len", "noise"},
        {"signal_scale", "scale_third", "lh_label", "goodness_c", "general_x"}}},
      {"probe_bilinear", {{"matrix", "n", "samples"}, {"level_ratio", "level_count"}}},
      {"probe_halfspace", {{"n", "d", "probes", "interval_len"}, {}}},
      {"probe_anticoncentration",
       {{"n", "c", "nonzeros"}, {"mode", "mc_trials", "level_ratio", "level_count"}}},
      {"verify_erdos", {{"n_max"}, {"a_max"}}},
      {"verify_binom_tail", {{"n_lo", "n_hi"}, {}}},
      {"verify_entropy", {{"n_max"}, {}}},
  };
  return specs;
}

bool grid_driven(const std::string& kind) {
  return kind == "verify_binom_tail" || kind == "verify_entropy";
}

void validate_params(const std::string& kind, const json& params) {
  auto it = param_specs().find(kind);
  if (it == param_specs().end()) throw std::invalid_argument("unknown experiment kind: " + kind);
  const ParamSpec& spec = it->second;
  for (auto& [key, value] : params.items()) {
    (void)value;
    bool known = false;
    for (const auto& r : spec.required) known = known || key == r;
    for (const auto& o : spec.optional) known = known || key == o;
    if (!known)
      throw std::invalid_argument("unknown field 'params." + key + "' for kind " + kind);
  }
  for (const auto& r : spec.required)
    if (!params.contains(r))
      throw std::invalid_argument("missing required field 'params." + r + "' for kind " + kind);
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  static const std::vector<std::string> known = {"kind",    "trials", "seed", "workers",
                                                 "timeout_s", "out",  "params"};
  for (auto& [key, value] : j.items()) {
    (void)value;
    if (std::find(known.begin(), known.end(), key) == known.end())
      throw std::invalid_argument("unknown field '" + key + "' in experiment config");
  }
  ExperimentConfig c;
  c.kind = j.at("kind").get<std::string>();
  c.trials = j.value("trials", 0ll);
  c.master_seed = j.value("seed", 0ull);
  c.workers = j.value("workers", 1);
  c.timeout_s = j.value("timeout_s", 60.0);
  c.out = j.value("out", std::string());
  c.params = j.value("params", json::object());
  validate_params(c.kind, c.params);
  if (c.trials < 0) throw std::invalid_argument("trials must be >= 0");
  if (grid_driven(c.kind) && c.trials != 0)
    throw std::invalid_argument("kind " + c.kind + " is grid-driven; omit trials or set it to 0");
  if (c.workers < 1) throw std::invalid_argument("workers must be >= 1");
  return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return from_json(json::parse(in));
}

json ExperimentConfig::to_json() const {
  json j;
  j["kind"] = kind;
  j["trials"] = trials;
  j["seed"] = master_seed;
  j["workers"] = workers;
  j["timeout_s"] = timeout_s;
  if (!out.empty()) j["out"] = out;
  j["params"] = params;
  return j;
}

// ---------------------------------------------------------------------------
// Per-kind columns and trial runners.
// ---------------------------------------------------------------------------

namespace {

struct Column {
  std::string name;
  std::string desc;
};

std::vector<Column> kind_columns(const std::string& kind) {
  if (kind == "pure_rate")
    return {{"has_pure", "1 if the sampled game has a pure equilibrium"},
            {"pure_count", "number of pure equilibrium cells (ties included)"}};
  if (kind == "geometry")
    return {{"n", "game size"},
            {"equilibria_found", "equilibria returned by the solver"},
            {"support_x", "row support size of the first equilibrium"},
            {"support_y", "column support size"},
            {"support_frac_x", "support_x / n"},
            {"support_frac_y", "support_y / n"},
            {"l2_x", "l2 norm of x"},
            {"l2_y", "l2 norm of y"},
            {"has_pure", "1 if the game has a pure equilibrium"}};
  if (kind == "decoding")
    return {{"n", "reduced game size (blocks * block_len)"},
            {"defect", "max regret of the decoded pair in the source game"},
            {"support_frac_x", "reduced equilibrium row support fraction"},
            {"support_frac_y", "reduced equilibrium column support fraction"},
            {"l2_x", "l2 norm of the reduced equilibrium x"},
            {"l2_y", "l2 norm of the reduced equilibrium y"},
            {"beta_x", "benchmark beta of x"},
            {"beta_y", "benchmark beta of y"}};
  if (kind == "probe_bilinear")
    return {{"max_subgauss_ratio", "max |xMy| / (sqrt(ln n)(|x|_2+|y|_2))"},
            {"max_beta_ratio", "max |xMy| / (beta(x)+beta(y))"},
            {"one_hot_beta", "beta ratio maximum over the one-hot family"},
            {"sparse_beta", "beta ratio maximum over sparse uniform supports"},
            {"dense_beta", "beta ratio maximum over dense random distributions"}};
  if (kind == "probe_halfspace")
    return {{"max_fraction", "largest fraction of rows in one interval"},
            {"split_min_size", "best certified gap split min(|S1|,|S2|)"},
            {"degenerate", "1 if some direction put every row in one interval"}};
  if (kind == "probe_anticoncentration")
    return {{"estimate", "Pr[<v,x> >= c*beta(x)]"},
            {"wilson_lo", "Wilson 95% lower bound (equals estimate in exact mode)"},
            {"wilson_hi", "Wilson 95% upper bound"},
            {"threshold", "c * beta(x)"},
            {"exact", "1 if computed by sign enumeration"}};
  if (kind == "verify_erdos")
    return {{"n", "number of coefficients"},
            {"k", "threshold"},
            {"lhs_count", "patterns with weighted sum >= k-1"},
            {"rhs_count", "patterns with plain sum >= k"},
            {"holds", "1 if lhs_count >= rhs_count"}};
  if (kind == "verify_binom_tail")
    return {{"n", "row parameter"},
            {"cases", "number of k values checked"},
            {"failures", "cases where the tail bound fails"},
            {"min_margin", "minimum log(lhs) - log(rhs) across cases"}};
  if (kind == "verify_entropy")
    return {{"n", "row parameter"},
            {"cases", "number of k values checked"},
            {"failures", "cases where the entropy bound fails"},
            {"min_margin", "minimum log2(lhs) - log2(rhs) across cases"}};
  throw std::invalid_argument("unknown experiment kind: " + kind);
}

std::string fmt_bool(bool b) { return b ? "1" : "0"; }

PartitionParams partition_from_params(const json& params, int n) {
  PartitionParams pp = PartitionParams::defaults_for(n);
  if (params.contains("level_ratio")) pp.level_ratio = params.at("level_ratio").get<double>();
  if (params.contains("level_count")) pp.level_count = params.at("level_count").get<int>();
  return pp;
}

GeometryOptions geometry_options(const ExperimentConfig& cfg) {
  GeometryOptions opt;
  opt.trial_timeout_s = cfg.timeout_s;
  if (cfg.kind == "decoding") {
    opt.generator = GameGenerator::kReducedInstance;
    opt.blocks = cfg.params.at("blocks").get<int>();
    opt.block_len = cfg.params.at("block_len").get<int>();
    opt.noise = NoiseSpec::parse(cfg.params.at("noise").get<std::string>());
    opt.reduction.signal_scale = cfg.params.value("signal_scale", 1.0);
    opt.reduction.scale_third = cfg.params.value("scale_third", false);
    opt.general_x = cfg.params.value("general_x", false);
    opt.lh_label = cfg.params.value("lh_label", 0);
    opt.goodness_c = cfg.params.value("goodness_c", 0.1);
  } else {
    opt.generator = parse_generator(cfg.params.at("generator").get<std::string>());
    opt.n = cfg.params.at("n").get<int>();
    opt.solver = parse_solver(cfg.params.value("solver", std::string("auto")));
    opt.lh_label = cfg.params.value("lh_label", 0);
  }
  return opt;
}

TrialRecord run_trial(const ExperimentConfig& cfg, long long index) {
  TrialRecord rec;
  rec.index = index;
  rec.subseed = derive_subseed(cfg.master_seed, "trial", static_cast<std::uint64_t>(index));
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t ncols = kind_columns(cfg.kind).size();
  try {
    if (cfg.kind == "pure_rate") {
      const GameGenerator gen = parse_generator(cfg.params.at("generator").get<std::string>());
      const int n = cfg.params.at("n").get<int>();
      BimatrixGame game = generate_game(gen, n, derive_subseed(rec.subseed, "game", 0));
      const auto pure = pure_equilibria(game);
      rec.cells = {fmt_bool(!pure.empty()), std::to_string(pure.size())};
    } else if (cfg.kind == "geometry" || cfg.kind == "decoding") {
      GeometryOptions opt = geometry_options(cfg);
      GeometryTrial t = run_geometry_trial(opt, cfg.master_seed, index);
      rec.status = t.status;
      if (cfg.kind == "geometry") {
        rec.cells = {std::to_string(t.n),
                     std::to_string(t.equilibria_found),
                     std::to_string(t.support_x),
                     std::to_string(t.support_y),
                     fmt_double(t.support_frac_x),
                     fmt_double(t.support_frac_y),
                     fmt_double(t.l2_x),
                     fmt_double(t.l2_y),
                     fmt_bool(t.has_pure)};
      } else {
        rec.cells = {std::to_string(t.n),          fmt_double(t.defect),
                     fmt_double(t.support_frac_x), fmt_double(t.support_frac_y),
                     fmt_double(t.l2_x),           fmt_double(t.l2_y),
                     fmt_double(t.beta_x),         fmt_double(t.beta_y)};
      }
    } else if (cfg.kind == "probe_bilinear") {
      const int n = cfg.params.at("n").get<int>();
      const std::string family = cfg.params.at("matrix").get<std::string>();
      const long long samples = cfg.params.at("samples").get<long long>();
      NoiseSpec entry = family == "rademacher" ? NoiseSpec::rademacher_scaled(1.0)
                        : family == "uniform"  ? NoiseSpec::uniform_interval(1.0)
                                               : throw std::invalid_argument(
                                                     "params.matrix must be rademacher|uniform");
      Matrix m = sample_noise_matrix(entry, n, derive_subseed(rec.subseed, "matrix", 0));
      BilinearProbeResult r = bilinear_concentration_probe(
          m, samples, derive_subseed(rec.subseed, "samples", 0), partition_from_params(cfg.params, n));
      rec.cells = {fmt_double(r.max_subgauss_ratio), fmt_double(r.max_beta_ratio),
                   fmt_double(r.families[0].max_beta_ratio),
                   fmt_double(r.families[1].max_beta_ratio),
                   fmt_double(r.families[2].max_beta_ratio)};
    } else if (cfg.kind == "probe_halfspace") {
      const int n = cfg.params.at("n").get<int>();
      const int d = cfg.params.at("d").get<int>();
      const long long probes = cfg.params.at("probes").get<long long>();
      const double len = cfg.params.at("interval_len").get<double>();
      Rng rng(derive_subseed(rec.subseed, "rows", 0));
      std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                            std::vector<double>(static_cast<std::size_t>(d)));
      for (auto& row : rows)
        for (double& v : row) v = rng.uniform_sym(1.0);
      HalfspaceResult r = halfspace_interval_density(rows, probes, len,
                                                     derive_subseed(rec.subseed, "dirs", 0));
      long long best_split = 0;
      for (const auto& p : r.probes)
        if (p.split) best_split = std::max(best_split, std::min(p.split->low_count,
                                                                p.split->high_count));
      rec.cells = {fmt_double(r.max_fraction), std::to_string(best_split),
                   fmt_bool(r.degenerate)};
    } else if (cfg.kind == "probe_anticoncentration") {
      const int n = cfg.params.at("n").get<int>();
      const double c = cfg.params.at("c").get<double>();
      const int nonzeros = cfg.params.at("nonzeros").get<int>();
      const bool exact = cfg.params.value("mode", std::string("exact")) == "exact";
      const long long mc_trials = cfg.params.value("mc_trials", 100000ll);
      Rng rng(derive_subseed(rec.subseed, "x", 0));
      std::vector<double> x(static_cast<std::size_t>(n), 0.0);
      std::vector<int> idx(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) idx[i] = i;
      for (int i = 0; i < nonzeros; ++i)
        std::swap(idx[i], idx[i + static_cast<int>(rng.below(n - i))]);
      double sum = 0.0;
      for (int i = 0; i < nonzeros; ++i) {
        x[idx[i]] = 0.05 + rng.u01();
        sum += x[idx[i]];
      }
      for (double& v : x) v /= sum;
      ProbabilityEstimate est = anti_concentration_estimate(
          x, partition_from_params(cfg.params, n), c, mc_trials,
          derive_subseed(rec.subseed, "v", 0), exact);
      rec.cells = {fmt_double(est.estimate), fmt_double(est.wilson_lo),
                   fmt_double(est.wilson_hi), fmt_double(est.threshold), fmt_bool(est.exact)};
    } else if (cfg.kind == "verify_erdos") {
      const int n_max = cfg.params.at("n_max").get<int>();
      const double a_max = cfg.params.value("a_max", 10.0);
      Rng rng(derive_subseed(rec.subseed, "instance", 0));
      const int n = 1 + static_cast<int>(rng.below(n_max));
      const int k = 1 + static_cast<int>(rng.below(n));
      std::vector<double> a(static_cast<std::size_t>(n));
      for (double& v : a) v = 1.0 + rng.u01() * (a_max - 1.0);
      ErdosCheck chk = erdos_dominance_check(a, k);
      rec.cells = {std::to_string(n), std::to_string(k), std::to_string(chk.lhs_count),
                   std::to_string(chk.rhs_count), fmt_bool(chk.holds)};
      if (!chk.holds) rec.status = "error:dominance inequality failed";
    } else if (cfg.kind == "verify_binom_tail") {
      const long n = cfg.params.at("n_lo").get<long>() + index;
      long long failures = 0;
      double min_margin = std::numeric_limits<double>::infinity();
      const auto cases = binom_tail_cases_for_n(n);
      for (const BinomTailCase& c : cases) {
        if (!c.holds) ++failures;
        min_margin = std::min(min_margin, c.log_lhs - c.log_rhs);
      }
      rec.cells = {std::to_string(n), std::to_string(cases.size()), std::to_string(failures),
                   fmt_double(min_margin)};
      if (failures > 0) rec.status = "error:tail bound failed";
    } else if (cfg.kind == "verify_entropy") {
      const long n = 1 + index;
      long long failures = 0;
      double min_margin = std::numeric_limits<double>::infinity();
      const auto cases = entropy_checks_for_n(n);
      for (const EntropyCheck& c : cases) {
        if (!c.holds) ++failures;
        min_margin = std::min(min_margin, c.log2_lhs - c.log2_rhs);
      }
      rec.cells = {std::to_string(n), std::to_string(cases.size()), std::to_string(failures),
                   fmt_double(min_margin)};
      if (failures > 0) rec.status = "error:entropy bound failed";
    } else {
      throw std::invalid_argument("unknown experiment kind: " + cfg.kind);
    }
  } catch (const std::exception& e) {
    rec.status = std::string("error:") + e.what();
  }
  if (rec.cells.size() != ncols) rec.cells.assign(ncols, "");
  rec.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

long long row_count(const ExperimentConfig& cfg) {
  if (cfg.kind == "verify_binom_tail") {
    const long long lo = cfg.params.at("n_lo").get<long long>();
    const long long hi = cfg.params.at("n_hi").get<long long>();
    if (lo < 1 || hi < lo)
      throw std::invalid_argument("verify_binom_tail needs 1 <= n_lo <= n_hi");
    return hi - lo + 1;
  }
  if (cfg.kind == "verify_entropy") {
    const long long n_max = cfg.params.at("n_max").get<long long>();
    if (n_max < 1) throw std::invalid_argument("verify_entropy needs n_max >= 1");
    return n_max;
  }
  return cfg.trials;
}

// ---------------------------------------------------------------------------
// Aggregation.
// ---------------------------------------------------------------------------

std::vector<double> column_values(const std::vector<TrialRecord>& recs, std::size_t col) {
  std::vector<double> out;
  for (const auto& r : recs)
    if (r.status == "ok" && !r.cells[col].empty()) out.push_back(std::stod(r.cells[col]));
  return out;
}

json quantile_summary(std::vector<double> v) {
  if (v.empty()) return nullptr;
  json j;
  j["median"] = median(v);
  j["q25"] = quantile(v, 0.25);
  j["q75"] = quantile(v, 0.75);
  j["min"] = quantile(v, 0.0);
  j["max"] = quantile(v, 1.0);
  j["count"] = v.size();
  return j;
}

json wilson_summary(const std::vector<TrialRecord>& recs, std::size_t col) {
  long long hits = 0, total = 0;
  for (const auto& r : recs) {
    if (r.status != "ok" || r.cells[col].empty()) continue;
    ++total;
    if (r.cells[col] == "1") ++hits;
  }
  if (total == 0) return nullptr;
  const WilsonInterval w = wilson_interval(hits, total);
  return {{"frequency", w.estimate}, {"wilson_lo", w.lo}, {"wilson_hi", w.hi}, {"count", total}};
}

std::size_t column_index(const std::vector<Column>& cols, const std::string& name) {
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (cols[i].name == name) return i;
  throw std::logic_error("missing column " + name);
}

json summarize(const ExperimentConfig& cfg, const std::vector<TrialRecord>& recs) {
  const auto cols = kind_columns(cfg.kind);
  json s;
  long long ok = 0, timeout = 0, error = 0;
  for (const auto& r : recs) {
    if (r.status == "ok")
      ++ok;
    else if (r.status == "timeout")
      ++timeout;
    else
      ++error;
  }
  s["trials"] = recs.size();
  s["ok"] = ok;
  s["timeout"] = timeout;
  s["error"] = error;
  s["log_base"] = "natural";

  auto agg = [&](const std::string& name) { return quantile_summary(column_values(recs, column_index(cols, name))); };

  if (cfg.kind == "pure_rate") {
    s["pure_rate"] = wilson_summary(recs, column_index(cols, "has_pure"));
  } else if (cfg.kind == "geometry") {
    std::vector<double> fracs = column_values(recs, column_index(cols, "support_frac_x"));
    for (double v : column_values(recs, column_index(cols, "support_frac_y"))) fracs.push_back(v);
    std::vector<double> l2s = column_values(recs, column_index(cols, "l2_x"));
    for (double v : column_values(recs, column_index(cols, "l2_y"))) l2s.push_back(v);
    s["support_frac"] = quantile_summary(std::move(fracs));
    s["l2"] = quantile_summary(std::move(l2s));
    s["pure_rate"] = wilson_summary(recs, column_index(cols, "has_pure"));
  } else if (cfg.kind == "decoding") {
    s["defect"] = agg("defect");
    std::vector<double> l2s = column_values(recs, column_index(cols, "l2_x"));
    for (double v : column_values(recs, column_index(cols, "l2_y"))) l2s.push_back(v);
    s["l2"] = quantile_summary(std::move(l2s));
  } else if (cfg.kind == "probe_bilinear") {
    s["subgauss_ratio"] = agg("max_subgauss_ratio");
    s["beta_ratio"] = agg("max_beta_ratio");
    auto vals = column_values(recs, column_index(cols, "max_beta_ratio"));
    s["fitted_constant"] = vals.empty() ? json(nullptr) : json(quantile(vals, 1.0));
  } else if (cfg.kind == "probe_halfspace") {
    s["max_fraction"] = agg("max_fraction");
    const double len = cfg.params.at("interval_len").get<double>();
    auto vals = column_values(recs, column_index(cols, "max_fraction"));
    s["fitted_excess_over_density_bound"] =
        vals.empty() ? json(nullptr) : json(median(vals) - std::sqrt(2.0) * 0.5 * len);
  } else if (cfg.kind == "probe_anticoncentration") {
    s["estimate"] = agg("estimate");
  } else if (cfg.kind == "verify_erdos" || cfg.kind == "verify_binom_tail" ||
             cfg.kind == "verify_entropy") {
    long long failures = 0;
    if (cfg.kind == "verify_erdos") {
      for (const auto& r : recs)
        if (r.status == "ok" && r.cells[column_index(cols, "holds")] == "0") ++failures;
    } else {
      for (double v : column_values(recs, column_index(cols, "failures")))
        failures += static_cast<long long>(v);
      s["min_margin"] = agg("min_margin");
    }
    s["bound_failures"] = failures;
  }
  return s;
}

std::string csv_header(const ExperimentConfig& cfg) {
  std::string h = "trial,subseed,status";
  for (const auto& c : kind_columns(cfg.kind)) h += "," + c.name;
  h += "\n";
  return h;
}

std::string csv_row(const TrialRecord& r) {
  std::string line = std::to_string(r.index) + "," + std::to_string(r.subseed) + "," + r.status;
  for (const auto& c : r.cells) line += "," + c;
  line += "\n";
  return line;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir) {
  validate_params(config.kind, config.params);
  const long long rows = row_count(config);

  std::vector<TrialRecord> records(static_cast<std::size_t>(rows));
  if (config.workers <= 1 || rows <= 1) {
    for (long long i = 0; i < rows; ++i) records[static_cast<std::size_t>(i)] = run_trial(config, i);
  } else {
    std::atomic<long long> next{0};
    auto worker = [&] {
      while (true) {
        const long long i = next.fetch_add(1);
        if (i >= rows) break;
        records[static_cast<std::size_t>(i)] = run_trial(config, i);
      }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min<long long>(config.workers, rows);
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::filesystem::create_directories(out_dir);

  {
    json manifest;
    manifest["schema_version"] = kSchemaVersion;
    manifest["code_version"] = kVersion;
    manifest["config"] = config.to_json();
    json cols = json::array();
    cols.push_back({{"name", "trial"}, {"desc", "trial index, dense from 0"}});
    cols.push_back({{"name", "subseed"}, {"desc", "derive_subseed(seed, \"trial\", index)"}});
    cols.push_back({{"name", "status"}, {"desc", "ok | timeout | error:<what>"}});
    for (const auto& c : kind_columns(config.kind))
      cols.push_back({{"name", c.name}, {"desc", c.desc}});
    manifest["columns"] = cols;
    manifest["notes"] = "trials.csv is byte-reproducible from config; timings.csv is not";
    std::ofstream out(out_dir / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest.json in " + out_dir.string());
    out << manifest.dump(2) << '\n';
  }
  {
    std::ofstream out(out_dir / "trials.csv", std::ios::binary);
    if (!out) throw std::runtime_error("cannot write trials.csv in " + out_dir.string());
    out << csv_header(config);
    for (const auto& r : records) out << csv_row(r);
  }
  {
    std::ofstream out(out_dir / "timings.csv");
    out << "trial,runtime_s\n";
    for (const auto& r : records) out << r.index << ',' << fmt_double(r.runtime_s) << '\n';
  }
  {
    json summary = summarize(config, records);
    summary["schema_version"] = kSchemaVersion;
    summary["code_version"] = kVersion;
    summary["kind"] = config.kind;
    std::ofstream out(out_dir / "summary.json");
    if (!out) throw std::runtime_error("cannot write summary.json in " + out_dir.string());
    out << summary.dump(2) << '\n';
  }

  RunResult res;
  res.dir = out_dir;
  for (const auto& r : records) (r.status == "ok" ? res.ok : res.failed)++;
  return res;
}

bool replay_matches(const std::filesystem::path& dir, int workers_override) {
  std::ifstream min(dir / "manifest.json");
  if (!min) throw std::runtime_error("cannot open " + (dir / "manifest.json").string());
  json manifest = json::parse(min);
  ExperimentConfig config = ExperimentConfig::from_json(manifest.at("config"));
  if (workers_override > 0) config.workers = workers_override;

  const std::filesystem::path scratch = dir / ".replay-tmp";
  run_experiment(config, scratch);

  auto slurp = [](const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const bool same = slurp(dir / "trials.csv") == slurp(scratch / "trials.csv");
  std::filesystem::remove_all(scratch);
  return same;
}

}  // namespace nashlab
