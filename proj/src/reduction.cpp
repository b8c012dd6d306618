#include "nashlab/reduction.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace nashlab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// NoiseSpec
// ---------------------------------------------------------------------------

NoiseSpec NoiseSpec::uniform_interval(double b) {
  if (b < 0) throw std::invalid_argument("uniform_interval bound must be >= 0");
  NoiseSpec s;
  s.family = Family::kUniformInterval;
  s.values = {b};
  s.bound = b;
  return s;
}

NoiseSpec NoiseSpec::rademacher_scaled(double scale) {
  if (scale < 0) throw std::invalid_argument("rademacher scale must be >= 0");
  NoiseSpec s;
  s.family = Family::kRademacherScaled;
  s.values = {scale};
  s.bound = scale;
  return s;
}

NoiseSpec NoiseSpec::discrete_table(std::vector<double> values, std::vector<double> probs) {
  if (values.empty() || values.size() != probs.size())
    throw std::invalid_argument("discrete_table needs matching nonempty values/probs");
  double total = 0.0;
  for (double p : probs) {
    if (p < 0) throw std::invalid_argument("discrete_table probabilities must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("discrete_table probabilities must sum to 1");
  NoiseSpec s;
  s.family = Family::kDiscreteTable;
  s.bound = 0.0;
  for (double v : values) s.bound = std::max(s.bound, std::abs(v));
  s.values = std::move(values);
  s.probs = std::move(probs);
  return s;
}

NoiseSpec NoiseSpec::point_mass(double v) { return discrete_table({v}, {1.0}); }

NoiseSpec NoiseSpec::difference_of(NoiseSpec x) {
  NoiseSpec s;
  s.family = Family::kDifferenceOf;
  s.bound = 2.0 * x.bound;
  s.inner = std::make_shared<const NoiseSpec>(std::move(x));
  return s;
}

NoiseSpec symmetrize(const NoiseSpec& x) { return NoiseSpec::difference_of(x); }

double NoiseSpec::sample(Rng& rng) const {
  switch (family) {
    case Family::kUniformInterval:
      return rng.uniform_sym(values[0]);
    case Family::kRademacherScaled:
      return rng.rademacher(values[0]);
    case Family::kDiscreteTable: {
      const double u = rng.u01();
      double acc = 0.0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        acc += probs[i];
        if (u < acc) return values[i];
      }
      return values.back();
    }
    case Family::kDifferenceOf: {
      const double a = inner->sample(rng);
      const double b = inner->sample(rng);
      return a - b;
    }
  }
  throw std::logic_error("unknown noise family");
}

std::string NoiseSpec::to_string() const {
  switch (family) {
    case Family::kUniformInterval:
      return "uniform:" + fmt_double(values[0]);
    case Family::kRademacherScaled:
      return "rademacher:" + fmt_double(values[0]);
    case Family::kDiscreteTable: {
      if (values.size() == 1) return "point:" + fmt_double(values[0]);
      std::string out = "table:";
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += fmt_double(values[i]) + "@" + fmt_double(probs[i]);
      }
      return out;
    }
    case Family::kDifferenceOf:
      return "diff(" + inner->to_string() + ")";
  }
  return "?";
}

NoiseSpec NoiseSpec::parse(const std::string& text) {
  auto fail = [&]() -> NoiseSpec {
    throw std::invalid_argument("cannot parse noise spec '" + text +
                                "' (expected uniform:B, rademacher:S, point:V, "
                                "table:v@p,..., or diff(SPEC))");
  };
  if (text.rfind("diff(", 0) == 0 && text.back() == ')')
    return difference_of(parse(text.substr(5, text.size() - 6)));
  auto colon = text.find(':');
  if (colon == std::string::npos) return fail();
  const std::string head = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  try {
    if (head == "uniform") return uniform_interval(std::stod(rest));
    if (head == "rademacher") return rademacher_scaled(std::stod(rest));
    if (head == "point") return point_mass(std::stod(rest));
    if (head == "table") {
      std::vector<double> vals, probs;
      std::stringstream ss(rest);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto at = item.find('@');
        if (at == std::string::npos) return fail();
        vals.push_back(std::stod(item.substr(0, at)));
        probs.push_back(std::stod(item.substr(at + 1)));
      }
      return discrete_table(std::move(vals), std::move(probs));
    }
  } catch (const std::invalid_argument&) {
    return fail();
  }
  return fail();
}

Matrix sample_noise_matrix(const NoiseSpec& spec, int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("noise matrix needs n >= 1");
  Rng rng(seed);
  Matrix m(n, n);
  for (double& v : m.data) v = spec.sample(rng);
  return m;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

Matrix tensor_with_ones(const Matrix& p, int ell) {
  if (ell < 1) throw std::invalid_argument("block length must be >= 1");
  Matrix out(p.rows * ell, p.cols * ell);
  for (int r = 0; r < out.rows; ++r)
    for (int c = 0; c < out.cols; ++c) out(r, c) = p(r / ell, c / ell);
  return out;
}

namespace {

void check_source(const Matrix& p, const Matrix& q, std::vector<std::string>& warnings) {
  if (p.rows != p.cols || !p.same_shape(q))
    throw std::invalid_argument("source payoffs P, Q must be square with equal dimensions");
  if (std::max(p.max_abs(), q.max_abs()) > 1.0 + 1e-12)
    warnings.push_back("source entries exceed [-1, 1]; construction proceeds unscaled");
}

// Samples Z0, Z1 and writes the common part of the instance.
ReductionInstance make_base(const Matrix& p, const Matrix& q, int ell, const NoiseSpec& noise,
                            std::uint64_t master_seed, const ReductionOptions& options) {
  ReductionInstance inst;
  check_source(p, q, inst.warnings);
  const int b = p.rows;
  const int n = b * ell;
  inst.block_map = BlockMap(b, ell);
  inst.noise = noise;
  inst.master_seed = master_seed;
  inst.options = options;
  inst.seed_z0 = derive_subseed(master_seed, "Z0", 0);
  inst.seed_z1 = derive_subseed(master_seed, "Z1", 0);
  inst.seed_a_eps = derive_subseed(master_seed, "Aeps", 0);
  inst.seed_b_eps = derive_subseed(master_seed, "Beps", 0);
  inst.z0 = sample_noise_matrix(NoiseSpec::rademacher_scaled(1.0), n, inst.seed_z0);
  inst.z1 = sample_noise_matrix(NoiseSpec::uniform_interval(1.0), n, inst.seed_z1);
  if (options.mask.zero_z0) inst.z0 = Matrix(n, n);
  if (options.mask.zero_z1) inst.z1 = Matrix(n, n);
  inst.source = BimatrixGame(p, q);
  return inst;
}

}  // namespace

ReductionInstance build_reduced_game(const Matrix& p, const Matrix& q, int ell,
                                     const NoiseSpec& noise, std::uint64_t master_seed,
                                     const ReductionOptions& options) {
  ReductionInstance inst = make_base(p, q, ell, noise, master_seed, options);
  const int n = inst.block_map.n;
  inst.a_eps = sample_noise_matrix(noise, n, inst.seed_a_eps);
  inst.b_eps = sample_noise_matrix(noise, n, inst.seed_b_eps);
  if (options.mask.zero_a_eps) inst.a_eps = Matrix(n, n);
  if (options.mask.zero_b_eps) inst.b_eps = Matrix(n, n);

  Matrix a = tensor_with_ones(p * options.signal_scale, ell);
  a += inst.z0;
  a += inst.z1;
  a += inst.a_eps;
  Matrix b_mat = tensor_with_ones(q * options.signal_scale, ell);
  b_mat -= inst.z0;
  b_mat -= inst.z1;
  b_mat += inst.b_eps;
  const double scale = inst.payoff_scale();
  if (scale != 1.0) {
    a *= scale;
    b_mat *= scale;
  }
  inst.reduced = BimatrixGame(std::move(a), std::move(b_mat));
  return inst;
}

ReductionInstance build_general_x_game(const Matrix& p, const Matrix& q, int ell,
                                       const NoiseSpec& x, std::uint64_t master_seed,
                                       const ReductionOptions& options) {
  ReductionInstance inst = make_base(p, q, ell, NoiseSpec::difference_of(x), master_seed, options);
  inst.general_x = true;
  const int n = inst.block_map.n;

  // Draw the X / X' pairs with the exact stream the difference sampler uses,
  // keeping both halves.
  auto split_sample = [&](std::uint64_t seed, Matrix& fresh, Matrix& subtracted) {
    Rng rng(seed);
    fresh = Matrix(n, n);
    subtracted = Matrix(n, n);
    for (int i = 0; i < n * n; ++i) {
      fresh.data[i] = x.sample(rng);
      subtracted.data[i] = x.sample(rng);
    }
  };
  Matrix a_x, a_xp, b_x, b_xp;
  split_sample(inst.seed_a_eps, a_x, a_xp);
  split_sample(inst.seed_b_eps, b_x, b_xp);
  inst.a_eps = a_x - a_xp;
  inst.b_eps = b_x - b_xp;
  if (options.mask.zero_a_eps) {
    inst.a_eps = Matrix(n, n);
    a_x = Matrix(n, n);
    a_xp = Matrix(n, n);
  }
  if (options.mask.zero_b_eps) {
    inst.b_eps = Matrix(n, n);
    b_x = Matrix(n, n);
    b_xp = Matrix(n, n);
  }

  Matrix w_a = tensor_with_ones(p * options.signal_scale, ell);
  w_a += inst.z0;
  w_a += inst.z1;
  w_a -= a_xp;
  Matrix w_b = tensor_with_ones(q * options.signal_scale, ell);
  w_b -= inst.z0;
  w_b -= inst.z1;
  w_b -= b_xp;
  const double scale = inst.payoff_scale();
  if (scale != 1.0) {
    w_a *= scale;
    w_b *= scale;
    a_x *= scale;
    b_x *= scale;
  }
  inst.n_a = std::move(a_x);
  inst.n_b = std::move(b_x);
  inst.reduced = BimatrixGame(w_a + inst.n_a, w_b + inst.n_b);
  inst.w_a = std::move(w_a);
  inst.w_b = std::move(w_b);
  return inst;
}

double ReductionInstance::gadget_residual() const {
  const double scale = payoff_scale();
  const Matrix tensor =
      tensor_with_ones((source.payoff_a + source.payoff_b) * options.signal_scale,
                       block_map.block_len);
  double worst = 0.0;
  for (std::size_t i = 0; i < reduced.payoff_a.data.size(); ++i) {
    const double r = reduced.payoff_a.data[i] + reduced.payoff_b.data[i] -
                     scale * (tensor.data[i] + a_eps.data[i] + b_eps.data[i]);
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Decoding
// ---------------------------------------------------------------------------

namespace {

std::vector<double> block_sums(const std::vector<double>& w, const BlockMap& bm) {
  std::vector<double> out(static_cast<std::size_t>(bm.blocks), 0.0);
  for (int blk = 0; blk < bm.blocks; ++blk) {
    // Neumaier compensated sum over the block
    double sum = 0.0, comp = 0.0;
    for (int i = bm.begin(blk); i < bm.end(blk); ++i) {
      const double t = sum + w[i];
      if (std::abs(sum) >= std::abs(w[i]))
        comp += (sum - t) + w[i];
      else
        comp += (w[i] - t) + sum;
      sum = t;
    }
    out[blk] = sum + comp;
  }
  return out;
}

}  // namespace

std::pair<MixedStrategy, MixedStrategy> decode_strategies(const MixedStrategy& x,
                                                          const MixedStrategy& y,
                                                          const BlockMap& bm) {
  if (x.size() != bm.n || y.size() != bm.n)
    throw std::invalid_argument("decode_strategies: strategy dimension does not match block map");
  return {MixedStrategy(block_sums(x.weights(), bm)), MixedStrategy(block_sums(y.weights(), bm))};
}

double decoding_defect(const ReductionInstance& inst, const MixedStrategy& x,
                       const MixedStrategy& y, bool* reduced_ok) {
  const bool ok = is_epsilon_equilibrium(inst.reduced, x, y, 1e-6);
  if (reduced_ok) *reduced_ok = ok;
  auto [xh, yh] = decode_strategies(x, y, inst.block_map);
  auto [rr, rc] = regrets(inst.source, xh, yh);
  return std::max(rr, rc);
}

// ---------------------------------------------------------------------------
// Persistence
// ---------------------------------------------------------------------------

namespace {

json noise_to_json(const NoiseSpec& s) {
  json j;
  switch (s.family) {
    case NoiseSpec::Family::kUniformInterval:
      j["family"] = "uniform_interval";
      j["params"] = s.values;
      break;
    case NoiseSpec::Family::kRademacherScaled:
      j["family"] = "rademacher_scaled";
      j["params"] = s.values;
      break;
    case NoiseSpec::Family::kDiscreteTable:
      j["family"] = "discrete_table";
      j["values"] = s.values;
      j["probs"] = s.probs;
      break;
    case NoiseSpec::Family::kDifferenceOf:
      j["family"] = "difference_of";
      j["inner"] = noise_to_json(*s.inner);
      break;
  }
  j["bound"] = s.bound;
  return j;
}

NoiseSpec noise_from_json(const json& j) {
  const std::string family = j.at("family");
  if (family == "uniform_interval") return NoiseSpec::uniform_interval(j.at("params")[0]);
  if (family == "rademacher_scaled") return NoiseSpec::rademacher_scaled(j.at("params")[0]);
  if (family == "discrete_table")
    return NoiseSpec::discrete_table(j.at("values").get<std::vector<double>>(),
                                     j.at("probs").get<std::vector<double>>());
  if (family == "difference_of") return NoiseSpec::difference_of(noise_from_json(j.at("inner")));
  throw std::invalid_argument("unknown noise family in manifest: " + family);
}

void save_matrix(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << m.rows << ' ' << m.cols << '\n';
  for (int r = 0; r < m.rows; ++r) {
    for (int c = 0; c < m.cols; ++c) {
      if (c) out << ' ';
      out << fmt_double(m(r, c));
    }
    out << '\n';
  }
}

}  // namespace

void save_instance(const std::string& dir, const ReductionInstance& inst, bool persist_noise) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  save_game_file(dir + "/source.game", inst.source);
  save_game_file(dir + "/reduced.game", inst.reduced);
  json manifest;
  manifest["kind"] = "reduction_instance";
  manifest["blocks"] = inst.block_map.blocks;
  manifest["block_len"] = inst.block_map.block_len;
  manifest["noise"] = noise_to_json(inst.noise);
  manifest["master_seed"] = inst.master_seed;
  manifest["sub_seeds"] = {{"Z0", inst.seed_z0},
                           {"Z1", inst.seed_z1},
                           {"Aeps", inst.seed_a_eps},
                           {"Beps", inst.seed_b_eps}};
  manifest["signal_scale"] = inst.options.signal_scale;
  manifest["scale_third"] = inst.options.scale_third;
  manifest["general_x"] = inst.general_x;
  manifest["persisted_noise"] = persist_noise;
  manifest["warnings"] = inst.warnings;
  std::ofstream out(dir + "/manifest.json");
  if (!out) throw std::runtime_error("cannot write " + dir + "/manifest.json");
  out << manifest.dump(2) << '\n';
  if (persist_noise) {
    save_matrix(dir + "/z0.mat", inst.z0);
    save_matrix(dir + "/z1.mat", inst.z1);
    save_matrix(dir + "/a_eps.mat", inst.a_eps);
    save_matrix(dir + "/b_eps.mat", inst.b_eps);
  }
}

ReductionInstance load_instance(const std::string& dir) {
  std::ifstream in(dir + "/manifest.json");
  if (!in) throw std::runtime_error("cannot open " + dir + "/manifest.json");
  json manifest = json::parse(in);
  if (manifest.at("kind") != "reduction_instance")
    throw std::runtime_error(dir + " is not a reduction instance directory");
  const BimatrixGame source = load_game_file(dir + "/source.game");
  const int ell = manifest.at("block_len");
  NoiseSpec noise = noise_from_json(manifest.at("noise"));
  ReductionOptions options;
  options.signal_scale = manifest.at("signal_scale");
  options.scale_third = manifest.at("scale_third");
  const std::uint64_t master = manifest.at("master_seed");
  const bool general = manifest.at("general_x").get<bool>();
  if (general && (noise.family != NoiseSpec::Family::kDifferenceOf || !noise.inner))
    throw std::runtime_error("general-X manifest must carry a difference_of noise spec in " + dir);
  ReductionInstance inst =
      general ? build_general_x_game(source.payoff_a, source.payoff_b, ell, *noise.inner, master,
                                     options)
              : build_reduced_game(source.payoff_a, source.payoff_b, ell, noise, master, options);
  // cross-check against the stored reduced game
  const BimatrixGame stored = load_game_file(dir + "/reduced.game");
  if (!stored.payoff_a.same_shape(inst.reduced.payoff_a) ||
      stored.payoff_a.data != inst.reduced.payoff_a.data ||
      stored.payoff_b.data != inst.reduced.payoff_b.data)
    throw std::runtime_error("stored reduced.game does not match regeneration from seeds in " +
                             dir);
  return inst;
}

}  // namespace nashlab
