// Acceptance suite: each criterion prints one PASS/FAIL line; the exit code
// is the number of failures. --only N[,M...] restricts the run.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nashlab/bounds.hpp"
#include "nashlab/geometry.hpp"
#include "nashlab/harness.hpp"
#include "nashlab/probes.hpp"
#include "nashlab/stats.hpp"

using namespace nashlab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fnum(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

Matrix random_matrix(int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix c(n, n);
  for (double& v : c.data) v = rng.uniform_sym(1.0);
  return c;
}

// 1. matching pennies exactly, then strong duality on 500 random games
Outcome criterion1() {
  Matrix mp(2, 2);
  mp(0, 0) = 1;
  mp(0, 1) = -1;
  mp(1, 0) = -1;
  mp(1, 1) = 1;
  auto sol = solve_zero_sum(mp);
  if (std::abs(sol.value) > 1e-9) return {false, "matching pennies value " + fnum(sol.value)};
  for (int i = 0; i < 2; ++i)
    if (std::abs(sol.x[i] - 0.5) > 1e-9 || std::abs(sol.y[i] - 0.5) > 1e-9)
      return {false, "matching pennies strategies not uniform"};

  double worst_gap = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    Matrix c = random_matrix(32, derive_subseed(101, "lp", trial));
    auto s = solve_zero_sum(c);
    std::vector<double> row_vals = c.mul_vec(s.y.weights());
    std::vector<double> col_vals = c.vec_mul(s.x.weights());
    const double upper = *std::max_element(row_vals.begin(), row_vals.end());
    const double lower = *std::min_element(col_vals.begin(), col_vals.end());
    worst_gap = std::max(worst_gap, upper - lower);
    if (upper - lower > 1e-8)
      return {false, "duality gap " + fnum(upper - lower) + " at trial " + std::to_string(trial)};
  }
  return {true, "500 games at n=32, worst duality gap " + fnum(worst_gap)};
}

// 2. folklore pure-equilibrium rate for i.i.d. uniform games
Outcome criterion2() {
  long long hits = 0;
  const long long trials = 2000;
  for (long long t = 0; t < trials; ++t) {
    BimatrixGame g = generate_game(GameGenerator::kIidUniform, 32,
                                   derive_subseed(202, "trial", t));
    if (!pure_equilibria(g).empty()) ++hits;
  }
  const double freq = static_cast<double>(hits) / trials;
  const bool pass = freq >= 0.58 && freq <= 0.68;
  return {pass, "observed " + fnum(freq) + " vs 1-1/e = 0.632 (window [0.58, 0.68])"};
}

// 3. zero-sum contrast: rare saddles at n=32, exact vs sampled at n=2
Outcome criterion3() {
  long long hits = 0;
  const long long trials = 2000;
  for (long long t = 0; t < trials; ++t) {
    BimatrixGame g = generate_game(GameGenerator::kZeroSumRademacher, 32,
                                   derive_subseed(303, "trial", t));
    if (!pure_equilibria(g).empty()) ++hits;
  }
  const double freq = static_cast<double>(hits) / trials;
  if (freq > 0.01) return {false, "n=32 saddle frequency " + fnum(freq) + " > 0.01"};

  int with_saddle = 0;
  for (int mask = 0; mask < 16; ++mask) {
    Matrix c(2, 2);
    for (int e = 0; e < 4; ++e) c.data[e] = (mask >> e) & 1 ? 1.0 : -1.0;
    if (!pure_equilibria(BimatrixGame(c, -c)).empty()) ++with_saddle;
  }
  const double exact = with_saddle / 16.0;
  long long hits2 = 0;
  for (long long t = 0; t < trials; ++t) {
    BimatrixGame g = generate_game(GameGenerator::kZeroSumRademacher, 2,
                                   derive_subseed(304, "trial", t));
    if (!pure_equilibria(g).empty()) ++hits2;
  }
  auto w = wilson_interval(hits2, trials);
  const bool inside = w.lo <= exact && exact <= w.hi;
  return {inside, "n=32 freq " + fnum(freq) + "; n=2 exact " + fnum(exact) + " in Wilson [" +
                      fnum(w.lo) + ", " + fnum(w.hi) + "]"};
}

// 4. geometry trends for uniform zero-sum games at n in {16, 64}
Outcome criterion4() {
  auto run = [](int n) {
    GeometryOptions opt;
    opt.generator = GameGenerator::kZeroSumUniform;
    opt.n = n;
    return equilibrium_geometry_experiment(opt, 200, 404);
  };
  auto small = run(16);
  auto large = run(64);
  if (small.ok != 200 || large.ok != 200)
    return {false, "solver failures: " + std::to_string(small.failed + large.failed)};
  const bool support_ok = large.median_support_frac >= small.median_support_frac;
  const bool l2_ok = large.median_l2 <= small.median_l2;
  return {support_ok && l2_ok,
          "support frac " + fnum(small.median_support_frac) + " -> " +
              fnum(large.median_support_frac) + ", l2 " + fnum(small.median_l2) + " -> " +
              fnum(large.median_l2)};
}

// 5. decoding-defect trend over block lengths 16, 64, 256
Outcome criterion5() {
  auto run = [](int ell) {
    GeometryOptions opt;
    opt.generator = GameGenerator::kReducedInstance;
    opt.blocks = 4;
    opt.block_len = ell;
    opt.noise = NoiseSpec::uniform_interval(0.1);
    opt.trial_timeout_s = 0;  // bounded by the pivot limit instead
    return equilibrium_geometry_experiment(opt, 50, 505);
  };
  auto s16 = run(16);
  auto s64 = run(64);
  auto s256 = run(256);
  if (s16.failed + s64.failed + s256.failed > 0)
    return {false, "solver failures: " + std::to_string(s16.failed) + "/" +
                       std::to_string(s64.failed) + "/" + std::to_string(s256.failed)};
  const double m16 = s16.median_defect, m64 = s64.median_defect, m256 = s256.median_defect;
  const bool monotone = m64 <= m16 && m256 <= m64;
  const bool halved = m256 <= 0.5 * m16;
  return {monotone && halved, "median defect " + fnum(m16) + " -> " + fnum(m64) + " -> " +
                                  fnum(m256) + (halved ? "" : " (not halved)")};
}

// 6. exact combinatorial bounds
Outcome criterion6() {
  Rng rng(606);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(14));
    const int k = 1 + static_cast<int>(rng.below(n));
    std::vector<double> a(n);
    for (double& v : a) v = 1.0 + rng.u01() * 9.0;
    if (!erdos_dominance_check(a, k).holds)
      return {false, "erdos dominance failed at trial " + std::to_string(trial)};
  }
  auto entropy = entropy_binom_check_range(2000);
  if (!entropy.all_hold())
    return {false, "entropy bound failed " + std::to_string(entropy.failures.size()) + " times"};
  auto tail = binom_tail_check_range(30, 2000);
  if (!tail.all_hold())
    return {false, "binomial tail bound failed " + std::to_string(tail.failures.size()) +
                       " times in 30..2000"};
  auto below = binom_tail_check_range(1, 29);
  std::string note = below.all_hold()
                         ? "no failures below n=30 either"
                         : std::to_string(below.failures.size()) + " failures below n=30 (reported, not fatal)";
  return {true, std::to_string(tail.checked) + " tail cases, " + std::to_string(entropy.checked) +
                    " entropy cases, 1000 dominance instances; " + note};
}

// 7. sparse anti-concentration mechanism by exact enumeration
Outcome criterion7() {
  const int big_l = 3;
  const double floor_prob = std::pow(2.0, -(2 * big_l + 1));
  double worst = 1.0;
  for (int trial = 0; trial < 50; ++trial) {
    Rng rng(derive_subseed(707, "x", trial));
    const int n = 24;
    const int nonzeros = 1 + static_cast<int>(rng.below(2 * big_l));
    std::vector<double> x(n, 0.0);
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    for (int i = 0; i < nonzeros; ++i)
      std::swap(idx[i], idx[i + static_cast<int>(rng.below(n - i))]);
    double sum = 0;
    for (int i = 0; i < nonzeros; ++i) sum += (x[idx[i]] = 0.05 + rng.u01());
    for (double& v : x) v /= sum;
    const double p = sign_enumeration_probability(x, 0.5 * l1_norm(x));
    worst = std::min(worst, p);
    if (p < floor_prob)
      return {false, "Pr = " + fnum(p) + " < 2^-7 at trial " + std::to_string(trial)};
  }
  return {true, "50 sparse vectors, min Pr " + fnum(worst) + " >= 2^-7 = " + fnum(floor_prob)};
}

// 8. bilinear concentration scale stability from n=64 to n=256
Outcome criterion8() {
  auto probe = [](int n, std::uint64_t seed) {
    Matrix m = sample_noise_matrix(NoiseSpec::rademacher_scaled(1.0), n,
                                   derive_subseed(808, "matrix", seed));
    return bilinear_concentration_probe(m, 100000, derive_subseed(808, "samples", seed),
                                        PartitionParams::defaults_for(n));
  };
  auto small = probe(64, 0);
  auto large = probe(256, 1);
  const bool pass = large.max_beta_ratio <= 2.0 * small.max_beta_ratio;
  return {pass, "max beta ratio " + fnum(small.max_beta_ratio) + " (n=64) vs " +
                    fnum(large.max_beta_ratio) + " (n=256)"};
}

// 9. exact gadget cancellation across construction variants
Outcome criterion9() {
  double worst = 0.0;
  int built = 0;
  for (int b : {2, 4}) {
    for (int ell : {4, 16}) {
      for (int variant = 0; variant < 5; ++variant) {
        Matrix p = random_matrix(b, derive_subseed(909, "P", built));
        Matrix q = random_matrix(b, derive_subseed(909, "Q", built));
        ReductionOptions opts;
        NoiseSpec noise = NoiseSpec::uniform_interval(0.1);
        bool general = false;
        switch (variant) {
          case 1: noise = NoiseSpec::rademacher_scaled(0.2); break;
          case 2: opts.scale_third = true; break;
          case 3: opts.signal_scale = 0.25; break;
          case 4: general = true; break;
          default: break;
        }
        ReductionInstance inst =
            general ? build_general_x_game(p, q, ell, NoiseSpec::uniform_interval(0.05),
                                           1000 + built, opts)
                    : build_reduced_game(p, q, ell, noise, 1000 + built, opts);
        worst = std::max(worst, inst.gadget_residual());
        ++built;
      }
    }
  }
  return {worst <= 1e-12,
          std::to_string(built) + " instances, max |A+B-(P+Q)xJ-Aeps-Beps| = " + fnum(worst)};
}

// 10. byte-identical replay, including across worker counts
Outcome criterion10() {
  using nlohmann::json;
  const fs::path dir = fs::temp_directory_path() / "nashlab-acceptance-replay";
  fs::remove_all(dir);
  auto cfg = ExperimentConfig::from_json(json{
      {"kind", "decoding"},
      {"trials", 6},
      {"seed", 1010},
      {"params", {{"blocks", 2}, {"block_len", 8}, {"noise", "uniform:0.1"}}}});
  run_experiment(cfg, dir);
  const bool same1 = replay_matches(dir);
  const bool same3 = replay_matches(dir, 3);

  const fs::path dir2 = fs::temp_directory_path() / "nashlab-acceptance-replay2";
  fs::remove_all(dir2);
  auto cfg2 = ExperimentConfig::from_json(json{
      {"kind", "pure_rate"},
      {"trials", 40},
      {"seed", 2020},
      {"params", {{"generator", "zero_sum_rademacher"}, {"n", 8}}}});
  run_experiment(cfg2, dir2);
  const bool same2 = replay_matches(dir2, 2);
  fs::remove_all(dir);
  fs::remove_all(dir2);
  return {same1 && same3 && same2,
          std::string("decoding replay ") + (same1 && same3 ? "identical" : "DIFFERS") +
              ", pure_rate replay " + (same2 ? "identical" : "DIFFERS")};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) {
      std::stringstream ss(argv[++i]);
      std::string tok;
      while (std::getline(ss, tok, ',')) only.insert(std::stoi(tok));
    }
  }

  const std::vector<Criterion> criteria = {
      {1, "zero-sum solver exactness and duality", 10, criterion1},
      {2, "iid-uniform pure-equilibrium rate near 1-1/e", 60, criterion2},
      {3, "zero-sum saddle rarity and exact n=2 enumeration", 60, criterion3},
      {4, "support/norm geometry trends in n", 120, criterion4},
      {5, "decoding defect shrinks with block length", 600, criterion5},
      {6, "exact dominance, entropy, and tail bounds", 120, criterion6},
      {7, "sparse anti-concentration floor", 60, criterion7},
      {8, "bilinear concentration scale stability", 180, criterion8},
      {9, "gadget cancellation identity", 60, criterion9},
      {10, "byte-identical experiment replay", 120, criterion10},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) {
      out.pass = false;
      out.detail += " [runtime " + fnum(secs) + "s exceeds " + fnum(c.budget_s) + "s]";
    }
    std::printf("[%s] criterion %d (%.1fs): %s -- %s\n", out.pass ? "PASS" : "FAIL", c.id, secs,
                c.name, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
