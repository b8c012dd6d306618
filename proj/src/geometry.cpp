#include "nashlab/geometry.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace nashlab {

GameGenerator parse_generator(const std::string& name) {
  if (name == "iid_uniform") return GameGenerator::kIidUniform;
  if (name == "zero_sum_uniform") return GameGenerator::kZeroSumUniform;
  if (name == "zero_sum_rademacher") return GameGenerator::kZeroSumRademacher;
  if (name == "reduced_instance") return GameGenerator::kReducedInstance;
  throw std::invalid_argument("unknown game generator: " + name);
}

std::string generator_name(GameGenerator g) {
  switch (g) {
    case GameGenerator::kIidUniform: return "iid_uniform";
    case GameGenerator::kZeroSumUniform: return "zero_sum_uniform";
    case GameGenerator::kZeroSumRademacher: return "zero_sum_rademacher";
    case GameGenerator::kReducedInstance: return "reduced_instance";
  }
  return "?";
}

SolverChoice parse_solver(const std::string& name) {
  if (name == "auto") return SolverChoice::kAuto;
  if (name == "lp") return SolverChoice::kLp;
  if (name == "lh") return SolverChoice::kLemkeHowson;
  if (name == "support-enum") return SolverChoice::kSupportEnum;
  throw std::invalid_argument("unknown solver: " + name + " (expected lp|lh|support-enum|auto)");
}

BimatrixGame generate_game(GameGenerator gen, int n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(n, n), b(n, n);
  switch (gen) {
    case GameGenerator::kIidUniform:
      for (double& v : a.data) v = rng.uniform_sym(1.0);
      for (double& v : b.data) v = rng.uniform_sym(1.0);
      break;
    case GameGenerator::kZeroSumUniform:
      for (int i = 0; i < n * n; ++i) {
        a.data[i] = rng.uniform_sym(1.0);
        b.data[i] = -a.data[i];
      }
      break;
    case GameGenerator::kZeroSumRademacher:
      for (int i = 0; i < n * n; ++i) {
        a.data[i] = rng.rademacher(1.0);
        b.data[i] = -a.data[i];
      }
      break;
    case GameGenerator::kReducedInstance:
      throw std::invalid_argument("reduced instances are built per trial, not via generate_game");
  }
  return BimatrixGame(std::move(a), std::move(b));
}

namespace {

SolverChoice resolve_auto(GameGenerator gen, int n) {
  if (gen == GameGenerator::kZeroSumUniform || gen == GameGenerator::kZeroSumRademacher)
    return SolverChoice::kLp;
  if (n <= 10 && gen != GameGenerator::kReducedInstance) return SolverChoice::kSupportEnum;
  return SolverChoice::kLemkeHowson;
}

void record_equilibrium(GeometryTrial& t, const EquilibriumRecord& rec, int n, bool first) {
  const double fx = static_cast<double>(rec.support_sizes.first) / n;
  const double fy = static_cast<double>(rec.support_sizes.second) / n;
  t.all_support_fracs.push_back(fx);
  t.all_support_fracs.push_back(fy);
  t.all_l2.push_back(rec.l2_norms.first);
  t.all_l2.push_back(rec.l2_norms.second);
  if (!first) return;
  t.support_x = rec.support_sizes.first;
  t.support_y = rec.support_sizes.second;
  t.support_frac_x = fx;
  t.support_frac_y = fy;
  t.l2_x = rec.l2_norms.first;
  t.l2_y = rec.l2_norms.second;
  t.regret_row = rec.regret_row;
  t.regret_col = rec.regret_col;
}

// Counts indices outside the support where the combined noise gadget pays
// more than c * beta of the opposing strategy, per block.
void count_good_indices(GeometryTrial& t, const ReductionInstance& inst,
                        const EquilibriumRecord& rec, double c, const PartitionParams& pp) {
  const int n = inst.block_map.n;
  Matrix gadget = inst.z0 + inst.z1 + inst.a_eps;  // row player's noise
  std::vector<double> row_pay = gadget.mul_vec(rec.y.weights());
  Matrix gadget_col = (-(inst.z0 + inst.z1)) + inst.b_eps;  // column player's noise
  std::vector<double> col_pay = gadget_col.vec_mul(rec.x.weights());

  t.beta_x = benchmark_beta(rec.x.weights(), pp);
  t.beta_y = benchmark_beta(rec.y.weights(), pp);
  const double thr_s = c * t.beta_y;
  const double thr_t = c * t.beta_x;
  std::vector<char> in_s(n, 0), in_t(n, 0);
  for (int i : rec.x.support()) in_s[i] = 1;
  for (int j : rec.y.support()) in_t[j] = 1;
  t.s_good_per_block.assign(inst.block_map.blocks, 0);
  t.t_good_per_block.assign(inst.block_map.blocks, 0);
  for (int i = 0; i < n; ++i) {
    if (!in_s[i] && row_pay[i] > thr_s) ++t.s_good_per_block[inst.block_map.block_of(i)];
    if (!in_t[i] && col_pay[i] > thr_t) ++t.t_good_per_block[inst.block_map.block_of(i)];
  }
}

}  // namespace

GeometryTrial run_geometry_trial(const GeometryOptions& opt, std::uint64_t master_seed,
                                 long long trial_index) {
  GeometryTrial t;
  t.index = trial_index;
  t.subseed = derive_subseed(master_seed, "trial", static_cast<std::uint64_t>(trial_index));

  SolverLimits limits;
  limits.pivot_limit = opt.pivot_limit;
  if (opt.trial_timeout_s > 0)
    limits.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(opt.trial_timeout_s));

  PartitionParams pp = opt.partition;

  try {
    if (opt.generator == GameGenerator::kReducedInstance) {
      const int b = opt.blocks;
      t.n = b * opt.block_len;
      if (pp.level_count <= 0) pp = PartitionParams::defaults_for(t.n);
      Matrix p(b, b), q(b, b);
      {
        Rng rng_p(derive_subseed(t.subseed, "P", 0));
        for (double& v : p.data) v = rng_p.uniform_sym(1.0);
        Rng rng_q(derive_subseed(t.subseed, "Q", 0));
        for (double& v : q.data) v = rng_q.uniform_sym(1.0);
      }
      ReductionInstance inst =
          opt.general_x
              ? build_general_x_game(p, q, opt.block_len, opt.noise, t.subseed, opt.reduction)
              : build_reduced_game(p, q, opt.block_len, opt.noise, t.subseed, opt.reduction);
      const auto pure = pure_equilibria(inst.reduced);
      t.pure_count = static_cast<int>(pure.size());
      t.has_pure = !pure.empty();
      EquilibriumRecord rec = lemke_howson(inst.reduced, opt.lh_label, limits);
      t.equilibria_found = 1;
      record_equilibrium(t, rec, t.n, true);
      bool reduced_ok = false;
      t.defect = decoding_defect(inst, rec.x, rec.y, &reduced_ok);
      if (!reduced_ok) t.status = "error:reduced pair failed 1e-6 equilibrium check";
      count_good_indices(t, inst, rec, opt.goodness_c, pp);
      return t;
    }

    t.n = opt.n;
    if (pp.level_count <= 0) pp = PartitionParams::defaults_for(t.n);
    BimatrixGame game =
        generate_game(opt.generator, opt.n, derive_subseed(t.subseed, "game", 0));
    const auto pure = pure_equilibria(game);
    t.pure_count = static_cast<int>(pure.size());
    t.has_pure = !pure.empty();

    SolverChoice solver = opt.solver == SolverChoice::kAuto
                              ? resolve_auto(opt.generator, opt.n)
                              : opt.solver;
    switch (solver) {
      case SolverChoice::kLp: {
        if (opt.generator == GameGenerator::kIidUniform)
          throw std::invalid_argument("lp solver applies to zero-sum games only");
        ZeroSumSolution sol = solve_zero_sum(game.payoff_a, limits);
        EquilibriumRecord rec = make_record(game, sol.x, sol.y);
        t.equilibria_found = 1;
        record_equilibrium(t, rec, t.n, true);
        break;
      }
      case SolverChoice::kLemkeHowson: {
        EquilibriumRecord rec = lemke_howson(game, opt.lh_label, limits);
        t.equilibria_found = 1;
        record_equilibrium(t, rec, t.n, true);
        break;
      }
      default: {
        SolverReport rep = support_enumeration(game, std::min(game.rows(), game.cols()),
                                               /*include_unequal=*/false, limits);
        t.equilibria_found = static_cast<int>(rep.equilibria.size());
        for (std::size_t i = 0; i < rep.equilibria.size(); ++i)
          record_equilibrium(t, rep.equilibria[i], t.n, i == 0);
        if (rep.equilibria.empty()) t.status = "error:no equilibrium found by enumeration";
      }
    }
  } catch (const SolverTimeout&) {
    t.status = "timeout";
  } catch (const std::exception& e) {
    t.status = std::string("error:") + e.what();
  }
  return t;
}

GeometryStats equilibrium_geometry_experiment(const GeometryOptions& opt, long long trials,
                                              std::uint64_t master_seed) {
  GeometryStats stats;
  stats.trials.reserve(static_cast<std::size_t>(trials));
  long long pure_hits = 0, pure_trials = 0;
  std::vector<double> fracs, l2s, defects;
  for (long long i = 0; i < trials; ++i) {
    GeometryTrial t = run_geometry_trial(opt, master_seed, i);
    if (t.status == "ok") {
      ++stats.ok;
      ++pure_trials;
      if (t.has_pure) ++pure_hits;
      fracs.insert(fracs.end(), t.all_support_fracs.begin(), t.all_support_fracs.end());
      l2s.insert(l2s.end(), t.all_l2.begin(), t.all_l2.end());
      if (opt.generator == GameGenerator::kReducedInstance) defects.push_back(t.defect);
    } else {
      ++stats.failed;
    }
    stats.trials.push_back(std::move(t));
  }
  stats.pure_rate = wilson_interval(pure_hits, pure_trials);
  stats.median_support_frac = median(fracs);
  stats.median_l2 = median(l2s);
  stats.median_defect = median(defects);
  return stats;
}

}  // namespace nashlab
