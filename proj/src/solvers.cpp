#include "nashlab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nashlab/stats.hpp"

namespace nashlab {

namespace {

constexpr double kPivotEps = 1e-9;

void check_deadline(const SolverLimits& limits, const char* where) {
  if (limits.deadline && std::chrono::steady_clock::now() > *limits.deadline)
    throw SolverTimeout(std::string("solver deadline exceeded in ") + where);
}

// ---------------------------------------------------------------------------
// Zero-sum LP.
//
// Shift C so every entry is >= 1, then solve max 1^T w s.t. C'w <= 1, w >= 0
// by primal simplex on the slack-basis tableau. The row player's optimal
// strategy is read off the duals (cost-row entries under the slack columns),
// the column player's from the primal solution; value = 1/gamma - shift.
// ---------------------------------------------------------------------------

struct SimplexTableau {
  int rows, width;          // width = vars + rows + 1 (rhs)
  std::vector<double> t;    // rows x width
  std::vector<double> cost; // width
  std::vector<int> basis;   // per row: column index of basic variable

  double& at(int r, int c) { return t[static_cast<std::size_t>(r) * width + c]; }

  void pivot(int prow, int pcol) {
    double* pr = &t[static_cast<std::size_t>(prow) * width];
    const double inv = 1.0 / pr[pcol];
    for (int c = 0; c < width; ++c) pr[c] *= inv;
    pr[pcol] = 1.0;
    for (int r = 0; r < rows; ++r) {
      if (r == prow) continue;
      double* row = &t[static_cast<std::size_t>(r) * width];
      const double f = row[pcol];
      if (f == 0.0) continue;
      for (int c = 0; c < width; ++c) row[c] -= f * pr[c];
      row[pcol] = 0.0;
    }
    const double f = cost[pcol];
    if (f != 0.0) {
      for (int c = 0; c < width; ++c) cost[c] -= f * pr[c];
      cost[pcol] = 0.0;
    }
    basis[prow] = pcol;
  }
};

}  // namespace

ZeroSumSolution solve_zero_sum(const Matrix& c, const SolverLimits& limits) {
  const int n = c.rows, m = c.cols;
  if (n <= 0 || m <= 0) throw std::invalid_argument("zero-sum matrix must be nonempty");
  for (double v : c.data)
    if (!std::isfinite(v)) throw std::invalid_argument("zero-sum matrix has non-finite entry");

  const double shift = std::max(0.0, 1.0 - c.min_entry());

  SimplexTableau tab;
  tab.rows = n;
  tab.width = m + n + 1;
  tab.t.assign(static_cast<std::size_t>(n) * tab.width, 0.0);
  tab.cost.assign(tab.width, 0.0);
  tab.basis.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) tab.at(i, j) = c(i, j) + shift;
    tab.at(i, m + i) = 1.0;
    tab.at(i, tab.width - 1) = 1.0;
    tab.basis[i] = m + i;
  }
  for (int j = 0; j < m; ++j) tab.cost[j] = -1.0;

  const long long bland_after = 64LL * (n + m);
  long long pivots = 0;
  while (true) {
    if ((pivots & 0xff) == 0) check_deadline(limits, "solve_zero_sum");
    // entering column
    int pcol = -1;
    if (pivots < bland_after) {
      double best = -kPivotEps;
      for (int j = 0; j < tab.width - 1; ++j)
        if (tab.cost[j] < best) {
          best = tab.cost[j];
          pcol = j;
        }
    } else {
      for (int j = 0; j < tab.width - 1; ++j)
        if (tab.cost[j] < -kPivotEps) {
          pcol = j;
          break;
        }
    }
    if (pcol < 0) break;  // optimal
    // ratio test; ties go to the lowest basis index (Bland-compatible)
    int prow = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double a = tab.at(i, pcol);
      if (a <= kPivotEps) continue;
      const double ratio = tab.at(i, tab.width - 1) / a;
      if (ratio < best_ratio - 1e-12 ||
          (ratio < best_ratio + 1e-12 && (prow < 0 || tab.basis[i] < tab.basis[prow]))) {
        best_ratio = ratio;
        prow = i;
      }
    }
    if (prow < 0)
      throw std::runtime_error("zero-sum LP unbounded; matrix shift failed (max|C|=" +
                               fmt_double(c.max_abs()) + ")");
    tab.pivot(prow, pcol);
    if (++pivots > limits.pivot_limit)
      throw std::runtime_error("zero-sum LP exceeded pivot limit " +
                               std::to_string(limits.pivot_limit));
  }

  const double gamma = tab.cost[tab.width - 1];
  if (!(gamma > 0.0))
    throw std::runtime_error("zero-sum LP degenerate optimum (gamma=" + fmt_double(gamma) + ")");

  std::vector<double> w(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < n; ++i)
    if (tab.basis[i] < m) w[tab.basis[i]] = std::max(0.0, tab.at(i, tab.width - 1));
  std::vector<double> u(static_cast<std::size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) u[i] = std::max(0.0, tab.cost[m + i]);

  double su = 0.0, sw = 0.0;
  for (double v : u) su += v;
  for (double v : w) sw += v;
  if (!(su > 0.0) || !(sw > 0.0))
    throw std::runtime_error("zero-sum LP produced empty strategy (su=" + fmt_double(su) +
                             ", sw=" + fmt_double(sw) + ")");
  for (double& v : u) v /= su;
  for (double& v : w) v /= sw;

  ZeroSumSolution sol;
  sol.x = MixedStrategy(std::move(u));
  sol.y = MixedStrategy(std::move(w));
  sol.pivots = pivots;
  sol.value = bilinear(sol.x.weights(), c, sol.y.weights());

  BimatrixGame zs(c, -c);
  auto [rr, rc] = regrets(zs, sol.x, sol.y);
  if (rr > kSolverTol || rc > kSolverTol)
    throw std::runtime_error("zero-sum LP failed regret check (row=" + fmt_double(rr) +
                             ", col=" + fmt_double(rc) + ", pivots=" + std::to_string(pivots) +
                             ", gamma=" + fmt_double(gamma) + ")");
  return sol;
}

// ---------------------------------------------------------------------------
// Lemke-Howson.
//
// Two slack systems, one per polytope:
//   X-system rows j in [m]:  r_j + sum_i B'(i,j) x_i = 1   vars x_i | r_j
//   Y-system rows i in [n]:  s_i + sum_j A'(i,j) y_j = 1   vars y_j | s_i
// Labels: x_i and s_i carry label i; y_j and r_j carry label n+j. Dropping
// the initial label traces the standard complementary path; the leaving
// variable's twin (same label, other system) enters next. The ratio test is
// lexicographic over (rhs, slack columns), which rules out cycling.
// ---------------------------------------------------------------------------

namespace {

struct LhTableau {
  int rows = 0;
  int vars = 0;  // structural variables; slack columns follow, then rhs
  int width = 0;
  std::vector<double> t;
  std::vector<int> basis;  // per row: variable index (0..vars-1 structural,
                           // vars..vars+rows-1 slack)

  void init(int r, int v) {
    rows = r;
    vars = v;
    width = v + r + 1;
    t.assign(static_cast<std::size_t>(r) * width, 0.0);
    basis.resize(r);
    for (int i = 0; i < r; ++i) {
      at(i, v + i) = 1.0;
      at(i, width - 1) = 1.0;
      basis[i] = v + i;
    }
  }

  double& at(int r, int c) { return t[static_cast<std::size_t>(r) * width + c]; }
  double get(int r, int c) const { return t[static_cast<std::size_t>(r) * width + c]; }

  // Lexicographic min-ratio test over (rhs, slack block) / pivot entry.
  int ratio_row(int pcol) const {
    int best = -1;
    for (int i = 0; i < rows; ++i) {
      const double a = get(i, pcol);
      if (a <= kPivotEps) continue;
      if (best < 0) {
        best = i;
        continue;
      }
      const double ab = get(best, pcol);
      // compare (rhs, slack columns) ratios
      double ri = get(i, width - 1) / a;
      double rb = get(best, width - 1) / ab;
      bool decided = false;
      if (std::abs(ri - rb) > 1e-11 * std::max(1.0, std::abs(rb))) {
        if (ri < rb) best = i;
        decided = true;
      }
      for (int c = vars; c < width - 1 && !decided; ++c) {
        ri = get(i, c) / a;
        rb = get(best, c) / ab;
        if (std::abs(ri - rb) > 1e-11 * std::max(1.0, std::abs(rb))) {
          if (ri < rb) best = i;
          decided = true;
        }
      }
      // full tie across all columns cannot happen with independent rows
    }
    return best;
  }

  int pivot(int pcol) {
    const int prow = ratio_row(pcol);
    if (prow < 0) return -1;
    double* pr = &t[static_cast<std::size_t>(prow) * width];
    const double inv = 1.0 / pr[pcol];
    for (int c = 0; c < width; ++c) pr[c] *= inv;
    pr[pcol] = 1.0;
    for (int r = 0; r < rows; ++r) {
      if (r == prow) continue;
      double* row = &t[static_cast<std::size_t>(r) * width];
      const double f = row[pcol];
      if (f == 0.0) continue;
      for (int c = 0; c < width; ++c) row[c] -= f * pr[c];
      row[pcol] = 0.0;
    }
    const int leaving = basis[prow];
    basis[prow] = pcol;
    return leaving;
  }

  std::vector<double> structural_solution() const {
    std::vector<double> v(static_cast<std::size_t>(vars), 0.0);
    for (int i = 0; i < rows; ++i)
      if (basis[i] < vars) v[basis[i]] = std::max(0.0, get(i, width - 1));
    return v;
  }
};

}  // namespace

EquilibriumRecord lemke_howson(const BimatrixGame& game, int initial_label,
                               const SolverLimits& limits) {
  const int n = game.rows(), m = game.cols();
  if (initial_label < 0 || initial_label >= n + m)
    throw std::invalid_argument("initial_label out of range [0, " + std::to_string(n + m) + ")");

  const double shift_a = std::max(0.0, 1.0 - game.payoff_a.min_entry());
  const double shift_b = std::max(0.0, 1.0 - game.payoff_b.min_entry());

  // X-system: m rows, n structural vars (x); Y-system: n rows, m vars (y).
  LhTableau xs, ys;
  xs.init(m, n);
  ys.init(n, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) xs.at(j, i) = game.payoff_b(i, j) + shift_b;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) ys.at(i, j) = game.payoff_a(i, j) + shift_a;

  // Variable labels: X-system structural x_i -> i, slack r_j -> n+j.
  //                  Y-system structural y_j -> n+j, slack s_i -> i.
  auto x_label = [&](int var) { return var < n ? var : n + (var - n); };
  auto y_label = [&](int var) { return var < m ? n + var : var - m; };

  bool in_x = initial_label < n;
  int entering = in_x ? initial_label : initial_label - n;

  long long pivots = 0;
  while (true) {
    if ((pivots & 0xff) == 0) check_deadline(limits, "lemke_howson");
    LhTableau& tab = in_x ? xs : ys;
    const int leaving = tab.pivot(entering);
    if (leaving < 0)
      throw std::runtime_error("lemke_howson: no pivot row for entering variable " +
                               std::to_string(entering) + " (unbounded ray)");
    if (leaving == entering)
      throw std::runtime_error("lemke_howson: cycling detected despite lexicographic rule");
    if (++pivots > limits.pivot_limit)
      throw std::runtime_error("lemke_howson: pivot limit " + std::to_string(limits.pivot_limit) +
                               " exceeded");
    const int label = in_x ? x_label(leaving) : y_label(leaving);
    if (label == initial_label) break;
    if (in_x) {
      // twin of x_i is s_i (label i); twin of r_j is y_j (label n+j)
      entering = leaving < n ? m + leaving : leaving - n;
    } else {
      // twin of y_j is r_j; twin of s_i is x_i
      entering = leaving < m ? n + leaving : leaving - m;
    }
    in_x = !in_x;
  }

  std::vector<double> xv = xs.structural_solution();
  std::vector<double> yv = ys.structural_solution();
  double sx = 0.0, sy = 0.0;
  for (double v : xv) sx += v;
  for (double v : yv) sy += v;
  if (!(sx > 0.0) || !(sy > 0.0))
    throw std::runtime_error("lemke_howson: terminated at the artificial origin");
  for (double& v : xv) v /= sx;
  for (double& v : yv) v /= sy;

  EquilibriumRecord rec = make_record(game, MixedStrategy(std::move(xv)),
                                      MixedStrategy(std::move(yv)));
  if (rec.regret_row > kSolverTol || rec.regret_col > kSolverTol)
    throw std::runtime_error("lemke_howson: failed regret check (row=" +
                             fmt_double(rec.regret_row) + ", col=" + fmt_double(rec.regret_col) +
                             ", pivots=" + std::to_string(pivots) + ")");
  return rec;
}

// ---------------------------------------------------------------------------
// Support enumeration.
// ---------------------------------------------------------------------------

namespace {

enum class GaussOutcome { kUnique, kSingular, kInconsistent, kUnderdetermined };

// Row-reduces an eqs x (unknowns+1) augmented system in place and classifies
// it; on kUnique fills sol.
GaussOutcome gauss_solve(std::vector<std::vector<double>>& aug, int unknowns,
                         std::vector<double>& sol) {
  const int eqs = static_cast<int>(aug.size());
  double scale = 0.0;
  for (const auto& row : aug)
    for (int c = 0; c < unknowns; ++c) scale = std::max(scale, std::abs(row[c]));
  const double tol = 1e-10 * std::max(1.0, scale);

  std::vector<int> pivot_col_of_row(eqs, -1);
  int rank = 0;
  for (int col = 0; col < unknowns && rank < eqs; ++col) {
    int prow = -1;
    double best = tol;
    for (int r = rank; r < eqs; ++r)
      if (std::abs(aug[r][col]) > best) {
        best = std::abs(aug[r][col]);
        prow = r;
      }
    if (prow < 0) continue;
    std::swap(aug[rank], aug[prow]);
    const double inv = 1.0 / aug[rank][col];
    for (int c = col; c <= unknowns; ++c) aug[rank][c] *= inv;
    for (int r = 0; r < eqs; ++r) {
      if (r == rank) continue;
      const double f = aug[r][col];
      if (f == 0.0) continue;
      for (int c = col; c <= unknowns; ++c) aug[r][c] -= f * aug[rank][c];
    }
    pivot_col_of_row[rank] = col;
    ++rank;
  }
  for (int r = rank; r < eqs; ++r)
    if (std::abs(aug[r][unknowns]) > 1e-8 * std::max(1.0, scale)) return GaussOutcome::kInconsistent;
  if (rank < unknowns)
    return eqs >= unknowns ? GaussOutcome::kSingular : GaussOutcome::kUnderdetermined;
  sol.assign(static_cast<std::size_t>(unknowns), 0.0);
  for (int r = 0; r < rank; ++r) sol[pivot_col_of_row[r]] = aug[r][unknowns];
  return GaussOutcome::kUnique;
}

// Indifference system for the column player's strategy y on supports (S, T):
// rows of S are mutually indifferent on A restricted to T, and y sums to 1.
GaussOutcome solve_indifference_y(const BimatrixGame& g, const std::vector<int>& s,
                                  const std::vector<int>& t, std::vector<double>& y) {
  const int k = static_cast<int>(t.size());
  std::vector<std::vector<double>> aug;
  aug.reserve(s.size());
  for (std::size_t i = 1; i < s.size(); ++i) {
    std::vector<double> row(static_cast<std::size_t>(k) + 1, 0.0);
    for (int c = 0; c < k; ++c) row[c] = g.payoff_a(s[i], t[c]) - g.payoff_a(s[0], t[c]);
    aug.push_back(std::move(row));
  }
  std::vector<double> sum_row(static_cast<std::size_t>(k) + 1, 1.0);
  aug.push_back(std::move(sum_row));
  return gauss_solve(aug, k, y);
}

GaussOutcome solve_indifference_x(const BimatrixGame& g, const std::vector<int>& s,
                                  const std::vector<int>& t, std::vector<double>& x) {
  const int k = static_cast<int>(s.size());
  std::vector<std::vector<double>> aug;
  aug.reserve(t.size());
  for (std::size_t j = 1; j < t.size(); ++j) {
    std::vector<double> row(static_cast<std::size_t>(k) + 1, 0.0);
    for (int r = 0; r < k; ++r) row[r] = g.payoff_b(s[r], t[j]) - g.payoff_b(s[r], t[0]);
    aug.push_back(std::move(row));
  }
  std::vector<double> sum_row(static_cast<std::size_t>(k) + 1, 1.0);
  aug.push_back(std::move(sum_row));
  return gauss_solve(aug, k, x);
}

bool embed_distribution(const std::vector<double>& vals, const std::vector<int>& idx, int n,
                        std::vector<double>& out) {
  out.assign(static_cast<std::size_t>(n), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (vals[i] < -1e-9) return false;
    const double v = std::max(0.0, vals[i]);
    out[idx[i]] = v;
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-7) return false;
  for (double& v : out) v /= sum;
  return true;
}

bool same_support(const std::vector<int>& support, const std::vector<int>& want) {
  return support == want;
}

template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

SolverReport support_enumeration(const BimatrixGame& game, int max_support, bool include_unequal,
                                 const SolverLimits& limits) {
  const int n = game.rows(), m = game.cols();
  if (max_support < 1 || max_support > std::min(n, m))
    throw std::invalid_argument("max_support must be in [1, min(n, m)]");

  SolverReport report;
  report.method = include_unequal ? "support-enum-all" : "support-enum";

  auto consider = [&](const std::vector<int>& s, const std::vector<int>& t) {
    ++report.examined;
    if ((report.examined & 0x3ff) == 0) check_deadline(limits, "support_enumeration");
    std::vector<double> ysol, xsol;
    const GaussOutcome oy = solve_indifference_y(game, s, t, ysol);
    const GaussOutcome ox = solve_indifference_x(game, s, t, xsol);
    const bool equal_sizes = s.size() == t.size();
    if (oy == GaussOutcome::kInconsistent || ox == GaussOutcome::kInconsistent) return;
    if (oy != GaussOutcome::kUnique || ox != GaussOutcome::kUnique) {
      // singular (equal sizes) or a consistent continuum (unequal sizes);
      // either way the probability-1 nondegeneracy assumption is violated
      ++report.skipped_singular;
      if (!equal_sizes) ++report.skipped_singular_unequal;
      report.degenerate = true;
      if (report.skipped.size() < 64) report.skipped.push_back({s, t});
      return;
    }
    std::vector<double> xfull, yfull;
    if (!embed_distribution(xsol, s, n, xfull) || !embed_distribution(ysol, t, m, yfull)) return;
    MixedStrategy x(std::move(xfull));
    MixedStrategy y(std::move(yfull));
    auto [rr, rc] = regrets(game, x, y);
    if (rr > kSolverTol || rc > kSolverTol) return;
    if (!equal_sizes) {
      // only counts if the solution really sits on this asymmetric support
      if (!same_support(x.support(), s) || !same_support(y.support(), t)) return;
      ++report.unequal_support_found;
    }
    for (const auto& e : report.equilibria) {
      if (linf_dist(e.x.weights(), x.weights()) <= kDedupTol &&
          linf_dist(e.y.weights(), y.weights()) <= kDedupTol)
        return;
    }
    report.equilibria.push_back(make_record(game, std::move(x), std::move(y)));
  };

  for (int ks = 1; ks <= max_support; ++ks) {
    const int kt_lo = include_unequal ? 1 : ks;
    const int kt_hi = include_unequal ? std::min(m, max_support) : ks;
    for (int kt = kt_lo; kt <= kt_hi; ++kt) {
      if (ks > n || kt > m) continue;
      for_each_subset(n, ks, [&](const std::vector<int>& s) {
        for_each_subset(m, kt, [&](const std::vector<int>& t) { consider(s, t); });
      });
    }
  }
  return report;
}

std::vector<std::pair<int, int>> pure_equilibria(const BimatrixGame& game) {
  const int n = game.rows(), m = game.cols();
  std::vector<double> col_max(static_cast<std::size_t>(m), -std::numeric_limits<double>::infinity());
  std::vector<double> row_max(static_cast<std::size_t>(n), -std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      col_max[j] = std::max(col_max[j], game.payoff_a(i, j));
      row_max[i] = std::max(row_max[i], game.payoff_b(i, j));
    }
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      if (game.payoff_a(i, j) == col_max[j] && game.payoff_b(i, j) == row_max[i])
        out.emplace_back(i, j);
  return out;
}

bool only_support_sizes_equal_check(const BimatrixGame& game, bool* degenerate) {
  SolverReport report =
      support_enumeration(game, std::min(game.rows(), game.cols()), /*include_unequal=*/true);
  if (degenerate) *degenerate = report.degenerate;
  // a consistent singular system on an unequal pair could hide equilibria,
  // so it counts against the check; equal-size singularities do not
  return report.unequal_support_found == 0 && report.skipped_singular_unequal == 0;
}

}  // namespace nashlab
