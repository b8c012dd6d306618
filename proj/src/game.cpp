#include "nashlab/game.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nashlab/stats.hpp"

namespace nashlab {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

void check_dims(const BimatrixGame& game, const MixedStrategy& x, const MixedStrategy& y) {
  require(x.size() == game.rows() && y.size() == game.cols(),
          "strategy dimensions (" + std::to_string(x.size()) + ", " + std::to_string(y.size()) +
              ") do not match game (" + std::to_string(game.rows()) + " x " +
              std::to_string(game.cols()) + ")");
}

}  // namespace

BimatrixGame::BimatrixGame(Matrix a, Matrix b) : payoff_a(std::move(a)), payoff_b(std::move(b)) {
  require(payoff_a.same_shape(payoff_b), "payoff matrices must have identical dimensions");
  require(payoff_a.rows > 0 && payoff_a.cols > 0, "game must have at least one row and column");
  for (double v : payoff_a.data) require(std::isfinite(v), "payoff_a has a non-finite entry");
  for (double v : payoff_b.data) require(std::isfinite(v), "payoff_b has a non-finite entry");
}

MixedStrategy::MixedStrategy(std::vector<double> weights, double support_tol)
    : weights_(std::move(weights)), support_tol_(support_tol) {
  require(!weights_.empty(), "strategy must have at least one coordinate");
  double sum = 0.0;
  for (double& w : weights_) {
    require(std::isfinite(w), "strategy has a non-finite weight");
    require(w > -1e-9, "strategy has a negative weight below tolerance");
    if (w < 0.0) w = 0.0;
    sum += w;
  }
  require(std::abs(sum - 1.0) < 1e-9,
          "strategy weights sum to " + std::to_string(sum) + ", not 1");
  for (double& w : weights_) w /= sum;
  for (int i = 0; i < static_cast<int>(weights_.size()); ++i)
    if (weights_[i] > support_tol_) support_.push_back(i);
}

MixedStrategy MixedStrategy::one_hot(int n, int index, double support_tol) {
  std::vector<double> w(static_cast<std::size_t>(n), 0.0);
  w[index] = 1.0;
  return MixedStrategy(std::move(w), support_tol);
}

MixedStrategy MixedStrategy::uniform(int n, double support_tol) {
  std::vector<double> w(static_cast<std::size_t>(n), 1.0 / n);
  return MixedStrategy(std::move(w), support_tol);
}

double MixedStrategy::l2() const { return l2_norm(weights_); }

std::pair<double, double> payoff(const BimatrixGame& game, const MixedStrategy& x,
                                 const MixedStrategy& y) {
  check_dims(game, x, y);
  return {bilinear(x.weights(), game.payoff_a, y.weights()),
          bilinear(x.weights(), game.payoff_b, y.weights())};
}

std::pair<double, double> regrets(const BimatrixGame& game, const MixedStrategy& x,
                                  const MixedStrategy& y) {
  check_dims(game, x, y);
  std::vector<double> ay = game.payoff_a.mul_vec(y.weights());
  std::vector<double> xb = game.payoff_b.vec_mul(x.weights());
  double best_row = ay[0];
  for (double v : ay) best_row = std::max(best_row, v);
  double best_col = xb[0];
  for (double v : xb) best_col = std::max(best_col, v);
  double xay = 0.0;
  for (int i = 0; i < game.rows(); ++i) xay += x[i] * ay[i];
  double xby = 0.0;
  for (int j = 0; j < game.cols(); ++j) xby += xb[j] * y[j];
  return {best_row - xay, best_col - xby};
}

bool is_epsilon_equilibrium(const BimatrixGame& game, const MixedStrategy& x,
                            const MixedStrategy& y, double eps) {
  require(eps >= 0.0, "eps must be nonnegative");
  auto [r, c] = regrets(game, x, y);
  const double slack = 1e-9;
  return r <= eps + slack && c <= eps + slack;
}

EquilibriumRecord make_record(const BimatrixGame& game, MixedStrategy x, MixedStrategy y) {
  EquilibriumRecord rec;
  auto [r, c] = regrets(game, x, y);
  rec.regret_row = r;
  rec.regret_col = c;
  rec.support_sizes = {static_cast<int>(x.support().size()),
                       static_cast<int>(y.support().size())};
  rec.l2_norms = {x.l2(), y.l2()};
  rec.x = std::move(x);
  rec.y = std::move(y);
  return rec;
}

RestrictedGame restrict(const BimatrixGame& game, const std::vector<int>& row_set,
                        const std::vector<int>& col_set) {
  require(!row_set.empty() && !col_set.empty(), "restriction sets must be nonempty");
  for (int r : row_set) require(r >= 0 && r < game.rows(), "row index out of range");
  for (int c : col_set) require(c >= 0 && c < game.cols(), "column index out of range");
  int nr = static_cast<int>(row_set.size());
  int nc = static_cast<int>(col_set.size());
  Matrix a(nr, nc), b(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) {
      a(i, j) = game.payoff_a(row_set[i], col_set[j]);
      b(i, j) = game.payoff_b(row_set[i], col_set[j]);
    }
  return RestrictedGame{BimatrixGame(std::move(a), std::move(b)), row_set, col_set};
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

BimatrixGame load_game(std::istream& in) {
  int n = 0, m = 0;
  if (!(in >> n >> m) || n <= 0 || m <= 0)
    throw std::invalid_argument("game file: expected positive dimensions on line 1");
  Matrix a(n, m), b(n, m);
  for (Matrix* mat : {&a, &b})
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < m; ++c)
        if (!(in >> (*mat)(r, c)))
          throw std::invalid_argument("game file: truncated payoff data");
  return BimatrixGame(std::move(a), std::move(b));
}

BimatrixGame load_game_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open game file: " + path);
  return load_game(in);
}

void save_game(std::ostream& out, const BimatrixGame& game) {
  out << game.rows() << ' ' << game.cols() << '\n';
  for (const Matrix* mat : {&game.payoff_a, &game.payoff_b})
    for (int r = 0; r < mat->rows; ++r) {
      for (int c = 0; c < mat->cols; ++c) {
        if (c) out << ' ';
        out << fmt_double((*mat)(r, c));
      }
      out << '\n';
    }
}

void save_game_file(const std::string& path, const BimatrixGame& game) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write game file: " + path);
  save_game(out, game);
}

MixedStrategy load_strategy_line(const std::string& line, double support_tol) {
  std::istringstream in(line);
  std::vector<double> w;
  double v;
  while (in >> v) w.push_back(v);
  if (w.empty()) throw std::invalid_argument("strategy line has no numbers");
  return MixedStrategy(std::move(w), support_tol);
}

}  // namespace nashlab
