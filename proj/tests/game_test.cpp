#include <cmath>
#include <sstream>

#include "doctest.h"
#include "nashlab/game.hpp"
#include "nashlab/rng.hpp"

using namespace nashlab;

namespace {

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

BimatrixGame matching_pennies() { return {mat2(1, -1, -1, 1), mat2(-1, 1, 1, -1)}; }

MixedStrategy strat(std::vector<double> w) { return MixedStrategy(std::move(w)); }

BimatrixGame random_game(int n, int m, std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(n, m), b(n, m);
  for (double& v : a.data) v = rng.uniform_sym(1.0);
  for (double& v : b.data) v = rng.uniform_sym(1.0);
  return {std::move(a), std::move(b)};
}

MixedStrategy random_strategy(int n, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> w(n);
  double s = 0;
  for (double& v : w) {
    v = rng.u01() + 1e-3;
    s += v;
  }
  for (double& v : w) v /= s;
  return strat(std::move(w));
}

// oracle: best pure deviation payoffs by direct enumeration
std::pair<double, double> regrets_oracle(const BimatrixGame& g, const MixedStrategy& x,
                                         const MixedStrategy& y) {
  double xay = 0, xby = 0;
  for (int i = 0; i < g.rows(); ++i)
    for (int j = 0; j < g.cols(); ++j) {
      xay += x[i] * g.payoff_a(i, j) * y[j];
      xby += x[i] * g.payoff_b(i, j) * y[j];
    }
  double best_row = -1e300, best_col = -1e300;
  for (int i = 0; i < g.rows(); ++i) {
    double v = 0;
    for (int j = 0; j < g.cols(); ++j) v += g.payoff_a(i, j) * y[j];
    best_row = std::max(best_row, v);
  }
  for (int j = 0; j < g.cols(); ++j) {
    double v = 0;
    for (int i = 0; i < g.rows(); ++i) v += x[i] * g.payoff_b(i, j);
    best_col = std::max(best_col, v);
  }
  return {best_row - xay, best_col - xby};
}

}  // namespace

TEST_SUITE("game") {

TEST_CASE("payoff basics") {
  BimatrixGame zero{Matrix(2, 2), Matrix(2, 2)};
  auto [pa, pb] = payoff(zero, strat({0.3, 0.7}), strat({0.9, 0.1}));
  CHECK(pa == 0.0);
  CHECK(pb == 0.0);

  BimatrixGame ident{mat2(1, 0, 0, 1), mat2(1, 0, 0, 1)};
  CHECK(payoff(ident, strat({1, 0}), strat({1, 0})).first == 1.0);

  BimatrixGame pm{mat2(1, -1, -1, 1), mat2(1, -1, -1, 1)};
  CHECK(payoff(pm, strat({0.5, 0.5}), strat({0.5, 0.5})).first ==
        doctest::Approx(0).epsilon(1e-15));
}

TEST_CASE("payoff rejects dimension mismatch") {
  BimatrixGame g{Matrix(2, 3), Matrix(2, 3)};
  CHECK_THROWS_AS(payoff(g, strat({1, 0}), strat({1, 0})), std::invalid_argument);
  CHECK_THROWS_AS(regrets(g, strat({0.5, 0.5}), strat({1, 0})), std::invalid_argument);
}

TEST_CASE("regrets at the matching pennies minimax point") {
  auto [r, c] = regrets(matching_pennies(), strat({0.5, 0.5}), strat({0.5, 0.5}));
  CHECK(r == doctest::Approx(0).epsilon(1e-14));
  CHECK(c == doctest::Approx(0).epsilon(1e-14));
}

TEST_CASE("regrets against pure mismatched play") {
  // row player holds heads while column shows tails: deviating gains 2
  auto g = matching_pennies();
  auto x = strat({1, 0});
  auto y = strat({0, 1});
  auto [r, c] = regrets(g, x, y);
  auto [ro, co] = regrets_oracle(g, x, y);
  CHECK(r == doctest::Approx(ro));
  CHECK(c == doctest::Approx(co));
  CHECK(r == doctest::Approx(2.0));
}

TEST_CASE("regrets match the enumeration oracle on random games") {
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_game(4, 6, 100 + trial);
    auto x = random_strategy(4, 200 + trial);
    auto y = random_strategy(6, 300 + trial);
    auto [r, c] = regrets(g, x, y);
    auto [ro, co] = regrets_oracle(g, x, y);
    CHECK(r == doctest::Approx(ro).epsilon(1e-12));
    CHECK(c == doctest::Approx(co).epsilon(1e-12));
    CHECK(r >= -1e-12);
    CHECK(c >= -1e-12);
  }
}

TEST_CASE("epsilon equilibrium thresholds") {
  auto g = matching_pennies();
  CHECK(is_epsilon_equilibrium(g, strat({0.5, 0.5}), strat({0.5, 0.5}), 0.0));
  CHECK_FALSE(is_epsilon_equilibrium(g, strat({1, 0}), strat({0, 1}), 1.0));
  CHECK(is_epsilon_equilibrium(g, strat({1, 0}), strat({0, 1}), 2.0));
  CHECK_THROWS_AS(is_epsilon_equilibrium(g, strat({1, 0}), strat({0, 1}), -0.5),
                  std::invalid_argument);
}

TEST_CASE("epsilon equilibrium is monotone in eps") {
  for (int trial = 0; trial < 30; ++trial) {
    auto g = random_game(3, 3, 400 + trial);
    auto x = random_strategy(3, 500 + trial);
    auto y = random_strategy(3, 600 + trial);
    for (double eps : {0.0, 0.1, 0.5, 1.0, 2.0}) {
      if (is_epsilon_equilibrium(g, x, y, eps)) {
        CHECK(is_epsilon_equilibrium(g, x, y, eps * 2 + 0.1));
      }
    }
  }
}

TEST_CASE("payoff is bilinear in x") {
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_game(5, 5, 700 + trial);
    auto x1 = random_strategy(5, 800 + trial);
    auto x2 = random_strategy(5, 900 + trial);
    auto y = random_strategy(5, 1000 + trial);
    const double alpha = 0.37;
    std::vector<double> mix(5);
    for (int i = 0; i < 5; ++i) mix[i] = alpha * x1[i] + (1 - alpha) * x2[i];
    auto [pa, pb] = payoff(g, strat(mix), y);
    auto [p1a, p1b] = payoff(g, x1, y);
    auto [p2a, p2b] = payoff(g, x2, y);
    CHECK(pa == doctest::Approx(alpha * p1a + (1 - alpha) * p2a).epsilon(1e-10));
    CHECK(pb == doctest::Approx(alpha * p1b + (1 - alpha) * p2b).epsilon(1e-10));
  }
}

TEST_CASE("restrict basics") {
  auto g = random_game(4, 5, 42);
  SUBCASE("full restriction is the identity") {
    auto r = restrict(g, {0, 1, 2, 3}, {0, 1, 2, 3, 4});
    CHECK(r.game.payoff_a.data == g.payoff_a.data);
    CHECK(r.game.payoff_b.data == g.payoff_b.data);
  }
  SUBCASE("singleton restriction is a direct lookup") {
    auto r = restrict(g, {0}, {1});
    CHECK(r.game.rows() == 1);
    CHECK(r.game.payoff_a(0, 0) == g.payoff_a(0, 1));
    CHECK(r.game.payoff_b(0, 0) == g.payoff_b(0, 1));
  }
  SUBCASE("restriction preserves entries exactly") {
    std::vector<int> rows{1, 3}, cols{0, 2, 4};
    auto r = restrict(g, rows, cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        CHECK(r.game.payoff_a(static_cast<int>(i), static_cast<int>(j)) ==
              g.payoff_a(rows[i], cols[j]));
  }
  SUBCASE("restricting twice composes") {
    auto once = restrict(restrict(g, {0, 1, 3}, {1, 2, 4}).game, {0, 2}, {1, 2});
    auto composed = restrict(g, {0, 3}, {2, 4});
    CHECK(once.game.payoff_a.data == composed.game.payoff_a.data);
  }
  SUBCASE("empty restriction rejected") {
    CHECK_THROWS_AS(restrict(g, {}, {0}), std::invalid_argument);
  }
}

TEST_CASE("strategy construction rules") {
  // drift below 1e-9 renormalizes
  auto s = strat({0.5, 0.5 + 5e-10});
  CHECK(s[0] + s[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(strat({0.5, 0.4}), std::invalid_argument);
  // tiny negative clamps, larger rejected
  auto t = MixedStrategy({1.0 + 1e-10, -1e-10});
  CHECK(t[1] == 0.0);
  CHECK_THROWS_AS(strat({1.0 + 1e-8, -1e-8}), std::invalid_argument);
}

TEST_CASE("support respects the tolerance") {
  MixedStrategy s({0.5, 0.5 - 1e-10, 1e-10}, 1e-9);
  CHECK(s.support() == std::vector<int>{0, 1});
  MixedStrategy loose({0.5, 0.5 - 1e-10, 1e-10}, 1e-12);
  CHECK(loose.support().size() == 3);
}

TEST_CASE("game file round trip is bit exact") {
  auto g = random_game(3, 4, 777);
  std::stringstream ss;
  save_game(ss, g);
  auto back = load_game(ss);
  CHECK(back.payoff_a.data == g.payoff_a.data);
  CHECK(back.payoff_b.data == g.payoff_b.data);
}

TEST_CASE("game file error paths") {
  std::stringstream empty("");
  CHECK_THROWS(load_game(empty));
  std::stringstream truncated("2 2\n1 2\n3 4\n5 6\n");
  CHECK_THROWS(load_game(truncated));
}

TEST_CASE("strategy line parsing") {
  auto s = load_strategy_line("0.25 0.25 0.5");
  CHECK(s.size() == 3);
  CHECK(s[2] == 0.5);
  CHECK_THROWS(load_strategy_line(""));
}

}  // TEST_SUITE
