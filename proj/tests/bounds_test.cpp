#include <cmath>

#include "doctest.h"
#include "nashlab/bounds.hpp"
#include "nashlab/rng.hpp"

using namespace nashlab;

TEST_SUITE("bounds") {

TEST_CASE("erdos: unit coefficients at k=1 hold with equality") {
  std::vector<double> a{1, 1, 1};
  auto chk = erdos_dominance_check(a, 1);
  CHECK(chk.holds);
  CHECK(chk.lhs_count == 4);  // sum >= 0 over 8 patterns
  CHECK(chk.rhs_count == 4);  // sum >= 1 over 8 patterns
}

TEST_CASE("erdos: a=(5,1), k=2") {
  std::vector<double> a{5, 1};
  auto chk = erdos_dominance_check(a, 2);
  CHECK(chk.holds);
  CHECK(chk.lhs == doctest::Approx(0.5));
  CHECK(chk.rhs == doctest::Approx(0.25));
}

TEST_CASE("erdos: k beyond n makes the right side vanish") {
  std::vector<double> a{2, 3, 1.5};
  auto chk = erdos_dominance_check(a, 7);
  CHECK(chk.rhs_count == 0);
  CHECK(chk.holds);
}

TEST_CASE("erdos: input validation") {
  CHECK_THROWS(erdos_dominance_check(std::vector<double>{0.5, 1.0}, 1));
  CHECK_THROWS(erdos_dominance_check(std::vector<double>(21, 1.0), 1));
  CHECK_THROWS(erdos_dominance_check(std::vector<double>{1.0}, 0));
}

TEST_CASE("erdos: holds on random instances") {
  Rng rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(14));
    const int k = 1 + static_cast<int>(rng.below(n));
    std::vector<double> a(n);
    for (double& v : a) v = 1.0 + rng.u01() * 9.0;
    CHECK(erdos_dominance_check(a, k).holds);
  }
}

TEST_CASE("binom tail: n=100, k=10 against the frozen exact oracle") {
  // frozen from an exact big-rational evaluation of sum C(100,i), i=55..100
  auto c = binom_tail_case(100, 10);
  CHECK(c.half_index == 55);
  CHECK_FALSE(c.rounded);
  CHECK(std::exp(c.log_lhs) == doctest::Approx(0.18410080866334813).epsilon(1e-12));
  CHECK(c.log_rhs == doctest::Approx(-10.0 - std::log(1e4)).epsilon(1e-12));
  CHECK(c.holds);
}

TEST_CASE("binom tail: k=0 is dominated by one half") {
  for (long n : {2L, 31L, 100L}) {
    auto c = binom_tail_case(n, 0);
    CHECK(std::exp(c.log_lhs) >= 0.5);
    CHECK(c.holds);
  }
}

TEST_CASE("binom tail: k=n compares 2^-n against the exponential") {
  for (long n : {1L, 5L, 20L, 64L}) {
    auto c = binom_tail_case(n, n);
    CHECK(c.log_lhs == doctest::Approx(-static_cast<double>(n) * std::log(2.0)).epsilon(1e-12));
    CHECK(c.holds);
  }
}

TEST_CASE("binom tail: odd parity is rounded and recorded") {
  auto c = binom_tail_case(10, 3);  // (n+k)/2 = 6.5 -> 7
  CHECK(c.rounded);
  CHECK(c.half_index == 7);
}

TEST_CASE("binom tail: full range slice holds") {
  auto rep = binom_tail_check_range(30, 200);
  CHECK(rep.all_hold());
  CHECK(rep.checked > 0);
}

TEST_CASE("binom tail: explicit lists use the cartesian product") {
  std::vector<long> ns{40, 60};
  std::vector<long> ks{0, 10, 100};
  auto rep = binom_tail_lower_bound_check(ns, ks);
  CHECK(rep.checked == 4);  // k=100 filtered out
  CHECK(rep.all_hold());
}

TEST_CASE("entropy: k=0 edge case uses H(0)=0") {
  for (long n : {1L, 10L, 1000L}) {
    auto c = entropy_binom_check(n, 0);
    CHECK(c.log2_lhs == 0.0);
    CHECK(c.log2_rhs == doctest::Approx(-0.5 * std::log2(8.0 * n)).epsilon(1e-12));
    CHECK(c.holds);
  }
}

TEST_CASE("entropy: central coefficient at n=100") {
  auto c = entropy_binom_check(100, 50);
  CHECK(c.holds);
  CHECK(c.log2_lhs > c.log2_rhs);
  CHECK(c.log2_lhs < 100.0);  // C(100,50) < 2^100
}

TEST_CASE("entropy: all k at n=10") {
  auto checks = entropy_checks_for_n(10);
  CHECK(checks.size() == 11);
  for (const auto& c : checks) CHECK(c.holds);
}

TEST_CASE("entropy: range slice holds everywhere") {
  auto rep = entropy_binom_check_range(300);
  CHECK(rep.all_hold());
  CHECK(rep.checked == 300 * 301 / 2 + 300);
}

TEST_CASE("per-n helpers agree with the point queries") {
  auto cases = binom_tail_cases_for_n(41);
  for (const auto& c : cases) {
    auto single = binom_tail_case(41, c.k);
    CHECK(single.log_lhs == c.log_lhs);
    CHECK(single.holds == c.holds);
  }
}

}  // TEST_SUITE
