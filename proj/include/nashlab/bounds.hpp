#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace nashlab {

// Exact sign-pattern enumeration of
//   Pr[a_1 e_1 + ... + a_n e_n >= k-1]  vs  Pr[e_1 + ... + e_n >= k]
// over Rademacher e. Requires n <= 20 and every a_i >= 1, integer k >= 1.
struct ErdosCheck {
  bool holds = false;
  std::uint64_t lhs_count = 0;
  std::uint64_t rhs_count = 0;
  std::uint64_t patterns = 0;
  double lhs = 0.0;
  double rhs = 0.0;
};

ErdosCheck erdos_dominance_check(std::span<const double> a, int k);

// Exact big-integer evaluation of the centered binomial tail bound
//   2^-n * sum_{i=(n+k)/2..n} C(n,i)  >=  exp(-10 k^2 / n) / 10^4.
// Odd-parity (n, k) use ceil((n+k)/2); `rounded` records that. Comparison is
// done in log space off the exact integer sum, escalating to 256-bit floats
// whenever the margin is small.
struct BinomTailCase {
  long n = 0;
  long k = 0;
  long half_index = 0;  // the i the sum starts from
  bool rounded = false;
  bool holds = false;
  double log_lhs = 0.0;  // natural log of the exact tail probability
  double log_rhs = 0.0;
};

struct BinomTailReport {
  long long checked = 0;
  std::vector<BinomTailCase> failures;
  bool all_hold() const { return failures.empty(); }
};

BinomTailCase binom_tail_case(long n, long k);
// All matching-parity cases for one n off a single suffix-sum table.
std::vector<BinomTailCase> binom_tail_cases_for_n(long n);
// Cartesian product of the two lists, restricted to 0 <= k <= n.
BinomTailReport binom_tail_lower_bound_check(std::span<const long> n_values,
                                             std::span<const long> k_values);
// Every matching-parity (n, k) pair with n in [n_lo, n_hi].
BinomTailReport binom_tail_check_range(long n_lo, long n_hi);

// Exact C(n, k) against 2^{n H(k/n)} / sqrt(8 n), H the binary entropy.
struct EntropyCheck {
  bool holds = false;
  double log2_lhs = 0.0;
  double log2_rhs = 0.0;
};

EntropyCheck entropy_binom_check(long n, long k);
// All k = 0..n for one n, with incremental exact binomials.
std::vector<EntropyCheck> entropy_checks_for_n(long n);

struct EntropyRangeReport {
  long long checked = 0;
  std::vector<std::pair<long, long>> failures;
  bool all_hold() const { return failures.empty(); }
};

// All 0 <= k <= n <= n_max.
EntropyRangeReport entropy_binom_check_range(long n_max);

}  // namespace nashlab
