#include "nashlab/bounds.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <stdexcept>

namespace nashlab {

ErdosCheck erdos_dominance_check(std::span<const double> a, int k) {
  const int n = static_cast<int>(a.size());
  if (n < 1 || n > 20)
    throw std::invalid_argument("erdos check enumerates 2^n patterns; need 1 <= n <= 20");
  if (k < 1) throw std::invalid_argument("erdos check needs integer k >= 1");
  for (double v : a)
    if (!(v >= 1.0)) throw std::invalid_argument("erdos check requires every a_i >= 1");

  ErdosCheck out;
  out.patterns = 1ull << n;
  const double lhs_threshold = static_cast<double>(k - 1);
  for (std::uint64_t mask = 0; mask < out.patterns; ++mask) {
    double weighted = 0.0;
    int plus = 0;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i) & 1u) {
        weighted += a[i];
        ++plus;
      } else {
        weighted -= a[i];
      }
    }
    if (weighted >= lhs_threshold) ++out.lhs_count;
    if (2 * plus - n >= k) ++out.rhs_count;
  }
  out.lhs = static_cast<double>(out.lhs_count) / static_cast<double>(out.patterns);
  out.rhs = static_cast<double>(out.rhs_count) / static_cast<double>(out.patterns);
  out.holds = out.lhs_count >= out.rhs_count;
  return out;
}

// ---------------------------------------------------------------------------
// Binomial helpers. Rows of C(n, .) are built with exact integer updates
// C(n,i+1) = C(n,i)(n-i)/(i+1); the caller-facing comparisons read the exact
// integers through log space (53-bit mantissa + exponent), escalating to
// 256-bit MPFR when the margin dips below 1e-6.
// ---------------------------------------------------------------------------

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kEscalateMargin = 1e-6;

double mpz_ln(const mpz_t z) {
  long exp2 = 0;
  const double d = mpz_get_d_2exp(&exp2, z);
  return std::log(d) + static_cast<double>(exp2) * kLn2;
}

// Fills table[i] = C(n, i) for i = 0..n. table must hold n+1 initialized mpz.
void binomial_row(long n, mpz_t* table) {
  mpz_set_ui(table[0], 1);
  for (long i = 0; i < n; ++i) {
    mpz_mul_ui(table[i + 1], table[i], static_cast<unsigned long>(n - i));
    mpz_divexact_ui(table[i + 1], table[i + 1], static_cast<unsigned long>(i + 1));
  }
}

// Rigorous comparison 10^4 * tail_sum >= 2^n * exp(-10 k^2 / n) at 256 bits.
bool mpfr_tail_holds(const mpz_t tail_sum, long n, long k) {
  mpfr_t lhs, rhs, expo;
  mpfr_inits2(256, lhs, rhs, expo, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_z(lhs, tail_sum, MPFR_RNDN);
  mpfr_mul_ui(lhs, lhs, 10000, MPFR_RNDN);
  mpfr_set_si(expo, -10 * k, MPFR_RNDN);
  mpfr_mul_si(expo, expo, k, MPFR_RNDN);
  mpfr_div_si(expo, expo, n, MPFR_RNDN);
  mpfr_exp(rhs, expo, MPFR_RNDN);
  mpfr_mul_2si(rhs, rhs, n, MPFR_RNDN);
  const bool holds = mpfr_cmp(lhs, rhs) >= 0;
  mpfr_clears(lhs, rhs, expo, static_cast<mpfr_ptr>(nullptr));
  return holds;
}

// Binomial row plus suffix sums suffix[j] = sum_{i=j..n} C(n, i), so each
// tail case reads one exact big integer in O(1).
struct TailTable {
  long n;
  std::vector<mpz_t> cells;   // C(n, i)
  std::vector<mpz_t> suffix;  // indices 0..n+1, suffix[n+1] = 0

  explicit TailTable(long n_in)
      : n(n_in),
        cells(static_cast<std::size_t>(n_in + 1)),
        suffix(static_cast<std::size_t>(n_in + 2)) {
    for (auto& c : cells) mpz_init(c);
    for (auto& c : suffix) mpz_init(c);
    binomial_row(n, cells.data());
    for (long j = n; j >= 0; --j) mpz_add(suffix[j], suffix[j + 1], cells[j]);
  }
  ~TailTable() {
    for (auto& c : cells) mpz_clear(c);
    for (auto& c : suffix) mpz_clear(c);
  }
  TailTable(const TailTable&) = delete;
  TailTable& operator=(const TailTable&) = delete;

  BinomTailCase check(long k) const {
    BinomTailCase out;
    out.n = n;
    out.k = k;
    out.half_index = (n + k + 1) / 2;  // ceil
    out.rounded = (n + k) % 2 != 0;
    const mpz_t& sum = suffix[out.half_index];
    out.log_lhs = mpz_ln(sum) - static_cast<double>(n) * kLn2;
    out.log_rhs = -10.0 * static_cast<double>(k) * static_cast<double>(k) /
                      static_cast<double>(n) -
                  std::log(1e4);
    const double margin = out.log_lhs - out.log_rhs;
    out.holds = std::abs(margin) < kEscalateMargin ? mpfr_tail_holds(sum, n, k) : margin > 0.0;
    return out;
  }
};

}  // namespace

BinomTailCase binom_tail_case(long n, long k) {
  if (n < 1 || k < 0 || k > n)
    throw std::invalid_argument("binom tail case needs 0 <= k <= n, n >= 1");
  return TailTable(n).check(k);
}

std::vector<BinomTailCase> binom_tail_cases_for_n(long n) {
  if (n < 1) throw std::invalid_argument("binom tail check needs n >= 1");
  TailTable table(n);
  std::vector<BinomTailCase> out;
  out.reserve(static_cast<std::size_t>(n / 2 + 1));
  for (long k = n % 2; k <= n; k += 2) out.push_back(table.check(k));
  return out;
}

BinomTailReport binom_tail_lower_bound_check(std::span<const long> n_values,
                                             std::span<const long> k_values) {
  BinomTailReport report;
  for (long n : n_values) {
    if (n < 1) throw std::invalid_argument("binom tail check needs n >= 1");
    TailTable table(n);
    for (long k : k_values) {
      if (k < 0 || k > n) continue;
      BinomTailCase c = table.check(k);
      ++report.checked;
      if (!c.holds) report.failures.push_back(c);
    }
  }
  return report;
}

BinomTailReport binom_tail_check_range(long n_lo, long n_hi) {
  BinomTailReport report;
  for (long n = n_lo; n <= n_hi; ++n) {
    for (const BinomTailCase& c : binom_tail_cases_for_n(n)) {
      ++report.checked;
      if (!c.holds) report.failures.push_back(c);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Entropy bound.
// ---------------------------------------------------------------------------

namespace {

double n_times_binary_entropy(long n, long k) {
  if (k == 0 || k == n) return 0.0;
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  const double dr = dn - dk;
  return (dk * std::log2(dn / dk)) + (dr * std::log2(dn / dr));
}

bool mpfr_entropy_holds(const mpz_t binom, long n, long k) {
  // log2 C(n,k) >= n H(k/n) - 0.5 log2(8n) at 256-bit precision
  mpfr_t lhs, rhs, p, term;
  mpfr_inits2(256, lhs, rhs, p, term, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_z(lhs, binom, MPFR_RNDN);
  mpfr_log2(lhs, lhs, MPFR_RNDN);
  mpfr_set_ui(rhs, 0, MPFR_RNDN);
  if (k != 0 && k != n) {
    // k*log2(n/k)
    mpfr_set_si(p, n, MPFR_RNDN);
    mpfr_div_si(p, p, k, MPFR_RNDN);
    mpfr_log2(term, p, MPFR_RNDN);
    mpfr_mul_si(term, term, k, MPFR_RNDN);
    mpfr_add(rhs, rhs, term, MPFR_RNDN);
    // (n-k)*log2(n/(n-k))
    mpfr_set_si(p, n, MPFR_RNDN);
    mpfr_div_si(p, p, n - k, MPFR_RNDN);
    mpfr_log2(term, p, MPFR_RNDN);
    mpfr_mul_si(term, term, n - k, MPFR_RNDN);
    mpfr_add(rhs, rhs, term, MPFR_RNDN);
  }
  mpfr_set_si(p, 8 * n, MPFR_RNDN);
  mpfr_log2(term, p, MPFR_RNDN);
  mpfr_div_ui(term, term, 2, MPFR_RNDN);
  mpfr_sub(rhs, rhs, term, MPFR_RNDN);
  const bool holds = mpfr_cmp(lhs, rhs) >= 0;
  mpfr_clears(lhs, rhs, p, term, static_cast<mpfr_ptr>(nullptr));
  return holds;
}

EntropyCheck entropy_from_value(const mpz_t binom, long n, long k) {
  EntropyCheck out;
  long exp2 = 0;
  const double d = mpz_get_d_2exp(&exp2, binom);
  out.log2_lhs = std::log2(d) + static_cast<double>(exp2);
  out.log2_rhs = n_times_binary_entropy(n, k) -
                 0.5 * std::log2(8.0 * static_cast<double>(n));
  const double margin = out.log2_lhs - out.log2_rhs;
  out.holds = std::abs(margin) < kEscalateMargin ? mpfr_entropy_holds(binom, n, k) : margin > 0.0;
  return out;
}

}  // namespace

EntropyCheck entropy_binom_check(long n, long k) {
  if (n < 1 || k < 0 || k > n)
    throw std::invalid_argument("entropy check needs 0 <= k <= n, n >= 1");
  mpz_t binom;
  mpz_init(binom);
  mpz_bin_uiui(binom, static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  EntropyCheck out = entropy_from_value(binom, n, k);
  mpz_clear(binom);
  return out;
}

std::vector<EntropyCheck> entropy_checks_for_n(long n) {
  if (n < 1) throw std::invalid_argument("entropy check needs n >= 1");
  std::vector<EntropyCheck> out;
  out.reserve(static_cast<std::size_t>(n + 1));
  mpz_t binom;
  mpz_init_set_ui(binom, 1);
  for (long k = 0; k <= n; ++k) {
    if (k > 0) {
      mpz_mul_ui(binom, binom, static_cast<unsigned long>(n - k + 1));
      mpz_divexact_ui(binom, binom, static_cast<unsigned long>(k));
    }
    out.push_back(entropy_from_value(binom, n, k));
  }
  mpz_clear(binom);
  return out;
}

EntropyRangeReport entropy_binom_check_range(long n_max) {
  EntropyRangeReport report;
  for (long n = 1; n <= n_max; ++n) {
    long k = 0;
    for (const EntropyCheck& c : entropy_checks_for_n(n)) {
      ++report.checked;
      if (!c.holds) report.failures.emplace_back(n, k);
      ++k;
    }
  }
  return report;
}

}  // namespace nashlab
