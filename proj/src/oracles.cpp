#include "compeq/oracles.hpp"

namespace compeq {
namespace {

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

mpz_class zpow(const mpz_class& base, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

mpq_class qpow(const mpq_class& base, unsigned long e) {
  mpq_class r(zpow(base.get_num(), e), zpow(base.get_den(), e));
  r.canonicalize();
  return r;
}

}  // namespace

mpz_class binomial_power_sum(std::size_t n, unsigned m) {
  mpz_class sum = 0;
  for (std::size_t k = 0; 2 * k <= n; ++k) sum += zpow(binom(n - k, k), m);
  return sum;
}

mpz_class franel(std::size_t n, unsigned m) {
  mpz_class sum = 0;
  for (std::size_t k = 0; k <= n; ++k) sum += zpow(binom(n, k), m);
  return sum;
}

mpq_class two_part_weighted(std::size_t n, unsigned m, unsigned a, unsigned b,
                            const mpq_class& alpha_prod, const mpq_class& beta_prod) {
  mpq_class sum = 0;
  for (std::size_t k = 0; k * b <= n; ++k) {
    const std::size_t rest = n - k * b;
    if (rest % a != 0) continue;
    const std::size_t count_a = rest / a;
    sum += mpq_class(zpow(binom(count_a + k, k), m)) * qpow(alpha_prod, count_a) *
           qpow(beta_prod, k);
  }
  return sum;
}

std::vector<mpz_class> motzkin_numbers(std::size_t n_max) {
  std::vector<mpz_class> e(n_max + 1);
  e[0] = 1;
  if (n_max >= 1) e[1] = 1;
  for (std::size_t n = 2; n <= n_max; ++n) {
    e[n] = (2 * n + 1) * e[n - 1] + (3 * n - 3) * e[n - 2];
    e[n] /= n + 2;
  }
  return e;
}

mpz_class motzkin_directed_animals(std::size_t n) {
  const auto e = motzkin_numbers(n);
  mpz_class sum = zpow(3, n);
  for (std::size_t k = 0; k < n; ++k) sum -= zpow(3, n - k - 1) * e[k];
  return sum;
}

FibonacciLucas golden_ratio_power(unsigned m) {
  mpz_class f0 = 0, f1 = 1;
  mpz_class l0 = 2, l1 = 1;
  for (unsigned i = 0; i < m; ++i) {
    f0 += f1;
    std::swap(f0, f1);
    l0 += l1;
    std::swap(l0, l1);
  }
  return {f0, l0};
}

Interval golden_ratio_power_value(unsigned m, long precision_bits) {
  const auto [f, l] = golden_ratio_power(m);
  const mpfr_prec_t prec = precision_bits + 32;
  Interval v = Interval::point(mpq_class(f), prec) * sqrt(Interval::point(5L, prec)) +
               Interval::point(mpq_class(l), prec);
  return v / Interval::point(2L, prec);
}

mpz_class delannoy_partial_sum(std::size_t n) {
  mpz_class sum = 0;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t j = 0; j <= k; ++j) sum += binom(k, j) * binom(k + j, j);
  }
  return sum;
}

mpz_class all_parts_vs_zero_binomial(std::size_t n) {
  if (n == 0) return 1;
  mpz_class sum = 0;
  for (std::size_t k = 0; k <= n - 1; ++k) sum += binom(n - 1, k) * binom(n + k, k);
  return sum;
}

mpq_class all_parts_vs_zero_weighted(std::size_t n) {
  if (n == 0) return 1;
  mpq_class sum = 0;
  for (std::size_t k = 0; k < n; ++k) {
    sum += mpq_class(static_cast<unsigned long>(n - k), static_cast<unsigned long>(n)) *
           mpq_class(binom(n, k) * binom(n, k) * zpow(2, n - k - 1));
  }
  sum.canonicalize();
  return sum;
}

mpz_class all_parts_vs_progression(std::size_t n, unsigned d) {
  return binom((d + 1) * n + d - 1, n);
}

mpz_class directed_animals_binomial(std::size_t n) {
  if (n == 0) return 1;
  mpz_class sum = 0;
  for (std::size_t k = 0; 2 * k <= n && k <= n - 1; ++k) sum += binom(n - 1, k) * binom(n - k, k);
  return sum;
}

std::optional<std::size_t> find_offset(std::span<const mpq_class> sequence,
                                       const std::function<mpq_class(std::size_t)>& oracle,
                                       std::size_t probe_terms, std::size_t max_shift) {
  for (std::size_t shift = 0; shift <= max_shift; ++shift) {
    if (shift + probe_terms > sequence.size()) break;
    bool all = true;
    for (std::size_t i = 0; i < probe_terms && all; ++i) all = sequence[i + shift] == oracle(i);
    if (all) return shift;
  }
  return std::nullopt;
}

}  // namespace compeq
