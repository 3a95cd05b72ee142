#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "compeq/interval.hpp"

namespace compeq {

/// Closed-form sequences that the dynamic programme in enumerate.hpp is
/// checked against. None of these share code with the DP.
struct OracleSequence {
  std::string name;
  std::function<mpq_class(std::size_t n)> term;
};

// sum_{k=0}^{n} binom(n-k, k)^m; D_n(m) for parts {1,2}.
mpz_class binomial_power_sum(std::size_t n, unsigned m);

// Franel numbers of order m: sum_{k=0}^{n} binom(n, k)^m.
mpz_class franel(std::size_t n, unsigned m);

// sum_k binom((n + k(a-b))/a, k)^m alpha_prod^((n-kb)/a) beta_prod^k, where
// k counts parts b; terms with a fractional or negative index vanish.
mpq_class two_part_weighted(std::size_t n, unsigned m, unsigned a, unsigned b,
                            const mpq_class& alpha_prod, const mpq_class& beta_prod);

// Motzkin excursions E_0..E_{n_max}, by (k+3) E_{k+1} = (2k+3) E_k + 3k E_{k-1}.
std::vector<mpz_class> motzkin_numbers(std::size_t n_max);

// Meanders M_n = 3^n - sum_{k<n} 3^{n-k-1} E_k (Motzkin prefixes).
mpz_class motzkin_directed_animals(std::size_t n);

struct FibonacciLucas {
  mpz_class fibonacci;  // F_m, F_0 = 0, F_1 = 1
  mpz_class lucas;      // L_m, L_0 = 2, L_1 = 1
};
FibonacciLucas golden_ratio_power(unsigned m);
// (F_m sqrt(5) + L_m) / 2, which equals phi^m.
Interval golden_ratio_power_value(unsigned m, long precision_bits = 128);

// Further closed forms for pairs of part sets.
// sum_{k=0}^{n} sum_{j=0}^{k} binom(k,j) binom(k+j,j): partial sums of central Delannoy numbers.
mpz_class delannoy_partial_sum(std::size_t n);
// sum_{k=0}^{n} binom(n-1,k) binom(n+k,k), for N against N u {0}.
mpz_class all_parts_vs_zero_binomial(std::size_t n);
// sum_{k=0}^{n-1} (n-k)/n binom(n,k)^2 2^(n-k-1), the same sequence written differently.
mpq_class all_parts_vs_zero_weighted(std::size_t n);
// binom((d+1)n + d - 1, n), for N against dN at size dn.
mpz_class all_parts_vs_progression(std::size_t n, unsigned d);
// sum_{k=0}^{n} binom(n-1,k) binom(n-k,k), for {1,2} against N.
mpz_class directed_animals_binomial(std::size_t n);

/// Smallest shift s in [0, max_shift] with sequence[i + s] == oracle(i) for
/// every i < probe_terms. Used to fix index offsets at small n before
/// comparing whole sequences.
std::optional<std::size_t> find_offset(std::span<const mpq_class> sequence,
                                       const std::function<mpq_class(std::size_t)>& oracle,
                                       std::size_t probe_terms, std::size_t max_shift = 4);

struct OracleCheck {
  std::string name;
  bool passed = false;
  std::size_t terms = 0;
  std::string detail;
};

// Individual checks of the DP against closed forms. Each compares exactly.
OracleCheck check_binomial_power_sums(unsigned max_m, std::size_t terms);
OracleCheck check_franel(unsigned d, unsigned m, std::size_t terms);
OracleCheck check_progression_power(unsigned beta, std::size_t terms);  // D_{2n} = beta^n
OracleCheck check_directed_animals(std::size_t terms);
OracleCheck check_product_invariance(std::size_t terms);
OracleCheck check_two_part_weighted(std::size_t terms);
OracleCheck check_odd_parts(unsigned m, std::size_t terms);
OracleCheck check_tail_two(unsigned m, std::size_t terms);
OracleCheck check_delannoy_partial_sums(std::size_t terms);
OracleCheck check_zero_part_pair(std::size_t terms);
OracleCheck check_all_parts_vs_progression(unsigned d, std::size_t terms);
// |D_{n+1}(m)/D_n(m) - phi^m| / phi^m <= tolerance for parts {1,2}.
OracleCheck check_hanna_ratio(unsigned m, std::size_t n, double tolerance);

std::vector<OracleCheck> run_oracle_battery();

}  // namespace compeq
