#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "compeq/interval.hpp"
#include "compeq/partset.hpp"

namespace compeq {

inline constexpr long kDefaultPrecisionBits = 128;

/// First-order data of the supercritical sequence scheme for one part set.
/// All values are certified enclosures.
struct AsymptoticProfile {
  std::string part_set;
  long precision_bits = kDefaultPrecisionBits;
  Interval rho;           // p(rho) = 1, rho in (0,1)
  Interval p1;            // p'(rho)
  Interval p2;            // p''(rho)
  Interval mean_coeff;    // E X_n ~ n / (rho p'(rho))
  Interval K;             // var X_n ~ K n
  Interval pn_prefactor;  // P_n ~ rho^-n / (rho p'(rho))
};

struct TupleAsymptotics {
  unsigned m = 2;
  Interval c_m;
  mpq_class exponent;  // (m-1)/2: pi_n ~ C_m / (pi n)^exponent
};

// Bisection on x -> p(x) over (0,1) with exact comparisons against 1.
// The result has width at most 2^-precision_bits.
Interval solve_rho(const PartSet& ps, long precision_bits = kDefaultPrecisionBits);

// Memoized per (canonical spec, precision).
AsymptoticProfile asymptotic_profile(const PartSet& ps,
                                     long precision_bits = kDefaultPrecisionBits);

Interval mean_coefficient(const PartSet& ps, long precision_bits = kDefaultPrecisionBits);
Interval variance_coefficient(const PartSet& ps, long precision_bits = kDefaultPrecisionBits);

// rho p'' + p' - rho p'^2 at rho (the numerator of K).
Interval variance_numerator(const AsymptoticProfile& profile);

TupleAsymptotics constant_cm(const PartSet& ps, unsigned m,
                             long precision_bits = kDefaultPrecisionBits);

// C_m / (pi n)^((m-1)/2).
Interval pi_asymptotic(const PartSet& ps, unsigned m, std::size_t n,
                       long precision_bits = kDefaultPrecisionBits);

// rho^-n / (rho p'(rho)).
Interval pn_asymptotic(const PartSet& ps, std::size_t n,
                       long precision_bits = kDefaultPrecisionBits);

// exp((ln pi_{n_hi} - ln pi_{n_lo}) / (n_hi - n_lo)) from exact probabilities.
Interval mismatch_decay_rate(std::span<const PartSet> pair, std::size_t n_lo, std::size_t n_hi,
                             long precision_bits = kDefaultPrecisionBits);

struct ConvergenceRow {
  std::size_t n = 0;
  mpq_class pi_exact;
  Interval pi_asymptotic;
  Interval ratio;  // exact / asymptotic
};

// m identical coordinates of `ps`; one row per requested n.
std::vector<ConvergenceRow> convergence_table(const PartSet& ps, unsigned m,
                                              std::span<const std::size_t> ns,
                                              long precision_bits = kDefaultPrecisionBits);

}  // namespace compeq
