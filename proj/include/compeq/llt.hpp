#pragma once

#include <cstddef>
#include <string>

#include <gmpxx.h>

#include "compeq/asymptotics.hpp"
#include "compeq/interval.hpp"
#include "compeq/partset.hpp"

namespace compeq {

/// Local-limit diagnostics for the number of parts X_n.
///
/// `deviation` is sup_x |sigma_n Pr(X_n = floor(mu_n + x sigma_n)) - phi(x)|
/// with phi the standard normal density. When sigma_n = 0 the report is
/// flagged `degenerate`: the rescaled pmf vanishes identically, so the
/// deviation is phi(0) and the pairing gap is 1.
struct LltReport {
  std::string part_set;
  std::size_t n = 0;
  mpq_class mean;      // exact
  mpq_class variance;  // exact
  Interval mu_n;
  Interval sigma_n;
  Interval deviation;
  Interval pairing_gap;  // |pi_n 2 sqrt(pi) sigma_n - 1| for (ps; ps)
  bool degenerate = false;
};

LltReport llt_deviation(const PartSet& ps, std::size_t n,
                        long precision_bits = kDefaultPrecisionBits);

Interval pairing_gap(const PartSet& ps, std::size_t n,
                     long precision_bits = kDefaultPrecisionBits);

// |pi_n(m) sqrt(m) (sqrt(2 pi) sigma_n)^(m-1) - 1| for m identical coordinates.
Interval tuple_pairing_gap(const PartSet& ps, unsigned m, std::size_t n,
                           long precision_bits = kDefaultPrecisionBits);

// Integral of g^m for the standard normal density g: 1 / (sqrt((2 pi)^(m-1)) sqrt(m)).
Interval gaussian_power_integral(unsigned m, long precision_bits = kDefaultPrecisionBits);

Interval standard_normal_density(const Interval& x);

}  // namespace compeq
