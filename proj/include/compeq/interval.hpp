#pragma once

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace compeq {

/// Closed real interval [lower, upper] with MPFR endpoints.
///
/// Every operation rounds the lower endpoint toward -inf and the upper
/// endpoint toward +inf, so the result always encloses the exact value of
/// the operation applied to any points of the operands. The working
/// precision of a result is the larger of its operands' precisions.
class Interval {
 public:
  static constexpr mpfr_prec_t kDefaultPrecision = 192;

  explicit Interval(mpfr_prec_t precision = kDefaultPrecision);
  Interval(const Interval& other);
  Interval(Interval&& other) noexcept;
  Interval& operator=(const Interval& other);
  Interval& operator=(Interval&& other) noexcept;
  ~Interval();

  static Interval point(const mpq_class& value, mpfr_prec_t precision = kDefaultPrecision);
  static Interval point(long value, mpfr_prec_t precision = kDefaultPrecision);
  // Requires lo <= hi.
  static Interval hull(const mpq_class& lo, const mpq_class& hi,
                       mpfr_prec_t precision = kDefaultPrecision);
  static Interval pi(mpfr_prec_t precision = kDefaultPrecision);

  mpfr_prec_t precision() const noexcept { return mpfr_get_prec(lo_); }
  mpfr_srcptr lower() const noexcept { return lo_; }
  mpfr_srcptr upper() const noexcept { return hi_; }

  // Endpoints as exact rationals (MPFR values are dyadic).
  mpq_class lower_q() const;
  mpq_class upper_q() const;
  mpq_class width_q() const;

  double lower_double() const;  // rounded down
  double upper_double() const;  // rounded up
  double mid() const;

  bool contains(const mpq_class& x) const;
  bool contains(double x) const;
  bool contains(const Interval& other) const;
  bool overlaps(const Interval& other) const;
  bool is_positive() const;  // lower > 0
  bool is_negative() const;  // upper < 0

  // "[lo,hi]" with `digits` significant decimal digits, rounded outward.
  std::string to_string(int digits = 20) const;

  Interval operator-() const;
  Interval& operator+=(const Interval& rhs);
  Interval& operator-=(const Interval& rhs);
  Interval& operator*=(const Interval& rhs);
  Interval& operator/=(const Interval& rhs);

  friend Interval operator+(Interval lhs, const Interval& rhs) { return lhs += rhs; }
  friend Interval operator-(Interval lhs, const Interval& rhs) { return lhs -= rhs; }
  friend Interval operator*(Interval lhs, const Interval& rhs) { return lhs *= rhs; }
  friend Interval operator/(Interval lhs, const Interval& rhs) { return lhs /= rhs; }

  friend Interval sqrt(const Interval& x);
  friend Interval pow(const Interval& x, unsigned long exponent);
  friend Interval exp(const Interval& x);
  friend Interval log(const Interval& x);
  friend Interval abs(const Interval& x);
  friend Interval max(const Interval& a, const Interval& b);

 private:
  mpfr_t lo_;
  mpfr_t hi_;
};

Interval sqrt(const Interval& x);
Interval pow(const Interval& x, unsigned long exponent);
Interval exp(const Interval& x);
Interval log(const Interval& x);
Interval abs(const Interval& x);
Interval max(const Interval& a, const Interval& b);

}  // namespace compeq
