#include "compeq/interval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace compeq {
namespace {

mpfr_prec_t joint_precision(const Interval& a, const Interval& b) {
  return std::max(a.precision(), b.precision());
}

// Sets `out` to the min (rounded down) or max (rounded up) over the four
// endpoint products.
void product_bound(mpfr_ptr out, mpfr_srcptr a0, mpfr_srcptr a1, mpfr_srcptr b0, mpfr_srcptr b1,
                   bool lower) {
  const mpfr_rnd_t rnd = lower ? MPFR_RNDD : MPFR_RNDU;
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(out));
  mpfr_mul(out, a0, b0, rnd);
  const mpfr_srcptr rest[3][2] = {{a0, b1}, {a1, b0}, {a1, b1}};
  for (const auto& pr : rest) {
    mpfr_mul(t, pr[0], pr[1], rnd);
    if (lower ? mpfr_less_p(t, out) : mpfr_greater_p(t, out)) mpfr_set(out, t, MPFR_RNDN);
  }
  mpfr_clear(t);
}

std::string format_endpoint(mpfr_srcptr x, int digits, bool lower) {
  char* buffer = nullptr;
  const int written = lower ? mpfr_asprintf(&buffer, "%.*RDe", digits - 1, x)
                            : mpfr_asprintf(&buffer, "%.*RUe", digits - 1, x);
  if (written < 0 || buffer == nullptr) throw std::runtime_error("mpfr_asprintf failed");
  std::string s(buffer);
  mpfr_free_str(buffer);
  return s;
}

}  // namespace

Interval::Interval(mpfr_prec_t precision) {
  mpfr_init2(lo_, precision);
  mpfr_init2(hi_, precision);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& other) {
  mpfr_init2(lo_, other.precision());
  mpfr_init2(hi_, other.precision());
  mpfr_set(lo_, other.lo_, MPFR_RNDN);
  mpfr_set(hi_, other.hi_, MPFR_RNDN);
}

Interval::Interval(Interval&& other) noexcept : Interval(other.precision()) {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Interval& Interval::operator=(const Interval& other) {
  if (this != &other) {
    mpfr_set_prec(lo_, other.precision());
    mpfr_set_prec(hi_, other.precision());
    mpfr_set(lo_, other.lo_, MPFR_RNDN);
    mpfr_set(hi_, other.hi_, MPFR_RNDN);
  }
  return *this;
}

Interval& Interval::operator=(Interval&& other) noexcept {
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::point(const mpq_class& value, mpfr_prec_t precision) {
  Interval r(precision);
  mpfr_set_q(r.lo_, value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, value.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::point(long value, mpfr_prec_t precision) {
  Interval r(precision);
  mpfr_set_si(r.lo_, value, MPFR_RNDD);
  mpfr_set_si(r.hi_, value, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t precision) {
  if (lo > hi) throw std::invalid_argument("Interval::hull: lo > hi");
  Interval r(precision);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t precision) {
  Interval r(precision);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

mpq_class Interval::lower_q() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_);
  return q;
}

mpq_class Interval::upper_q() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_);
  return q;
}

mpq_class Interval::width_q() const { return upper_q() - lower_q(); }

double Interval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid() const {
  mpfr_t m;
  mpfr_init2(m, precision() + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  const double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

bool Interval::contains(const mpq_class& x) const {
  return mpfr_cmp_q(lo_, x.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, x.get_mpq_t()) >= 0;
}

bool Interval::contains(double x) const {
  return mpfr_cmp_d(lo_, x) <= 0 && mpfr_cmp_d(hi_, x) >= 0;
}

bool Interval::contains(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_greaterequal_p(hi_, other.hi_);
}

bool Interval::overlaps(const Interval& other) const {
  return mpfr_lessequal_p(lo_, other.hi_) && mpfr_lessequal_p(other.lo_, hi_);
}

bool Interval::is_positive() const { return mpfr_sgn(lo_) > 0; }
bool Interval::is_negative() const { return mpfr_sgn(hi_) < 0; }

std::string Interval::to_string(int digits) const {
  return "[" + format_endpoint(lo_, digits, true) + "," + format_endpoint(hi_, digits, false) +
         "]";
}

Interval Interval::operator-() const {
  Interval r(precision());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval& Interval::operator+=(const Interval& rhs) {
  const mpfr_prec_t p = joint_precision(*this, rhs);
  Interval r(p);
  mpfr_add(r.lo_, lo_, rhs.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, rhs.hi_, MPFR_RNDU);
  return *this = std::move(r);
}

Interval& Interval::operator-=(const Interval& rhs) {
  const mpfr_prec_t p = joint_precision(*this, rhs);
  Interval r(p);
  mpfr_sub(r.lo_, lo_, rhs.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, rhs.lo_, MPFR_RNDU);
  return *this = std::move(r);
}

Interval& Interval::operator*=(const Interval& rhs) {
  const mpfr_prec_t p = joint_precision(*this, rhs);
  Interval r(p);
  product_bound(r.lo_, lo_, hi_, rhs.lo_, rhs.hi_, true);
  product_bound(r.hi_, lo_, hi_, rhs.lo_, rhs.hi_, false);
  return *this = std::move(r);
}

Interval& Interval::operator/=(const Interval& rhs) {
  if (!rhs.is_positive() && !rhs.is_negative()) {
    throw std::domain_error("Interval division by an interval containing zero");
  }
  const mpfr_prec_t p = joint_precision(*this, rhs);
  Interval inv(p);
  mpfr_ui_div(inv.lo_, 1, rhs.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, rhs.lo_, MPFR_RNDU);
  return *this *= inv;
}

Interval sqrt(const Interval& x) {
  if (x.is_negative()) throw std::domain_error("sqrt of a negative interval");
  Interval r(x.precision());
  if (mpfr_sgn(x.lo_) < 0) {
    mpfr_set_zero(r.lo_, 1);
  } else {
    mpfr_sqrt(r.lo_, x.lo_, MPFR_RNDD);
  }
  mpfr_sqrt(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& x, unsigned long exponent) {
  if (exponent == 0) return Interval::point(1L, x.precision());
  Interval r(x.precision());
  if (mpfr_sgn(x.lo_) >= 0) {
    mpfr_pow_ui(r.lo_, x.lo_, exponent, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, x.hi_, exponent, MPFR_RNDU);
    return r;
  }
  if (mpfr_sgn(x.hi_) <= 0) {
    Interval m = pow(-x, exponent);
    return exponent % 2 == 0 ? m : -m;
  }
  // Straddles zero.
  if (exponent % 2 == 1) {
    mpfr_pow_ui(r.lo_, x.lo_, exponent, MPFR_RNDD);
    mpfr_pow_ui(r.hi_, x.hi_, exponent, MPFR_RNDU);
    return r;
  }
  Interval a = abs(x);
  mpfr_set_zero(r.lo_, 1);
  mpfr_pow_ui(r.hi_, a.hi_, exponent, MPFR_RNDU);
  return r;
}

Interval exp(const Interval& x) {
  Interval r(x.precision());
  mpfr_exp(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& x) {
  if (!x.is_positive()) throw std::domain_error("log of a non-positive interval");
  Interval r(x.precision());
  mpfr_log(r.lo_, x.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, x.hi_, MPFR_RNDU);
  return r;
}

Interval abs(const Interval& x) {
  if (mpfr_sgn(x.lo_) >= 0) return x;
  if (mpfr_sgn(x.hi_) <= 0) return -x;
  Interval r(x.precision());
  mpfr_set_zero(r.lo_, 1);
  if (mpfr_cmpabs(x.lo_, x.hi_) > 0) {
    mpfr_neg(r.hi_, x.lo_, MPFR_RNDU);
  } else {
    mpfr_set(r.hi_, x.hi_, MPFR_RNDU);
  }
  return r;
}

Interval max(const Interval& a, const Interval& b) {
  Interval r(joint_precision(a, b));
  mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

}  // namespace compeq
