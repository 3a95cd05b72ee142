#include "compeq/llt.hpp"

#include <vector>

#include "compeq/enumerate.hpp"
#include "compeq/error.hpp"

namespace compeq {
namespace {

constexpr long kGuardBits = 64;

bool may_contain_zero(const Interval& from, const Interval& to) {
  return mpfr_sgn(from.lower()) <= 0 && mpfr_sgn(to.upper()) >= 0;
}

Interval sigma_from(const mpq_class& variance, mpfr_prec_t prec) {
  return sqrt(Interval::point(variance, prec));
}

Interval pair_probability(const PartSet& ps, std::size_t n, mpfr_prec_t prec) {
  const std::vector<PartSet> pair{ps, ps};
  return Interval::point(*equal_parts_probability(pair, n).pi_n, prec);
}

}  // namespace

Interval standard_normal_density(const Interval& x) {
  const mpfr_prec_t prec = x.precision();
  const Interval two = Interval::point(2L, prec);
  return exp(-(pow(x, 2) / two)) / sqrt(two * Interval::pi(prec));
}

LltReport llt_deviation(const PartSet& ps, std::size_t n, long precision_bits) {
  const PartsDistribution dist = parts_distribution(ps, n);
  const mpfr_prec_t prec = precision_bits + kGuardBits;

  LltReport report;
  report.part_set = ps.canonical();
  report.n = n;
  report.mean = dist.mean;
  report.variance = dist.variance;
  report.mu_n = Interval::point(dist.mean, prec);
  report.sigma_n = sigma_from(dist.variance, prec);
  report.pairing_gap = pairing_gap(ps, n, precision_bits);

  const Interval phi0 = standard_normal_density(Interval::point(0L, prec));
  if (dist.variance == 0) {
    report.degenerate = true;
    report.deviation = phi0;
    return report;
  }

  const Interval& mu = report.mu_n;
  const Interval& sigma = report.sigma_n;
  auto scaled = [&](std::size_t k) {
    return (Interval::point(static_cast<long>(k), prec) - mu) / sigma;
  };
  const std::size_t k_first = dist.pmf.begin()->first;
  const std::size_t k_last = dist.pmf.rbegin()->first;

  // Left of k_first and from k_last + 1 on the rescaled pmf is 0, so the
  // deviation there is the largest density value on that half-line.
  const Interval left = scaled(k_first);
  const Interval right = scaled(k_last + 1);
  Interval deviation = mpfr_sgn(left.lower()) > 0 ? phi0 : standard_normal_density(left);
  deviation = max(deviation,
                  mpfr_sgn(right.upper()) < 0 ? phi0 : standard_normal_density(right));

  // On [a_k, a_{k+1}) the rescaled pmf is constant and phi is unimodal, so the
  // supremum is attained at an endpoint or at 0.
  for (std::size_t k = k_first; k <= k_last; ++k) {
    auto it = dist.pmf.find(k);
    const Interval c =
        it == dist.pmf.end() ? Interval(prec) : sigma * Interval::point(it->second, prec);
    const Interval a = scaled(k);
    const Interval b = scaled(k + 1);
    deviation = max(deviation, abs(c - standard_normal_density(a)));
    deviation = max(deviation, abs(c - standard_normal_density(b)));
    if (may_contain_zero(a, b)) deviation = max(deviation, abs(c - phi0));
  }
  report.deviation = deviation;
  return report;
}

Interval pairing_gap(const PartSet& ps, std::size_t n, long precision_bits) {
  return tuple_pairing_gap(ps, 2, n, precision_bits);
}

Interval tuple_pairing_gap(const PartSet& ps, unsigned m, std::size_t n, long precision_bits) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "pairing gap requires m >= 2");
  const PartsDistribution dist = parts_distribution(ps, n);
  const mpfr_prec_t prec = precision_bits + kGuardBits;
  const Interval sigma = sigma_from(dist.variance, prec);
  const Interval pi_n =
      m == 2 ? pair_probability(ps, n, prec)
             : Interval::point(*equal_parts_probability(std::vector<PartSet>(m, ps), n).pi_n, prec);
  const Interval root_two_pi = sqrt(Interval::point(2L, prec) * Interval::pi(prec));
  const Interval scaled = pi_n * sqrt(Interval::point(static_cast<long>(m), prec)) *
                          pow(root_two_pi * sigma, m - 1);
  return abs(scaled - Interval::point(1L, prec));
}

Interval gaussian_power_integral(unsigned m, long precision_bits) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "gaussian_power_integral requires m >= 1");
  const mpfr_prec_t prec = precision_bits + kGuardBits;
  const Interval two_pi = Interval::point(2L, prec) * Interval::pi(prec);
  return Interval::point(1L, prec) /
         (sqrt(pow(two_pi, m - 1)) * sqrt(Interval::point(static_cast<long>(m), prec)));
}

}  // namespace compeq
