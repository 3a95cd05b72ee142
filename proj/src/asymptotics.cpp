#include "compeq/asymptotics.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <utility>

#include "compeq/enumerate.hpp"
#include "compeq/error.hpp"

namespace compeq {
namespace {

constexpr long kGuardBits = 64;

mpfr_prec_t working_precision(long precision_bits) { return precision_bits + kGuardBits; }

// Dyadic bracket [lo, hi] around rho with p(lo) <= 1 <= p(hi).
std::pair<mpq_class, mpq_class> bracket_rho(const PartSet& ps, long precision_bits) {
  validate_for_asymptotics(ps);
  if (precision_bits < 1) throw Error(ErrorKind::InvalidArgument, "precision_bits must be >= 1");
  mpq_class lo = 0;
  mpq_class hi = 1;
  mpq_class width = 1;
  mpq_class target;
  mpz_class two_pow;
  mpz_ui_pow_ui(two_pow.get_mpz_t(), 2, static_cast<unsigned long>(precision_bits));
  target = mpq_class(1, two_pow);
  while (width > target) {
    const mpq_class mid = (lo + hi) / 2;
    const mpq_class v = evaluate_p_exact(ps, mid, 0);
    if (v == 1) return {mid, mid};
    if (v < 1) {
      lo = mid;
    } else {
      hi = mid;
    }
    width /= 2;
  }
  return {lo, hi};
}

// p^(order) is nondecreasing on [0,1): nonnegative coefficients.
Interval p_on(const PartSet& ps, const std::pair<mpq_class, mpq_class>& rho, int order,
              mpfr_prec_t prec) {
  return Interval::hull(evaluate_p_exact(ps, rho.first, order),
                        evaluate_p_exact(ps, rho.second, order), prec);
}

AsymptoticProfile compute_profile(const PartSet& ps, long precision_bits) {
  const auto bracket = bracket_rho(ps, precision_bits);
  const mpfr_prec_t prec = working_precision(precision_bits);
  AsymptoticProfile profile{ps.canonical(),
                            precision_bits,
                            Interval::hull(bracket.first, bracket.second, prec),
                            p_on(ps, bracket, 1, prec),
                            p_on(ps, bracket, 2, prec),
                            Interval(prec),
                            Interval(prec),
                            Interval(prec)};
  const Interval& rho = profile.rho;
  const Interval& p1 = profile.p1;
  const Interval one = Interval::point(1L, prec);
  profile.mean_coeff = one / (rho * p1);
  profile.pn_prefactor = profile.mean_coeff;
  profile.K = variance_numerator(profile) / (rho * rho * pow(p1, 3));
  return profile;
}

class ProfileCache {
 public:
  AsymptoticProfile get(const PartSet& ps, long precision_bits) {
    const Key key{ps.canonical(), precision_bits};
    {
      std::shared_lock lock(mutex_);
      if (auto it = profiles_.find(key); it != profiles_.end()) return it->second;
    }
    AsymptoticProfile profile = compute_profile(ps, precision_bits);
    std::unique_lock lock(mutex_);
    return profiles_.emplace(key, std::move(profile)).first->second;
  }

 private:
  using Key = std::pair<std::string, long>;
  std::shared_mutex mutex_;
  std::map<Key, AsymptoticProfile> profiles_;
};

ProfileCache& profile_cache() {
  static ProfileCache cache;
  return cache;
}

}  // namespace

Interval solve_rho(const PartSet& ps, long precision_bits) {
  const auto bracket = bracket_rho(ps, precision_bits);
  return Interval::hull(bracket.first, bracket.second, working_precision(precision_bits));
}

AsymptoticProfile asymptotic_profile(const PartSet& ps, long precision_bits) {
  return profile_cache().get(ps, precision_bits);
}

Interval mean_coefficient(const PartSet& ps, long precision_bits) {
  return asymptotic_profile(ps, precision_bits).mean_coeff;
}

Interval variance_coefficient(const PartSet& ps, long precision_bits) {
  return asymptotic_profile(ps, precision_bits).K;
}

Interval variance_numerator(const AsymptoticProfile& profile) {
  const Interval& rho = profile.rho;
  const Interval& p1 = profile.p1;
  return rho * profile.p2 + p1 - rho * p1 * p1;
}

TupleAsymptotics constant_cm(const PartSet& ps, unsigned m, long precision_bits) {
  if (m < 2) throw Error(ErrorKind::InvalidArgument, "constant_cm requires m >= 2");
  const AsymptoticProfile profile = asymptotic_profile(ps, precision_bits);
  const mpfr_prec_t prec = profile.rho.precision();
  const Interval& rho = profile.rho;

  // 1 / sqrt(2^(m-1) m)
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, m - 1);
  scale *= m;
  const Interval norm = Interval::point(1L, prec) / sqrt(Interval::point(mpq_class(scale), prec));

  const Interval bracket = rho * rho * pow(profile.p1, 3) / variance_numerator(profile);
  const Interval c_m = pow(sqrt(bracket), m - 1) * norm;

  // The bracketed expression is 1/K; both routes must agree.
  const Interval via_k = pow(sqrt(Interval::point(1L, prec) / profile.K), m - 1) * norm;
  if (!c_m.overlaps(via_k)) {
    throw std::logic_error("constant_cm: explicit and K-based forms disagree for " +
                           ps.canonical());
  }
  return TupleAsymptotics{m, c_m, mpq_class(m - 1, 2)};
}

Interval pi_asymptotic(const PartSet& ps, unsigned m, std::size_t n, long precision_bits) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "pi_asymptotic requires n >= 1");
  const TupleAsymptotics c = constant_cm(ps, m, precision_bits);
  const mpfr_prec_t prec = c.c_m.precision();
  const Interval pi_n = Interval::pi(prec) * Interval::point(static_cast<long>(n), prec);
  return c.c_m / sqrt(pow(pi_n, m - 1));
}

Interval pn_asymptotic(const PartSet& ps, std::size_t n, long precision_bits) {
  const AsymptoticProfile profile = asymptotic_profile(ps, precision_bits);
  const Interval inv_rho = Interval::point(1L, profile.rho.precision()) / profile.rho;
  return pow(inv_rho, n) * profile.pn_prefactor;
}

Interval mismatch_decay_rate(std::span<const PartSet> pair, std::size_t n_lo, std::size_t n_hi,
                             long precision_bits) {
  if (pair.size() != 2) throw Error(ErrorKind::InvalidArgument, "mismatch_decay_rate takes a pair");
  if (n_hi <= n_lo) throw Error(ErrorKind::InvalidArgument, "require n_lo < n_hi");
  for (const auto& ps : pair) validate_for_asymptotics(ps);
  const mpq_class pi_lo = *equal_parts_probability(pair, n_lo).pi_n;
  const mpq_class pi_hi = *equal_parts_probability(pair, n_hi).pi_n;
  if (pi_lo == 0 || pi_hi == 0) {
    throw Error(ErrorKind::UndefinedProbability, "probability vanishes on the range");
  }
  const mpfr_prec_t prec = working_precision(precision_bits);
  const Interval slope = (log(Interval::point(pi_hi, prec)) - log(Interval::point(pi_lo, prec))) /
                         Interval::point(static_cast<long>(n_hi - n_lo), prec);
  return exp(slope);
}

std::vector<ConvergenceRow> convergence_table(const PartSet& ps, unsigned m,
                                              std::span<const std::size_t> ns,
                                              long precision_bits) {
  validate_for_asymptotics(ps);
  const std::vector<PartSet> tuple(m, ps);
  std::vector<ConvergenceRow> rows;
  for (std::size_t n : ns) {
    const mpq_class exact = *equal_parts_probability(tuple, n).pi_n;
    Interval asym = pi_asymptotic(ps, m, n, precision_bits);
    Interval ratio = Interval::point(exact, asym.precision()) / asym;
    rows.push_back(ConvergenceRow{n, exact, std::move(asym), std::move(ratio)});
  }
  return rows;
}

}  // namespace compeq
