#include "compeq/partset.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <map>
#include <numeric>

#include "compeq/error.hpp"

namespace compeq {
namespace {

mpq_class qpow(const mpq_class& x, unsigned long e) {
  mpq_class r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den_mpz_t(), e);
  r.canonicalize();
  return r;
}

std::string weight_to_string(const mpq_class& w) { return w.get_str(); }

std::string canonical_string(const PartSetSpec& spec) {
  switch (spec.family) {
    case Family::AllParts: return "N";
    case Family::Tail: return "N>=" + std::to_string(spec.d);
    case Family::Progression: return std::to_string(spec.d) + "N";
    case Family::OddTail: return "odd>=" + std::to_string(spec.d);
    case Family::Finite: break;
  }
  std::string s = "{";
  for (std::size_t i = 0; i < spec.entries.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(spec.entries[i].part);
    if (spec.entries[i].weight != 1) s += "^" + weight_to_string(spec.entries[i].weight);
  }
  return s + "}";
}

class SpecParser {
 public:
  SpecParser(std::string_view text, ParseOptions options) : text_(text), options_(options) {}

  PartSet parse_single() {
    PartSet ps = parse_partset();
    expect_end();
    return ps;
  }

  std::vector<PartSet> parse_tuple() {
    std::vector<PartSet> tuple;
    tuple.push_back(parse_partset());
    while (consume(";")) tuple.push_back(parse_partset());
    expect_end();
    return tuple;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view token) {
    skip_ws();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  bool peek_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  void expect(std::string_view token) {
    if (!consume(token)) throw SyntaxError(pos_, "'" + std::string(token) + "'");
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input");
  }

  mpz_class parse_int() {
    if (!peek_digit()) throw SyntaxError(pos_, "INT");
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return mpz_class(std::string(text_.substr(start, pos_ - start)));
  }

  Part parse_part() {
    const std::size_t at = (skip_ws(), pos_);
    mpz_class v = parse_int();
    if (v > std::numeric_limits<Part>::max()) {
      throw Error(ErrorKind::InvalidArgument,
                  "part value too large at position " + std::to_string(at));
    }
    return static_cast<Part>(v.get_ui());
  }

  mpq_class parse_weight() {
    mpz_class num = parse_int();
    mpz_class den = 1;
    if (consume("/")) {
      const std::size_t at = pos_;
      den = parse_int();
      if (den == 0) throw SyntaxError(at, "nonzero denominator");
    }
    mpq_class w(num, den);
    w.canonicalize();
    return w;
  }

  PartSet parse_partset() {
    skip_ws();
    PartSetSpec spec;
    if (consume("odd>=")) {
      spec.family = Family::OddTail;
      spec.d = parse_part();
    } else if (consume("N")) {
      if (consume(">=")) {
        spec.family = Family::Tail;
        spec.d = parse_part();
      } else {
        spec.family = Family::AllParts;
      }
    } else if (peek_digit()) {
      spec.family = Family::Progression;
      spec.d = parse_part();
      expect("N");
    } else if (consume("{")) {
      spec.family = Family::Finite;
      do {
        WeightedPart item{parse_part(), 1};
        if (consume("^")) item.weight = parse_weight();
        spec.entries.push_back(std::move(item));
      } while (consume(","));
      expect("}");
    } else {
      throw SyntaxError(pos_, "'N', 'N>=', INT 'N', 'odd>=' or '{'");
    }
    return PartSet(std::move(spec), options_);
  }

  std::string_view text_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

void check_infinite_domain(const mpq_class& x) {
  if (x < 0 || x >= 1) {
    throw Error(ErrorKind::OutOfDomain,
                "x = " + x.get_str() + " is outside [0,1) for an infinite part family");
  }
}

}  // namespace

PartSet::PartSet(PartSetSpec spec, ParseOptions options) : spec_(std::move(spec)) {
  switch (spec_.family) {
    case Family::AllParts:
      spec_.d = 1;
      break;
    case Family::Tail:
      if (spec_.d == 1) spec_.family = Family::AllParts;
      if (spec_.d == 0 && !options.allow_zero_part) {
        throw Error(ErrorKind::ZeroPart, "part 0 requires the allow-zero-part option");
      }
      break;
    case Family::Progression:
      if (spec_.d == 0) throw Error(ErrorKind::InvalidArgument, "progression step must be >= 1");
      if (spec_.d == 1) spec_.family = Family::AllParts;
      break;
    case Family::OddTail:
      if (spec_.d % 2 == 0) {
        throw Error(ErrorKind::InvalidArgument, "odd>=d requires an odd d");
      }
      break;
    case Family::Finite: {
      std::map<Part, mpq_class> merged;
      for (const auto& e : spec_.entries) {
        if (e.weight < 0) throw Error(ErrorKind::InvalidArgument, "negative part weight");
        if (e.part == 0 && !options.allow_zero_part) {
          throw Error(ErrorKind::ZeroPart, "part 0 is not allowed in a part set");
        }
        merged[e.part] += e.weight;
      }
      spec_.entries.clear();
      for (auto& [part, weight] : merged) {
        if (weight != 0) spec_.entries.push_back({part, weight});
      }
      if (spec_.entries.empty()) throw Error(ErrorKind::EmptySet, "part set has no parts");
      break;
    }
  }
  if (spec_.family != Family::Finite) spec_.entries.clear();
  if (spec_.family == Family::AllParts) spec_.d = 1;
  canonical_ = canonical_string(spec_);

  switch (spec_.family) {
    case Family::Finite: {
      std::uint64_t g = 0;
      mpq_class total = 0;
      for (const auto& e : spec_.entries) {
        g = std::gcd(g, std::uint64_t{e.part});
        total += e.weight;
        mpz_lcm(denominator_.get_mpz_t(), denominator_.get_mpz_t(),
                e.weight.get_den_mpz_t());
      }
      // {0} alone has gcd 0; treat as 1 so downstream modulus checks stay defined.
      support_gcd_ = g == 0 ? 1 : g;
      supercritical_ = total > 1;
      min_part_ = spec_.entries.front().part;
      max_part_ = spec_.entries.back().part;
      break;
    }
    case Family::AllParts:
    case Family::Tail:
    case Family::OddTail:
      support_gcd_ = 1;
      min_part_ = spec_.d;
      break;
    case Family::Progression:
      support_gcd_ = spec_.d;
      min_part_ = spec_.d;
      break;
  }
}

PartSet parse_part_spec(std::string_view text, ParseOptions options) {
  return SpecParser(text, options).parse_single();
}

std::vector<PartSet> parse_tuple_spec(std::string_view text, ParseOptions options) {
  return SpecParser(text, options).parse_tuple();
}

std::string tuple_to_string(std::span<const PartSet> tuple) {
  std::string s;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i > 0) s += ";";
    s += tuple[i].canonical();
  }
  return s;
}

mpq_class coefficient(const PartSet& ps, std::uint64_t j) {
  const Part d = ps.spec().d;
  switch (ps.family()) {
    case Family::Finite: {
      const auto& entries = ps.spec().entries;
      auto it = std::lower_bound(entries.begin(), entries.end(), j,
                                 [](const WeightedPart& e, std::uint64_t v) { return e.part < v; });
      return it != entries.end() && it->part == j ? it->weight : mpq_class(0);
    }
    case Family::AllParts: return j >= 1 ? 1 : 0;
    case Family::Tail: return j >= d ? 1 : 0;
    case Family::Progression: return j >= 1 && j % d == 0 ? 1 : 0;
    case Family::OddTail: return j >= d && j % 2 == 1 ? 1 : 0;
  }
  return 0;
}

mpq_class evaluate_p_exact(const PartSet& ps, const mpq_class& x, int order) {
  if (order < 0 || order > 2) throw Error(ErrorKind::InvalidArgument, "order must be 0, 1 or 2");
  if (ps.family() == Family::Finite) {
    if (x < 0) throw Error(ErrorKind::OutOfDomain, "x must be nonnegative");
    mpq_class sum = 0;
    for (const auto& e : ps.spec().entries) {
      const unsigned long j = e.part;
      if (static_cast<long>(j) < order) continue;
      mpq_class falling = 1;
      for (int i = 0; i < order; ++i) falling *= static_cast<unsigned long>(j - i);
      sum += e.weight * falling * qpow(x, j - order);
    }
    return sum;
  }
  check_infinite_domain(x);

  // Every infinite family is x^d / (1 - x^s).
  const unsigned long d = ps.spec().d;
  unsigned long s = 1;
  if (ps.family() == Family::Progression) s = d;
  if (ps.family() == Family::OddTail) s = 2;

  // f = x^d and its derivatives; coefficients vanish where exponents go negative.
  auto monomial = [&x](unsigned long coef, long exponent) -> mpq_class {
    if (coef == 0) return 0;
    return coef * qpow(x, static_cast<unsigned long>(exponent));
  };
  const mpq_class g = 1 / (1 - qpow(x, s));
  const mpq_class f0 = qpow(x, d);
  if (order == 0) return f0 * g;
  const mpq_class f1 = monomial(d, static_cast<long>(d) - 1);
  const mpq_class g1 = monomial(s, static_cast<long>(s) - 1) * g * g;
  if (order == 1) return f1 * g + f0 * g1;
  const mpq_class f2 = monomial(d == 0 ? 0 : d * (d - 1),static_cast<long>(d) - 2);
  const mpq_class g2 = monomial(s * (s - 1), static_cast<long>(s) - 2) * g * g +
                       2 * monomial(s * s, 2 * static_cast<long>(s) - 2) * g * g * g;
  return f2 * g + 2 * f1 * g1 + f0 * g2;
}

Interval evaluate_p(const PartSet& ps, const mpq_class& x, int order, long precision_bits) {
  const mpq_class v = evaluate_p_exact(ps, x, order);
  mpz_class magnitude = abs(v.get_num()) / v.get_den() + 1;
  const long bits = precision_bits + static_cast<long>(mpz_sizeinbase(magnitude.get_mpz_t(), 2)) + 2;
  return Interval::point(v, std::max<long>(bits, MPFR_PREC_MIN));
}

mpq_class tail_bound(const PartSet& ps, const mpq_class& x, std::uint64_t cutoff) {
  if (ps.family() == Family::Finite) {
    if (x < 0) throw Error(ErrorKind::OutOfDomain, "x must be nonnegative");
    mpq_class rest = 0;
    for (const auto& e : ps.spec().entries) {
      if (e.part > cutoff) rest += e.weight * qpow(x, e.part);
    }
    return rest;
  }
  check_infinite_domain(x);
  // Unit weights: sum_{j > J} x^j = x^{J+1} / (1 - x).
  return qpow(x, cutoff + 1) / (1 - x);
}

void validate_for_asymptotics(const PartSet& ps) {
  if (ps.has_zero_part()) {
    throw Error(ErrorKind::ZeroPart, ps.canonical() + ": part 0 is not allowed here");
  }
  if (!ps.weight_sum_exceeds_one()) {
    throw Error(ErrorKind::NotSupercritical,
                ps.canonical() + ": weights sum to at most 1, the scheme is not supercritical");
  }
  if (!ps.is_aperiodic()) {
    throw Error(ErrorKind::Periodic, ps.canonical() + ": support gcd is " +
                                         std::to_string(ps.support_gcd()) + ", not aperiodic");
  }
}

}  // namespace compeq
