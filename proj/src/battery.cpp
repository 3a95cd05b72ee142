#include <sstream>

#include "compeq/enumerate.hpp"
#include "compeq/oracles.hpp"

namespace compeq {
namespace {

constexpr std::size_t kProbeTerms = 6;

std::vector<PartSet> replicate(const PartSet& ps, unsigned m) {
  return std::vector<PartSet>(m, ps);
}

std::string first_mismatch(std::size_t n, const mpq_class& got, const mpq_class& want) {
  std::ostringstream s;
  s << "mismatch at n=" << n << ": dp=" << got.get_str() << " oracle=" << want.get_str();
  return s.str();
}

// Compares sequence[i + shift] with oracle(i) for i < terms after pinning the
// shift on the first few terms.
OracleCheck compare_pinned(std::string name, std::span<const mpq_class> sequence,
                           const std::function<mpq_class(std::size_t)>& oracle,
                           std::size_t terms) {
  OracleCheck check{std::move(name), false, terms, {}};
  const auto shift = find_offset(sequence, oracle, kProbeTerms);
  if (!shift) {
    check.detail = "no index offset matches the first terms";
    return check;
  }
  if (*shift + terms > sequence.size()) {
    check.detail = "sequence too short for the pinned offset";
    return check;
  }
  for (std::size_t i = 0; i < terms; ++i) {
    const mpq_class want = oracle(i);
    if (sequence[i + *shift] != want) {
      check.detail = first_mismatch(i + *shift, sequence[i + *shift], want);
      return check;
    }
  }
  check.passed = true;
  check.detail = "offset " + std::to_string(*shift);
  return check;
}

OracleCheck compare_direct(std::string name, std::span<const mpq_class> sequence,
                           const std::function<mpq_class(std::size_t)>& oracle,
                           std::size_t terms) {
  OracleCheck check{std::move(name), false, terms, {}};
  for (std::size_t n = 0; n < terms; ++n) {
    const mpq_class want = oracle(n);
    if (sequence[n] != want) {
      check.detail = first_mismatch(n, sequence[n], want);
      return check;
    }
  }
  check.passed = true;
  return check;
}

OracleCheck merge(std::string name, const std::vector<OracleCheck>& parts) {
  OracleCheck all{std::move(name), true, 0, {}};
  for (const auto& c : parts) {
    all.terms = std::max(all.terms, c.terms);
    if (!c.passed) {
      all.passed = false;
      all.detail = c.name + ": " + c.detail;
      return all;
    }
  }
  return all;
}

}  // namespace

OracleCheck check_binomial_power_sums(unsigned max_m, std::size_t terms) {
  std::vector<OracleCheck> parts;
  for (unsigned m = 1; m <= max_m; ++m) {
    const auto tuple = replicate(parse_part_spec("{1,2}"), m);
    const auto seq = equal_parts_counts(tuple, terms - 1);
    parts.push_back(compare_direct("m=" + std::to_string(m), seq,
                                   [m](std::size_t n) { return mpq_class(binomial_power_sum(n, m)); },
                                   terms));
  }
  return merge("binomial_power_sum vs {1,2}, m<=" + std::to_string(max_m), parts);
}

OracleCheck check_franel(unsigned d, unsigned m, std::size_t terms) {
  const std::string name =
      "franel vs " + PartSet::progression(d).canonical() + ", m=" + std::to_string(m);
  const auto tuple = replicate(PartSet::progression(d), m);
  const std::size_t n_max = d * (terms + kProbeTerms);
  const auto seq = equal_parts_counts(tuple, n_max);
  std::vector<mpq_class> multiples;
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n % d == 0) {
      multiples.push_back(seq[n]);
    } else if (seq[n] != 0) {
      return OracleCheck{name, false, terms, "nonzero count at n=" + std::to_string(n)};
    }
  }
  return compare_pinned(name, multiples,
                        [m](std::size_t j) { return mpq_class(franel(j, m)); }, terms);
}

OracleCheck check_progression_power(unsigned beta, std::size_t terms) {
  const std::vector<PartSet> tuple{
      PartSet::finite({{1, 1}, {2, beta}}), PartSet::progression(2)};
  const auto seq = equal_parts_counts(tuple, 2 * (terms - 1));
  std::vector<mpq_class> even;
  for (std::size_t n = 0; n < seq.size(); n += 2) even.push_back(seq[n]);
  return compare_direct("D_2n = beta^n, beta=" + std::to_string(beta), even,
                        [beta](std::size_t n) {
                          mpz_class p;
                          mpz_ui_pow_ui(p.get_mpz_t(), beta, n);
                          return mpq_class(p);
                        },
                        terms);
}

OracleCheck check_directed_animals(std::size_t terms) {
  const auto tuple = parse_tuple_spec("{1,2};N");
  const auto seq = equal_parts_counts(tuple, terms + kProbeTerms);
  OracleCheck motzkin = compare_pinned(
      "Motzkin meanders", seq,
      [](std::size_t n) { return mpq_class(motzkin_directed_animals(n)); }, terms);
  OracleCheck binomial = compare_pinned(
      "binomial form", seq,
      [](std::size_t n) { return mpq_class(directed_animals_binomial(n + 1)); }, terms);
  OracleCheck out = merge("directed animals vs ({1,2};N)", {motzkin, binomial});
  if (out.passed) out.detail = motzkin.detail;
  return out;
}

OracleCheck check_product_invariance(std::size_t terms) {
  const auto first = equal_parts_counts(parse_tuple_spec("{1^2,2^3};{1^3,2^5}"), terms);
  const auto second = equal_parts_counts(parse_tuple_spec("{1^6,2};{1,2^15}"), terms);
  return compare_direct("product invariance of weighted pairs", first,
                        [&second](std::size_t n) { return second[n]; }, terms + 1);
}

OracleCheck check_two_part_weighted(std::size_t terms) {
  struct Case {
    const char* spec;
    unsigned m, a, b;
    long alpha, beta;
  };
  const Case cases[] = {
      {"{1^2,2};{1^2,2}", 2, 1, 2, 4, 1},        {"{2,3};{2,3}", 2, 2, 3, 1, 1},
      {"{1,2};{1,2^2}", 2, 1, 2, 1, 2},          {"{1^2,2^3};{1^3,2^5}", 2, 1, 2, 6, 15},
      {"{2^2,5};{2,5^3};{2^3,5}", 3, 2, 5, 6, 3}, {"{1,3};{1,3};{1,3};{1,3}", 4, 1, 3, 1, 1},
  };
  std::vector<OracleCheck> parts;
  for (const auto& c : cases) {
    const auto seq = equal_parts_counts(parse_tuple_spec(c.spec), terms);
    parts.push_back(compare_direct(c.spec, seq,
                                   [&c](std::size_t n) {
                                     return two_part_weighted(n, c.m, c.a, c.b, c.alpha, c.beta);
                                   },
                                   terms + 1));
  }
  return merge("two_part_weighted vs weighted two-part tuples", parts);
}

OracleCheck check_odd_parts(unsigned m, std::size_t terms) {
  const auto seq = equal_parts_counts(replicate(PartSet::odd_tail(1), m), terms + kProbeTerms);
  return compare_pinned("odd parts, m=" + std::to_string(m), seq,
                        [m](std::size_t n) { return mpq_class(binomial_power_sum(n, m)); },
                        terms);
}

OracleCheck check_tail_two(unsigned m, std::size_t terms) {
  const auto seq = equal_parts_counts(replicate(PartSet::tail(2), m), terms + kProbeTerms);
  return compare_pinned("N>=2, m=" + std::to_string(m), seq,
                        [m](std::size_t n) { return mpq_class(binomial_power_sum(n, m)); },
                        terms);
}

OracleCheck check_delannoy_partial_sums(std::size_t terms) {
  const auto seq = equal_parts_counts(parse_tuple_spec("{1^2,2};{1^2,2}"), terms + kProbeTerms);
  return compare_pinned("Delannoy partial sums vs ({1^2,2};{1^2,2})", seq,
                        [](std::size_t n) { return mpq_class(delannoy_partial_sum(n)); }, terms);
}

OracleCheck check_zero_part_pair(std::size_t terms) {
  ParseOptions parse;
  parse.allow_zero_part = true;
  EnumerationOptions options;
  options.allow_zero_part = true;
  const auto tuple = parse_tuple_spec("N;N>=0", parse);
  const auto seq = equal_parts_counts(tuple, terms + kProbeTerms, options);
  OracleCheck binomial = compare_pinned(
      "binomial form", seq,
      [](std::size_t n) { return mpq_class(all_parts_vs_zero_binomial(n + 1)); }, terms);
  OracleCheck weighted = compare_pinned(
      "weighted form", seq, [](std::size_t n) { return all_parts_vs_zero_weighted(n + 1); },
      terms);
  OracleCheck out = merge("N vs N u {0}", {binomial, weighted});
  if (out.passed) out.detail = binomial.detail;
  return out;
}

OracleCheck check_all_parts_vs_progression(unsigned d, std::size_t terms) {
  const std::string name = "N vs " + std::to_string(d) + "N";
  const std::vector<PartSet> tuple{PartSet::all_parts(), PartSet::progression(d)};
  const std::size_t n_max = d * (terms + kProbeTerms);
  const auto seq = equal_parts_counts(tuple, n_max);
  std::vector<mpq_class> multiples;
  for (std::size_t n = 0; n <= n_max; n += d) multiples.push_back(seq[n]);
  return compare_pinned(name, multiples,
                        [d](std::size_t n) { return mpq_class(all_parts_vs_progression(n, d)); },
                        terms);
}

OracleCheck check_hanna_ratio(unsigned m, std::size_t n, double tolerance) {
  const auto tuple = replicate(parse_part_spec("{1,2}"), m);
  const mpq_class lo = equal_parts_count(tuple, n).d_n;
  const mpq_class hi = equal_parts_count(tuple, n + 1).d_n;
  const Interval limit = golden_ratio_power_value(m);
  const Interval ratio = Interval::point(mpq_class(hi / lo), limit.precision());
  const Interval rel = abs(ratio - limit) / limit;
  OracleCheck check{"Hanna ratio m=" + std::to_string(m) + " at n=" + std::to_string(n),
                    rel.upper_double() <= tolerance, 2, {}};
  std::ostringstream s;
  s << "relative error " << rel.upper_double();
  check.detail = s.str();
  return check;
}

std::vector<OracleCheck> run_oracle_battery() {
  std::vector<OracleCheck> out;
  out.push_back(check_binomial_power_sums(5, 300));
  for (unsigned d = 1; d <= 3; ++d) {
    for (unsigned m = 2; m <= 3; ++m) out.push_back(check_franel(d, m, 100));
  }
  for (unsigned beta = 1; beta <= 3; ++beta) out.push_back(check_progression_power(beta, 101));
  out.push_back(check_directed_animals(200));
  out.push_back(check_product_invariance(200));
  out.push_back(check_two_part_weighted(60));
  for (unsigned m = 2; m <= 4; ++m) out.push_back(check_odd_parts(m, 100));
  for (unsigned m = 1; m <= 4; ++m) out.push_back(check_tail_two(m, 100));
  out.push_back(check_delannoy_partial_sums(100));
  out.push_back(check_zero_part_pair(60));
  for (unsigned d = 2; d <= 3; ++d) out.push_back(check_all_parts_vs_progression(d, 60));
  for (unsigned m = 1; m <= 5; ++m) out.push_back(check_hanna_ratio(m, 500, 0.01));
  return out;
}

}  // namespace compeq
