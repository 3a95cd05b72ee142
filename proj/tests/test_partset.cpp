#include <numeric>
#include <string>

#include <gtest/gtest.h>

#include "compeq/error.hpp"
#include "compeq/partset.hpp"

namespace compeq {
namespace {

ErrorKind kind_of(const std::string& text, ParseOptions options = {}) {
  try {
    parse_part_spec(text, options);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for " << text;
  return ErrorKind::InvalidArgument;
}

TEST(PartSetParse, CanonicalForms) {
  EXPECT_EQ(parse_part_spec("{1,2}").canonical(), "{1,2}");
  EXPECT_EQ(parse_part_spec(" { 2 , 1 } ").canonical(), "{1,2}");
  EXPECT_EQ(parse_part_spec("{1,1,2}").canonical(), "{1^2,2}");
  EXPECT_EQ(parse_part_spec("{1^2,2^3/4}").canonical(), "{1^2,2^3/4}");
  EXPECT_EQ(parse_part_spec("{1^4/2}").canonical(), "{1^2}");
  EXPECT_EQ(parse_part_spec("N").canonical(), "N");
  EXPECT_EQ(parse_part_spec("N>=1").canonical(), "N");
  EXPECT_EQ(parse_part_spec("1N").canonical(), "N");
  EXPECT_EQ(parse_part_spec("N>=3").canonical(), "N>=3");
  EXPECT_EQ(parse_part_spec("2N").canonical(), "2N");
  EXPECT_EQ(parse_part_spec("odd>=1").canonical(), "odd>=1");
}

TEST(PartSetParse, ZeroWeightEntriesDropped) {
  EXPECT_EQ(parse_part_spec("{1,2^0,3}").canonical(), "{1,3}");
}

TEST(PartSetParse, Tuples) {
  const auto t = parse_tuple_spec("{1,2};N;2N");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(tuple_to_string(t), "{1,2};N;2N");
}

TEST(PartSetParse, Errors) {
  EXPECT_EQ(kind_of(""), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("{1,2"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("{1,2}x"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("M"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("{1^1/0}"), ErrorKind::Syntax);
  EXPECT_EQ(kind_of("{1^0}"), ErrorKind::EmptySet);
  EXPECT_EQ(kind_of("{0,1}"), ErrorKind::ZeroPart);
  EXPECT_EQ(kind_of("N>=0"), ErrorKind::ZeroPart);
  EXPECT_EQ(kind_of("odd>=2"), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of("0N"), ErrorKind::InvalidArgument);
  EXPECT_EQ(kind_of("{99999999999}"), ErrorKind::InvalidArgument);
}

TEST(PartSetParse, SyntaxErrorReportsPosition) {
  try {
    parse_part_spec("{1,2");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.position(), 4u);
    EXPECT_NE(std::string(e.what()).find("position 4"), std::string::npos);
  }
}

TEST(PartSetParse, ZeroPartWhenAllowed) {
  ParseOptions allow;
  allow.allow_zero_part = true;
  EXPECT_TRUE(parse_part_spec("N>=0", allow).has_zero_part());
  EXPECT_TRUE(parse_part_spec("{0,1}", allow).has_zero_part());
  EXPECT_EQ(parse_part_spec("N>=0", allow).canonical(), "N>=0");
}

TEST(PartSetParse, RoundTrip) {
  for (const char* text : {"{1,2}", "{1^2,2}", "{2^3/7,5,9^11}", "N", "N>=4", "3N", "odd>=5"}) {
    const PartSet ps = parse_part_spec(text);
    EXPECT_EQ(parse_part_spec(ps.canonical()), ps) << text;
  }
}

TEST(PartSetProperties, DerivedQuantities) {
  const PartSet a = parse_part_spec("{2,4,6}");
  EXPECT_EQ(a.support_gcd(), 2u);
  EXPECT_FALSE(a.is_aperiodic());
  EXPECT_EQ(a.min_part(), 2u);
  EXPECT_EQ(*a.max_part(), 6u);

  EXPECT_FALSE(parse_part_spec("{1}").weight_sum_exceeds_one());
  EXPECT_FALSE(parse_part_spec("{1^1/2,2^1/2}").weight_sum_exceeds_one());
  EXPECT_TRUE(parse_part_spec("{1^1/2,2^2/3}").weight_sum_exceeds_one());
  EXPECT_EQ(parse_part_spec("{1^1/2,2^2/3}").weight_denominator(), 6);
  EXPECT_FALSE(parse_part_spec("N").max_part().has_value());
  EXPECT_EQ(parse_part_spec("5N").support_gcd(), 5u);
  EXPECT_EQ(parse_part_spec("N>=7").support_gcd(), 1u);
}

TEST(PartSetProperties, GcdOfPairsMatchesStd) {
  for (unsigned a = 1; a <= 30; ++a) {
    for (unsigned b = a + 1; b <= 30; ++b) {
      const PartSet ps = PartSet::finite({{a, 1}, {b, 1}});
      EXPECT_EQ(ps.support_gcd(), std::gcd(a, b));
      EXPECT_EQ(ps.is_aperiodic(), std::gcd(a, b) == 1);
    }
  }
}

TEST(PartSetProperties, ValidateForAsymptotics) {
  EXPECT_NO_THROW(validate_for_asymptotics(parse_part_spec("{1,2}")));
  try {
    validate_for_asymptotics(parse_part_spec("{2,4}"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Periodic);
  }
  try {
    validate_for_asymptotics(parse_part_spec("{3}"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSupercritical);
  }
}

TEST(Coefficients, Families) {
  const PartSet odd = parse_part_spec("odd>=3");
  EXPECT_EQ(coefficient(odd, 1), 0);
  EXPECT_EQ(coefficient(odd, 3), 1);
  EXPECT_EQ(coefficient(odd, 4), 0);
  EXPECT_EQ(coefficient(parse_part_spec("3N"), 0), 0);
  EXPECT_EQ(coefficient(parse_part_spec("3N"), 9), 1);
  EXPECT_EQ(coefficient(parse_part_spec("{1^2,2^3/4}"), 2), mpq_class(3, 4));
  EXPECT_EQ(coefficient(parse_part_spec("N>=2"), 1), 0);
}

// Truncated power series plus tail bound must bracket the closed form.
TEST(Evaluate, SeriesAgreesWithClosedForm) {
  const mpq_class x(2, 5);
  for (const char* text : {"N", "N>=3", "4N", "odd>=1", "odd>=5"}) {
    const PartSet ps = parse_part_spec(text);
    const std::uint64_t cutoff = 60;
    mpq_class partial = 0;
    mpq_class power = 1;
    for (std::uint64_t j = 0; j <= cutoff; ++j) {
      partial += coefficient(ps, j) * power;
      power *= x;
    }
    const mpq_class exact = evaluate_p_exact(ps, x, 0);
    EXPECT_LE(partial, exact) << text;
    EXPECT_LE(exact, partial + tail_bound(ps, x, cutoff)) << text;
  }
}

TEST(Evaluate, DerivativesByFiniteDifferences) {
  // p = z^d/(1-z^s) against derivatives of the explicit rational function.
  const PartSet ps = parse_part_spec("N>=2");
  const mpq_class x(1, 3);
  // z^2/(1-z): p' = (2z - z^2)/(1-z)^2, p'' = 2/(1-z)^3
  const mpq_class one_minus = 1 - x;
  EXPECT_EQ(evaluate_p_exact(ps, x, 1), (2 * x - x * x) / (one_minus * one_minus));
  EXPECT_EQ(evaluate_p_exact(ps, x, 2), 2 / (one_minus * one_minus * one_minus));
  const PartSet fin = parse_part_spec("{1,2^3}");
  EXPECT_EQ(evaluate_p_exact(fin, x, 0), x + 3 * x * x);
  EXPECT_EQ(evaluate_p_exact(fin, x, 1), 1 + 6 * x);
  EXPECT_EQ(evaluate_p_exact(fin, x, 2), 6);
}

TEST(Evaluate, IntervalEnclosesExact) {
  const mpq_class x(1, 2);
  for (const char* text : {"{1,2}", "N", "3N", "odd>=1"}) {
    const PartSet ps = parse_part_spec(text);
    for (int order = 0; order <= 2; ++order) {
      const Interval v = evaluate_p(ps, x, order, 100);
      EXPECT_TRUE(v.contains(evaluate_p_exact(ps, x, order))) << text << " order " << order;
      mpq_class bound(1);
      bound /= mpz_class(1) << 100;
      EXPECT_LE(v.width_q(), bound);
    }
  }
}

TEST(Evaluate, DomainErrors) {
  EXPECT_THROW(evaluate_p_exact(parse_part_spec("N"), 1, 0), Error);
  EXPECT_THROW(evaluate_p_exact(parse_part_spec("N"), -1, 0), Error);
  EXPECT_THROW(evaluate_p_exact(parse_part_spec("{1}"), mpq_class(1, 2), 3), Error);
  EXPECT_NO_THROW(evaluate_p_exact(parse_part_spec("{1}"), 5, 0));
}

}  // namespace
}  // namespace compeq
