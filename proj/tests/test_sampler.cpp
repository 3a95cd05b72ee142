#include <map>
#include <numeric>
#include <vector>

#include <gtest/gtest.h>

#include "compeq/enumerate.hpp"
#include "compeq/error.hpp"
#include "compeq/sampler.hpp"
#include "support/brute_force.hpp"
#include "support/chi_square.hpp"

namespace compeq {
namespace {

using testing::chi_square_p_value;
using testing::Key;
using testing::key_of;

TEST(Sampler, ExactDistributionChiSquare) {
  for (const char* text : {"{1,2}", "{1^2,2^3/4,3}", "N", "N>=2", "2N", "odd>=1", "odd>=3"}) {
    const PartSet ps = parse_part_spec(text);
    for (std::size_t n : {6u, 8u}) {
      if (composition_counts(ps, n)[n] == 0) continue;
      const double p = chi_square_p_value(ps, n, 100000, 20240601 + n);
      EXPECT_GT(p, 1e-6) << text << " n=" << n;
    }
  }
}

TEST(Sampler, OneTwoAtThreeIsUniform) {
  const PartSet ps = parse_part_spec("{1,2}");
  SamplerState state(ps, 3, 99);
  EXPECT_EQ(state.total_weight(), 3);
  std::map<Key, int> counts;
  for (int i = 0; i < 30000; ++i) ++counts[key_of(state.sample())];
  ASSERT_EQ(counts.size(), 3u);
  for (const auto& [k, c] : counts) EXPECT_NEAR(c / 30000.0, 1.0 / 3, 0.015);
  EXPECT_GT(chi_square_p_value(ps, 3, 100000, 5), 1e-6);
}

TEST(Sampler, DeterministicPerSeed) {
  const PartSet ps = parse_part_spec("N>=2");
  SamplerState a(ps, 40, 12345);
  SamplerState b(ps, 40, 12345);
  SamplerState c(ps, 40, 54321);
  bool differs = false;
  for (int i = 0; i < 50; ++i) {
    const auto x = a.sample();
    EXPECT_EQ(x, b.sample());
    differs = differs || x != c.sample();
  }
  EXPECT_TRUE(differs);
}

TEST(Sampler, Errors) {
  EXPECT_THROW(SamplerState(parse_part_spec("2N"), 3, 1), Error);
  try {
    SamplerState(parse_part_spec("2N"), 3, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NoCompositions);
  }
  ParseOptions allow;
  allow.allow_zero_part = true;
  EXPECT_THROW(SamplerState(parse_part_spec("N>=0", allow), 3, 1), Error);
  EXPECT_THROW(SamplerState(parse_part_spec("N"), 200, 1, 100), Error);
}

TEST(Sampler, EmptyCompositionOfZero) {
  SamplerState state(parse_part_spec("{1,2}"), 0, 1);
  EXPECT_TRUE(state.sample().empty());
}

TEST(Sampler, UniformBelowStaysInRange) {
  SamplerState state(parse_part_spec("N"), 1, 7);
  const mpz_class bound("340282366920938463463374607431768211457");  // 2^128 + 1
  for (int i = 0; i < 1000; ++i) {
    const mpz_class v = state.uniform_below(bound);
    EXPECT_GE(v, 0);
    EXPECT_LT(v, bound);
  }
  std::map<long, int> small;
  for (int i = 0; i < 7000; ++i) ++small[state.uniform_below(7).get_si()];
  ASSERT_EQ(small.size(), 7u);
  for (const auto& [v, c] : small) EXPECT_NEAR(c, 1000, 150);
}

TEST(MonteCarlo, PairProbabilityWithinStandardErrors) {
  const auto pair = parse_tuple_spec("N;N");
  const auto r = monte_carlo_pi(pair, 3, 40000, 42);
  EXPECT_EQ(r.trials, 40000u);
  EXPECT_EQ(r.rng, std::string("mt19937_64"));
  EXPECT_LT(std::fabs(r.estimate - 0.375), 4 * r.standard_error);
}

TEST(MonteCarlo, SingleCoordinateAlwaysMatches) {
  const std::vector<PartSet> one{parse_part_spec("{1,2}")};
  const auto r = monte_carlo_pi(one, 20, 100, 1);
  EXPECT_EQ(r.estimate, 1.0);
  EXPECT_EQ(r.standard_error, 0.0);
}

TEST(MonteCarlo, Deterministic) {
  const auto tuple = parse_tuple_spec("{1,2};N;N>=2");
  const auto a = monte_carlo_pi(tuple, 15, 2000, 77);
  const auto b = monte_carlo_pi(tuple, 15, 2000, 77);
  EXPECT_EQ(a.hits, b.hits);
  EXPECT_NE(sub_seed(77, 0), sub_seed(77, 1));
}

TEST(MonteCarlo, Errors) {
  const auto pair = parse_tuple_spec("2N;{1,2}");
  EXPECT_THROW(monte_carlo_pi(pair, 3, 10, 1), Error);
  EXPECT_THROW(monte_carlo_pi(parse_tuple_spec("N;N"), 3, 0, 1), Error);
}

}  // namespace
}  // namespace compeq
