#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "compeq/enumerate.hpp"
#include "compeq/error.hpp"
#include "support/brute_force.hpp"

namespace compeq {
namespace {

mpz_class binom(unsigned long n, unsigned long k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

ErrorKind error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorKind::InvalidArgument;
}

TEST(CountTable, SmallFiniteSet) {
  const auto table = part_count_table(parse_part_spec("{1,2,3,4,10}"), 10);
  EXPECT_EQ(table.count(5, 3), 6);
  EXPECT_EQ(table.count(0, 0), 1);
  EXPECT_EQ(table.count(3, 0), 0);
  EXPECT_EQ(table.count(3, 7), 0);
}

TEST(CountTable, AllPartsAreBinomials) {
  const auto table = part_count_table(PartSet::all_parts(), 20);
  for (unsigned n = 1; n <= 20; ++n) {
    for (unsigned k = 1; k <= n; ++k) EXPECT_EQ(table.count(n, k), binom(n - 1, k - 1));
  }
}

TEST(CountTable, OneTwoGivesFibonacci) {
  const auto counts = composition_counts(parse_part_spec("{1,2}"), 40);
  mpz_class a = 1, b = 1;  // F_1, F_2
  for (std::size_t n = 0; n <= 40; ++n) {
    EXPECT_EQ(counts[n], a) << n;
    const mpz_class next = a + b;
    a = b;
    b = next;
  }
}

TEST(CountTable, RowSumsMatchUnivariateCounts) {
  for (const char* text : {"{1,2}", "{1^2,2^3/4}", "N", "N>=3", "3N", "odd>=1", "{2,5,7}"}) {
    const PartSet ps = parse_part_spec(text);
    const auto table = part_count_table(ps, 30);
    const auto totals = composition_counts(ps, 30);
    for (std::size_t n = 0; n <= 30; ++n) EXPECT_EQ(table.total(n), totals[n]) << text << n;
  }
}

TEST(CountTable, SatisfiesFirstPartRecurrence) {
  for (const char* text : {"{1^2,2^3/4}", "N>=2", "2N", "odd>=3"}) {
    const PartSet ps = parse_part_spec(text);
    const auto table = part_count_table(ps, 25);
    for (std::size_t n = 1; n <= 25; ++n) {
      for (std::size_t k = 1; k <= n; ++k) {
        mpq_class expect = 0;
        for (std::size_t j = 1; j <= n; ++j) expect += coefficient(ps, j) * table.count(n - j, k - 1);
        EXPECT_EQ(table.count(n, k), expect) << text << " n=" << n << " k=" << k;
      }
    }
  }
}

TEST(CountTable, StreamingRowMatchesTable) {
  for (const char* text : {"{1,2}", "N", "odd>=1", "{1^1/2,3^5/3}"}) {
    const PartSet ps = parse_part_spec(text);
    const auto table = part_count_table(ps, 60);
    for (std::size_t n : {0u, 1u, 7u, 33u, 60u}) {
      const CountRow row = part_count_row(ps, n);
      for (std::size_t k = 0; k <= n; ++k) EXPECT_EQ(row.count(k), table.count(n, k));
    }
  }
}

TEST(CountTable, AgreesWithBruteForce) {
  for (const char* text : {"{1,2}", "{1^2,2}", "{2^3/4,3}", "N", "N>=2", "2N", "odd>=1"}) {
    const PartSet ps = parse_part_spec(text);
    const auto table = part_count_table(ps, 12);
    for (std::size_t n = 0; n <= 12; ++n) {
      const auto hist = testing::part_histogram(ps, n, n);
      for (std::size_t k = 0; k <= n; ++k) {
        const auto it = hist.find(k);
        EXPECT_EQ(table.count(n, k), it == hist.end() ? mpq_class(0) : it->second)
            << text << " n=" << n << " k=" << k;
      }
    }
  }
}

TEST(CountTable, CapacityGuard) {
  EnumerationOptions options;
  options.n_max_cap = 50;
  EXPECT_EQ(error_of([&] { part_count_table(PartSet::all_parts(), 51, options); }),
            ErrorKind::CapacityExceeded);
  EXPECT_EQ(error_of([&] { part_count_row(PartSet::all_parts(), 51, options); }),
            ErrorKind::CapacityExceeded);
  EXPECT_NO_THROW(part_count_table(PartSet::all_parts(), 50, options));
}

TEST(EqualParts, SeriesForOneTwoPair) {
  const auto pair = parse_tuple_spec("{1,2};{1,2}");
  const std::vector<long> expect{1, 1, 2, 5, 11, 26, 63, 153, 376, 931};
  const auto seq = equal_parts_counts(pair, 9);
  for (std::size_t n = 0; n < expect.size(); ++n) {
    EXPECT_EQ(seq[n], expect[n]);
    EXPECT_EQ(equal_parts_count(pair, n).d_n, expect[n]);
  }
}

TEST(EqualParts, UnrestrictedPairProbability) {
  const auto pair = parse_tuple_spec("N;N");
  EXPECT_EQ(*equal_parts_probability(pair, 3).pi_n, mpq_class(3, 8));
  for (unsigned n = 1; n <= 60; ++n) {
    mpz_class four_pow;
    mpz_ui_pow_ui(four_pow.get_mpz_t(), 4, n - 1);
    mpq_class expect(binom(2 * n - 2, n - 1), four_pow);
    expect.canonicalize();
    EXPECT_EQ(*equal_parts_probability(pair, n).pi_n, expect);
  }
}

TEST(EqualParts, UndefinedWhenSomeCoordinateIsEmpty) {
  const auto pair = parse_tuple_spec("2N;{1,2}");
  EXPECT_EQ(error_of([&] { equal_parts_probability(pair, 3); }), ErrorKind::UndefinedProbability);
  EXPECT_EQ(equal_parts_count(pair, 3).d_n, 0);
  const auto pis = equal_parts_probabilities(pair, 4);
  EXPECT_FALSE(pis[3].has_value());
  EXPECT_TRUE(pis[4].has_value());
}

TEST(EqualParts, SingleCoordinateIsTotal) {
  const PartSet ps = parse_part_spec("{1,3^2}");
  const std::vector<PartSet> one{ps};
  const auto totals = composition_counts(ps, 20);
  for (std::size_t n = 0; n <= 20; ++n) {
    EXPECT_EQ(equal_parts_count(one, n).d_n, totals[n]);
    if (totals[n] != 0) EXPECT_EQ(*equal_parts_probability(one, n).pi_n, 1);
  }
}

TEST(EqualParts, InvariantUnderPermutation) {
  auto tuple = parse_tuple_spec("{1,2};N>=2;{1^3/2,4}");
  const auto base = equal_parts_counts(tuple, 30);
  std::sort(tuple.begin(), tuple.end(),
            [](const PartSet& a, const PartSet& b) { return a.canonical() < b.canonical(); });
  do {
    EXPECT_EQ(equal_parts_counts(tuple, 30), base);
  } while (std::next_permutation(tuple.begin(), tuple.end(), [](const PartSet& a, const PartSet& b) {
    return a.canonical() < b.canonical();
  }));
}

TEST(EqualParts, BoundedByProductOfTotals) {
  const auto tuple = parse_tuple_spec("{1,2};N;odd>=1");
  for (std::size_t n = 0; n <= 40; ++n) {
    mpq_class product = 1;
    for (const auto& ps : tuple) product *= composition_counts(ps, n)[n];
    const mpq_class d = equal_parts_count(tuple, n).d_n;
    EXPECT_LE(d, product);
    EXPECT_GE(d, 0);
  }
}

TEST(EqualParts, AgreesWithBruteForce) {
  const char* tuples[] = {"{1,2};{1,2}",  "{1^2,2};{1^2,2}", "{1,2};N",  "N;N",
                          "{1,2};{1,2^2}", "N;2N",            "odd>=1;odd>=1",
                          "N>=2;N>=2",    "{1,2};{1,2};{1,2}", "{1^2,2^3};{1^3,2^5}",
                          "{2^3/4,3};N"};
  for (const char* text : tuples) {
    const auto tuple = parse_tuple_spec(text);
    for (std::size_t n = 0; n <= 10; ++n) {
      EXPECT_EQ(equal_parts_count(tuple, n).d_n, testing::brute_equal_count(tuple, n))
          << text << " n=" << n;
    }
  }
}

TEST(EqualParts, SmallReferenceValues) {
  const auto delannoy = equal_parts_counts(parse_tuple_spec("{1^2,2};{1^2,2}"), 3);
  EXPECT_EQ(delannoy, (std::vector<mpq_class>{1, 4, 17, 80}));
  const auto meanders = equal_parts_counts(parse_tuple_spec("{1,2};N"), 4);
  EXPECT_EQ(meanders, (std::vector<mpq_class>{1, 1, 2, 5, 13}));
}

TEST(EqualParts, ZeroPartCoordinate) {
  ParseOptions parse;
  parse.allow_zero_part = true;
  EnumerationOptions options;
  options.allow_zero_part = true;
  const auto tuple = parse_tuple_spec("N;N>=0", parse);
  for (std::size_t n = 0; n <= 6; ++n) {
    EXPECT_EQ(equal_parts_count(tuple, n, options).d_n, testing::brute_equal_count(tuple, n))
        << n;
  }
  const auto finite = parse_tuple_spec("{0,1,2};{1,2}", parse);
  for (std::size_t n = 0; n <= 6; ++n) {
    EXPECT_EQ(equal_parts_count(finite, n, options).d_n, testing::brute_equal_count(finite, n));
  }
  EXPECT_EQ(error_of([&] { equal_parts_count(tuple, 3); }), ErrorKind::ZeroPart);
  const auto both = parse_tuple_spec("N>=0;N>=0", parse);
  EXPECT_EQ(error_of([&] { equal_parts_count(both, 3, options); }), ErrorKind::ZeroPart);
}

TEST(EqualParts, EmptyTupleRejected) {
  const std::vector<PartSet> none;
  EXPECT_EQ(error_of([&] { equal_parts_count(none, 3); }), ErrorKind::InvalidArgument);
}

TEST(Distribution, OneTwoAtThree) {
  const auto d = parts_distribution(parse_part_spec("{1,2}"), 3);
  ASSERT_EQ(d.pmf.size(), 2u);
  EXPECT_EQ(d.pmf.at(2), mpq_class(2, 3));
  EXPECT_EQ(d.pmf.at(3), mpq_class(1, 3));
  EXPECT_EQ(d.mean, mpq_class(7, 3));
  EXPECT_EQ(d.variance, mpq_class(2, 9));
}

TEST(Distribution, SumsToOneAndMatchesBruteForce) {
  for (const char* text : {"N", "{1^2,3^1/2}", "odd>=1", "N>=3"}) {
    const PartSet ps = parse_part_spec(text);
    for (std::size_t n = 3; n <= 11; ++n) {
      const auto d = parts_distribution(ps, n);
      mpq_class total = 0;
      for (const auto& [k, p] : d.pmf) total += p;
      EXPECT_EQ(total, 1);
      const auto hist = testing::part_histogram(ps, n, n);
      const mpq_class all = testing::brute_total(ps, n);
      for (const auto& [k, w] : hist) EXPECT_EQ(d.pmf.at(k), w / all);
    }
  }
}

TEST(Distribution, NoCompositions) {
  EXPECT_EQ(error_of([] { parts_distribution(parse_part_spec("2N"), 3); }),
            ErrorKind::NoCompositions);
}

TEST(Distribution, SingleValueHasZeroVariance) {
  const auto d = parts_distribution(parse_part_spec("{3}"), 9);
  EXPECT_EQ(d.variance, 0);
  EXPECT_EQ(d.mean, 3);
}

TEST(Decreasing, ReferenceValues) {
  EXPECT_EQ(decreasing_parts_count(parse_tuple_spec("{1,2};{1,2}"), 3), 7);
  EXPECT_EQ(decreasing_parts_count(parse_tuple_spec("N;N"), 2), 3);
}

TEST(Decreasing, AgreesWithBruteForce) {
  for (const char* text : {"N;N", "{1,2};N", "{1^2,2};{1,3};N>=2", "N;{1,2};2N"}) {
    const auto tuple = parse_tuple_spec(text);
    for (std::size_t n = 0; n <= 9; ++n) {
      EXPECT_EQ(decreasing_parts_count(tuple, n), testing::brute_decreasing_count(tuple, n))
          << text << " n=" << n;
    }
  }
}

TEST(Decreasing, AtLeastEqualCount) {
  const auto tuple = parse_tuple_spec("{1,2};{1,2};N");
  for (std::size_t n = 0; n <= 20; ++n) {
    EXPECT_GE(decreasing_parts_count(tuple, n), equal_parts_count(tuple, n).d_n);
  }
}

TEST(TableCache, ServesSmallerRequestsFromLargerTable) {
  TableCache cache;
  const PartSet ps = parse_part_spec("{1,2}");
  const auto big = cache.get(ps, 50);
  const auto small = cache.get(ps, 20);
  EXPECT_EQ(big.get(), small.get());
  EXPECT_EQ(cache.size(), 1u);
  const auto bigger = cache.get(ps, 80);
  EXPECT_NE(bigger.get(), big.get());
  EXPECT_GE(bigger->n_max(), 80u);
  cache.clear();
  EXPECT_EQ(cache.size(), 0u);
}

}  // namespace
}  // namespace compeq
