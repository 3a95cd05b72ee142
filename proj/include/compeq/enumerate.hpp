#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "compeq/partset.hpp"

namespace compeq {

struct EnumerationOptions {
  std::size_t n_max_cap = 10000;
  // Lets equal_parts_count accept coordinates containing part 0.
  bool allow_zero_part = false;
};

/// One row (fixed n) of the bivariate count P_{n,k}.
///
/// Values are stored scaled, as P_{n,k} * L^k with L the weight denominator
/// of the part set, so the recurrence runs on integers even for rational
/// weights. Only k in [k_lo, k_hi] is stored; counts outside are zero.
class CountRow {
 public:
  CountRow() = default;
  CountRow(std::size_t n, std::size_t k_lo, std::vector<mpz_class> scaled, mpz_class denominator);

  std::size_t n() const noexcept { return n_; }
  std::size_t k_lo() const noexcept { return k_lo_; }
  // One past the last stored k.
  std::size_t k_end() const noexcept { return k_lo_ + scaled_.size(); }
  bool empty() const noexcept { return scaled_.empty(); }

  const mpz_class& scaled(std::size_t k) const;
  const mpz_class& denominator() const noexcept { return denominator_; }
  mpq_class count(std::size_t k) const;  // P_{n,k}
  mpq_class total() const;               // P_n

 private:
  std::size_t n_ = 0;
  std::size_t k_lo_ = 0;
  std::vector<mpz_class> scaled_;
  mpz_class denominator_ = 1;
};

class CountTable {
 public:
  CountTable(PartSet part_set, std::vector<CountRow> rows);

  const PartSet& part_set() const noexcept { return part_set_; }
  std::size_t n_max() const noexcept { return rows_.size() - 1; }
  const CountRow& row(std::size_t n) const { return rows_.at(n); }
  mpq_class count(std::size_t n, std::size_t k) const { return row(n).count(k); }
  mpq_class total(std::size_t n) const { return row(n).total(); }

 private:
  PartSet part_set_;
  std::vector<CountRow> rows_;
};

struct EqualTupleResult {
  std::vector<std::string> tuple;  // canonical coordinate specs
  std::size_t n = 0;
  mpq_class d_n;
  std::optional<mpq_class> pi_n;
};

struct PartsDistribution {
  std::size_t n = 0;
  std::map<std::size_t, mpq_class> pmf;  // nonzero entries only
  mpq_class mean;
  mpq_class variance;
};

// Full table for n = 0..n_max. For sets containing part 0, `k_cap` bounds the
// stored k and is required.
CountTable part_count_table(const PartSet& ps, std::size_t n_max,
                            const EnumerationOptions& options = {},
                            std::optional<std::size_t> k_cap = std::nullopt);

// Row n only, keeping a sliding window of previous rows.
CountRow part_count_row(const PartSet& ps, std::size_t n, const EnumerationOptions& options = {},
                        std::optional<std::size_t> k_cap = std::nullopt);

// P_0..P_{n_max} by the univariate recurrence P_n = sum_j p_j P_{n-j}.
std::vector<mpq_class> composition_counts(const PartSet& ps, std::size_t n_max,
                                          const EnumerationOptions& options = {});

EqualTupleResult equal_parts_count(std::span<const PartSet> tuple, std::size_t n,
                                   const EnumerationOptions& options = {});
EqualTupleResult equal_parts_probability(std::span<const PartSet> tuple, std::size_t n,
                                         const EnumerationOptions& options = {});

// D_0..D_{n_max} and pi_0..pi_{n_max} from memoized tables.
std::vector<mpq_class> equal_parts_counts(std::span<const PartSet> tuple, std::size_t n_max,
                                          const EnumerationOptions& options = {});
std::vector<std::optional<mpq_class>> equal_parts_probabilities(
    std::span<const PartSet> tuple, std::size_t n_max, const EnumerationOptions& options = {});

PartsDistribution parts_distribution(const PartSet& ps, std::size_t n,
                                     const EnumerationOptions& options = {});

// Weighted count of tuples whose part counts satisfy k_1 >= k_2 >= ... >= k_m.
mpq_class decreasing_parts_count(std::span<const PartSet> tuple, std::size_t n,
                                 const EnumerationOptions& options = {});

/// Memoized count tables keyed by (canonical spec, n_max). A request is
/// served by any cached table for the same set with n_max at least as large.
/// Safe for concurrent readers; construction happens outside the lock.
class TableCache {
 public:
  std::shared_ptr<const CountTable> get(const PartSet& ps, std::size_t n_max,
                                        const EnumerationOptions& options = {},
                                        std::optional<std::size_t> k_cap = std::nullopt);
  std::size_t size() const;
  void clear();

 private:
  using Key = std::tuple<std::string, std::size_t, std::size_t>;  // spec, k_cap, n_max
  mutable std::shared_mutex mutex_;
  std::map<Key, std::shared_ptr<const CountTable>> tables_;
};

TableCache& default_table_cache();

}  // namespace compeq
