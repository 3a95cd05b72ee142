#include "compeq/enumerate.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>

#include "compeq/error.hpp"

namespace compeq {
namespace {

const mpz_class& zero_mpz() {
  static const mpz_class zero = 0;
  return zero;
}

constexpr std::size_t kNoCap = std::numeric_limits<std::size_t>::max();

void check_capacity(std::size_t n, const EnumerationOptions& options) {
  if (n > options.n_max_cap) {
    throw Error(ErrorKind::CapacityExceeded, "n = " + std::to_string(n) +
                                                 " exceeds the capacity ceiling " +
                                                 std::to_string(options.n_max_cap));
  }
}

/// Builds rows of the scaled count P_{n,k} L^k one n at a time.
///
/// Finite sets use the defining convolution over the support. Infinite
/// families use the short recurrences read off p(z) = z^d / (1 - z^s):
///   Tail(d):        Q[n][k] = Q[n-1][k] + Q[n-d][k-1]
///   Progression(d): Q[n][k] = Q[n-d][k] + Q[n-d][k-1]
///   OddTail(d):     Q[n][k] = Q[n-2][k] + Q[n-d][k-1]
/// valid for every k >= 1, with Q[0][0] = 1 and Q[n][0] = 0 for n >= 1.
class RowBuilder {
 public:
  using PrevRow = std::function<const CountRow*(std::size_t back)>;

  RowBuilder(const PartSet& ps, std::optional<std::size_t> k_cap) : ps_(ps) {
    if (ps.has_zero_part() && !k_cap) {
      throw Error(ErrorKind::ZeroPart, ps.canonical() + ": part 0 requires a bound on k");
    }
    k_cap_ = k_cap.value_or(kNoCap);
    if (ps.family() == Family::Finite) {
      for (const auto& e : ps.spec().entries) {
        mpz_class w = e.weight.get_num() * (ps.weight_denominator() / e.weight.get_den());
        weights_.emplace_back(e.part, std::move(w));
      }
    }
  }

  std::size_t history() const {
    const std::size_t d = ps_.spec().d;
    switch (ps_.family()) {
      case Family::Finite: return *ps_.max_part();
      case Family::AllParts:
      case Family::Tail: return std::max<std::size_t>(d, 1);
      case Family::Progression: return d;
      case Family::OddTail: return std::max<std::size_t>(d, 2);
    }
    return 1;
  }

  std::pair<std::size_t, std::size_t> k_range(std::size_t n) const {
    std::size_t lo = 0;
    std::size_t hi = 0;
    if (n > 0) {
      const auto max_part = ps_.max_part();
      if (max_part && *max_part == 0) return {1, 0};  // only part 0: nothing reaches n > 0
      lo = max_part ? (n + *max_part - 1) / *max_part : 1;
      hi = ps_.has_zero_part() ? kNoCap : n / ps_.min_part();
    } else {
      hi = ps_.has_zero_part() ? kNoCap : 0;
    }
    hi = std::min(hi, k_cap_);
    return {lo, hi};
  }

  CountRow build(std::size_t n, const PrevRow& prev) const {
    const auto [lo, hi] = k_range(n);
    std::vector<mpz_class> vals(lo <= hi ? hi - lo + 1 : 0);
    auto scaled_at = [&prev, n](std::size_t back, std::size_t k) -> const mpz_class& {
      if (back > n || back == 0) return zero_mpz();
      const CountRow* row = prev(back);
      return row ? row->scaled(k) : zero_mpz();
    };
    auto current = [&vals, lo = lo](std::size_t k) -> const mpz_class& {
      return k >= lo && k - lo < vals.size() ? vals[k - lo] : zero_mpz();
    };
    const std::size_t d = ps_.spec().d;

    for (std::size_t k = lo; k <= hi && k != kNoCap; ++k) {
      mpz_class& out = vals[k - lo];
      if (k == 0) {
        out = n == 0 ? 1 : 0;
        continue;
      }
      switch (ps_.family()) {
        case Family::Finite:
          for (const auto& [part, w] : weights_) {
            if (part > n) break;
            const mpz_class& src = part == 0 ? current(k - 1) : scaled_at(part, k - 1);
            if (src == 0) continue;
            if (w == 1) {
              mpz_add(out.get_mpz_t(), out.get_mpz_t(), src.get_mpz_t());
            } else {
              mpz_addmul(out.get_mpz_t(), src.get_mpz_t(), w.get_mpz_t());
            }
          }
          break;
        case Family::AllParts:
        case Family::Tail:
          out = scaled_at(1, k);
          out += d == 0 ? current(k - 1) : scaled_at(d, k - 1);
          break;
        case Family::Progression:
          out = scaled_at(d, k);
          out += scaled_at(d, k - 1);
          break;
        case Family::OddTail:
          out = scaled_at(2, k);
          out += scaled_at(d, k - 1);
          break;
      }
    }
    return CountRow(n, lo, std::move(vals), ps_.weight_denominator());
  }

 private:
  const PartSet& ps_;
  std::size_t k_cap_ = kNoCap;
  std::vector<std::pair<Part, mpz_class>> weights_;
};

// Largest k any composition of n can have in a coordinate without part 0,
// which bounds k for the coordinates that do admit it.
std::optional<std::size_t> zero_part_k_cap(std::span<const PartSet> tuple, std::size_t n,
                                           const EnumerationOptions& options) {
  bool any_zero = false;
  std::size_t cap = kNoCap;
  for (const auto& ps : tuple) {
    if (ps.has_zero_part()) {
      any_zero = true;
    } else {
      cap = std::min(cap, n / ps.min_part());
    }
  }
  if (!any_zero) return std::nullopt;
  if (!options.allow_zero_part) {
    throw Error(ErrorKind::ZeroPart, "a coordinate admits part 0; enable allow_zero_part");
  }
  if (cap == kNoCap) {
    throw Error(ErrorKind::ZeroPart, "every coordinate admits part 0; the count diverges");
  }
  return cap;
}

void require_no_zero_part(std::span<const PartSet> tuple) {
  for (const auto& ps : tuple) {
    if (ps.has_zero_part()) {
      throw Error(ErrorKind::ZeroPart,
                  ps.canonical() + ": part 0 makes the number of compositions infinite");
    }
  }
}

void require_nonempty(std::span<const PartSet> tuple) {
  if (tuple.empty()) throw Error(ErrorKind::InvalidArgument, "tuple must have m >= 1 coordinates");
}

// sum_k prod_i P^{(i)}_{n,k}, with the scaling L_i^k undone exactly.
mpq_class diagonal_sum(const std::vector<const CountRow*>& rows) {
  std::size_t lo = 0;
  std::size_t end = kNoCap;
  mpz_class denominator = 1;
  for (const CountRow* r : rows) {
    lo = std::max(lo, r->k_lo());
    end = std::min(end, r->k_end());
    denominator *= r->denominator();
  }
  if (lo >= end) return 0;

  mpz_class sum = 0;
  mpz_class term;
  if (denominator == 1) {
    for (std::size_t k = lo; k < end; ++k) {
      term = rows.front()->scaled(k);
      for (std::size_t i = 1; i < rows.size() && term != 0; ++i) term *= rows[i]->scaled(k);
      sum += term;
    }
    return mpq_class(sum);
  }
  // Horner: sum == sum_k term_k * denominator^(end-1-k).
  for (std::size_t k = lo; k < end; ++k) {
    term = rows.front()->scaled(k);
    for (std::size_t i = 1; i < rows.size(); ++i) term *= rows[i]->scaled(k);
    sum = sum * denominator + term;
  }
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), denominator.get_mpz_t(), end - 1);
  mpq_class result(sum, den);
  result.canonicalize();
  return result;
}

struct TupleRows {
  std::vector<CountRow> distinct;
  std::vector<const CountRow*> per_coordinate;
};

TupleRows rows_for_tuple(std::span<const PartSet> tuple, std::size_t n,
                         const EnumerationOptions& options, std::optional<std::size_t> k_cap) {
  TupleRows out;
  std::vector<std::size_t> index(tuple.size());
  std::vector<std::string> seen;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    auto it = std::find(seen.begin(), seen.end(), tuple[i].canonical());
    if (it != seen.end()) {
      index[i] = static_cast<std::size_t>(it - seen.begin());
      continue;
    }
    seen.push_back(tuple[i].canonical());
    index[i] = out.distinct.size();
    out.distinct.push_back(part_count_row(
        tuple[i], n, options, tuple[i].has_zero_part() ? k_cap : std::nullopt));
  }
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    out.per_coordinate.push_back(&out.distinct[index[i]]);
  }
  return out;
}

std::vector<std::string> canonical_names(std::span<const PartSet> tuple) {
  std::vector<std::string> names;
  for (const auto& ps : tuple) names.push_back(ps.canonical());
  return names;
}

std::optional<mpq_class> probability_from(const mpq_class& d_n,
                                          const std::vector<const CountRow*>& rows) {
  mpq_class denominator = 1;
  for (const CountRow* r : rows) {
    mpq_class total = r->total();
    if (total == 0) return std::nullopt;
    denominator *= total;
  }
  return mpq_class(d_n / denominator);
}

}  // namespace

CountRow::CountRow(std::size_t n, std::size_t k_lo, std::vector<mpz_class> scaled,
                   mpz_class denominator)
    : n_(n), k_lo_(k_lo), scaled_(std::move(scaled)), denominator_(std::move(denominator)) {}

const mpz_class& CountRow::scaled(std::size_t k) const {
  if (k < k_lo_ || k - k_lo_ >= scaled_.size()) return zero_mpz();
  return scaled_[k - k_lo_];
}

mpq_class CountRow::count(std::size_t k) const {
  const mpz_class& v = scaled(k);
  if (denominator_ == 1 || v == 0) return mpq_class(v);
  mpz_class den;
  mpz_pow_ui(den.get_mpz_t(), denominator_.get_mpz_t(), k);
  mpq_class q(v, den);
  q.canonicalize();
  return q;
}

mpq_class CountRow::total() const {
  if (denominator_ == 1) {
    mpz_class sum = 0;
    for (const auto& v : scaled_) sum += v;
    return mpq_class(sum);
  }
  mpq_class sum = 0;
  for (std::size_t k = k_lo_; k < k_end(); ++k) sum += count(k);
  return sum;
}

CountTable::CountTable(PartSet part_set, std::vector<CountRow> rows)
    : part_set_(std::move(part_set)), rows_(std::move(rows)) {
  if (rows_.empty()) throw Error(ErrorKind::InvalidArgument, "count table needs row 0");
}

CountTable part_count_table(const PartSet& ps, std::size_t n_max,
                            const EnumerationOptions& options,
                            std::optional<std::size_t> k_cap) {
  check_capacity(n_max, options);
  RowBuilder builder(ps, k_cap);
  std::vector<CountRow> rows;
  rows.reserve(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) {
    rows.push_back(builder.build(n, [&rows, n](std::size_t back) { return &rows[n - back]; }));
  }
  return CountTable(ps, std::move(rows));
}

CountRow part_count_row(const PartSet& ps, std::size_t n, const EnumerationOptions& options,
                        std::optional<std::size_t> k_cap) {
  check_capacity(n, options);
  RowBuilder builder(ps, k_cap);
  const std::size_t window = builder.history();
  std::deque<CountRow> rows;
  for (std::size_t i = 0; i <= n; ++i) {
    CountRow next = builder.build(i, [&rows](std::size_t back) -> const CountRow* {
      return back <= rows.size() ? &rows[rows.size() - back] : nullptr;
    });
    if (i == n) return next;
    rows.push_back(std::move(next));
    if (rows.size() > window) rows.pop_front();
  }
  return {};  // unreachable
}

std::vector<mpq_class> composition_counts(const PartSet& ps, std::size_t n_max,
                                          const EnumerationOptions& options) {
  check_capacity(n_max, options);
  require_no_zero_part(std::span<const PartSet>(&ps, 1));
  // R_n = P_n L^n is an integer: each composition of n has at most n parts.
  const mpz_class& L = ps.weight_denominator();
  std::vector<mpz_class> scaled_weight(n_max + 1);
  mpz_class L_pow = 1;  // L^(j-1)
  for (std::size_t j = 1; j <= n_max; ++j) {
    const mpq_class p = coefficient(ps, j);
    if (p != 0) scaled_weight[j] = p.get_num() * (L / p.get_den()) * L_pow;
    L_pow *= L;
  }
  std::vector<mpz_class> r(n_max + 1);
  r[0] = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t j = 1; j <= n; ++j) {
      if (scaled_weight[j] != 0) mpz_addmul(r[n].get_mpz_t(), scaled_weight[j].get_mpz_t(),
                                            r[n - j].get_mpz_t());
    }
  }
  std::vector<mpq_class> out(n_max + 1);
  mpz_class den = 1;
  for (std::size_t n = 0; n <= n_max; ++n) {
    out[n] = mpq_class(r[n], den);
    out[n].canonicalize();
    den *= L;
  }
  return out;
}

EqualTupleResult equal_parts_count(std::span<const PartSet> tuple, std::size_t n,
                                   const EnumerationOptions& options) {
  require_nonempty(tuple);
  check_capacity(n, options);
  const auto k_cap = zero_part_k_cap(tuple, n, options);
  TupleRows rows = rows_for_tuple(tuple, n, options, k_cap);
  return EqualTupleResult{canonical_names(tuple), n, diagonal_sum(rows.per_coordinate),
                          std::nullopt};
}

EqualTupleResult equal_parts_probability(std::span<const PartSet> tuple, std::size_t n,
                                         const EnumerationOptions& options) {
  require_nonempty(tuple);
  require_no_zero_part(tuple);
  check_capacity(n, options);
  TupleRows rows = rows_for_tuple(tuple, n, options, std::nullopt);
  EqualTupleResult result{canonical_names(tuple), n, diagonal_sum(rows.per_coordinate),
                          std::nullopt};
  result.pi_n = probability_from(result.d_n, rows.per_coordinate);
  if (!result.pi_n) {
    throw Error(ErrorKind::UndefinedProbability,
                "some coordinate has no composition of n = " + std::to_string(n));
  }
  return result;
}

namespace {

std::vector<std::shared_ptr<const CountTable>> tables_for_tuple(
    std::span<const PartSet> tuple, std::size_t n_max, const EnumerationOptions& options,
    std::optional<std::size_t> k_cap) {
  std::vector<std::shared_ptr<const CountTable>> tables;
  for (const auto& ps : tuple) {
    tables.push_back(default_table_cache().get(ps, n_max, options,
                                               ps.has_zero_part() ? k_cap : std::nullopt));
  }
  return tables;
}

}  // namespace

std::vector<mpq_class> equal_parts_counts(std::span<const PartSet> tuple, std::size_t n_max,
                                          const EnumerationOptions& options) {
  require_nonempty(tuple);
  check_capacity(n_max, options);
  const auto k_cap = zero_part_k_cap(tuple, n_max, options);
  const auto tables = tables_for_tuple(tuple, n_max, options, k_cap);
  std::vector<mpq_class> out;
  out.reserve(n_max + 1);
  std::vector<const CountRow*> rows(tuple.size());
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t i = 0; i < tables.size(); ++i) rows[i] = &tables[i]->row(n);
    out.push_back(diagonal_sum(rows));
  }
  return out;
}

std::vector<std::optional<mpq_class>> equal_parts_probabilities(
    std::span<const PartSet> tuple, std::size_t n_max, const EnumerationOptions& options) {
  require_nonempty(tuple);
  require_no_zero_part(tuple);
  check_capacity(n_max, options);
  const auto tables = tables_for_tuple(tuple, n_max, options, std::nullopt);
  std::vector<std::optional<mpq_class>> out;
  out.reserve(n_max + 1);
  std::vector<const CountRow*> rows(tuple.size());
  for (std::size_t n = 0; n <= n_max; ++n) {
    for (std::size_t i = 0; i < tables.size(); ++i) rows[i] = &tables[i]->row(n);
    out.push_back(probability_from(diagonal_sum(rows), rows));
  }
  return out;
}

PartsDistribution parts_distribution(const PartSet& ps, std::size_t n,
                                     const EnumerationOptions& options) {
  require_no_zero_part(std::span<const PartSet>(&ps, 1));
  const CountRow row = part_count_row(ps, n, options);
  const mpq_class total = row.total();
  if (total == 0) {
    throw Error(ErrorKind::NoCompositions,
                ps.canonical() + " has no composition of n = " + std::to_string(n));
  }
  PartsDistribution dist;
  dist.n = n;
  mpq_class second = 0;
  dist.mean = 0;
  for (std::size_t k = row.k_lo(); k < row.k_end(); ++k) {
    if (row.scaled(k) == 0) continue;
    mpq_class pk = row.count(k) / total;
    dist.mean += pk * static_cast<unsigned long>(k);
    second += pk * static_cast<unsigned long>(k) * static_cast<unsigned long>(k);
    dist.pmf.emplace(k, std::move(pk));
  }
  dist.variance = second - dist.mean * dist.mean;
  return dist;
}

mpq_class decreasing_parts_count(std::span<const PartSet> tuple, std::size_t n,
                                 const EnumerationOptions& options) {
  require_nonempty(tuple);
  require_no_zero_part(tuple);
  check_capacity(n, options);
  TupleRows rows = rows_for_tuple(tuple, n, options, std::nullopt);
  std::size_t k_end = 0;
  for (const CountRow* r : rows.per_coordinate) k_end = std::max(k_end, r->k_end());

  // weight[k] accumulates over coordinates i..m with k_i = k and k_i >= ... >= k_m.
  std::vector<mpq_class> weight(k_end);
  for (std::size_t k = 0; k < k_end; ++k) weight[k] = rows.per_coordinate.back()->count(k);
  for (std::size_t i = rows.per_coordinate.size() - 1; i-- > 0;) {
    mpq_class prefix = 0;
    for (std::size_t k = 0; k < k_end; ++k) {
      prefix += weight[k];
      weight[k] = rows.per_coordinate[i]->count(k) * prefix;
    }
  }
  mpq_class sum = 0;
  for (const auto& w : weight) sum += w;
  return sum;
}

std::shared_ptr<const CountTable> TableCache::get(const PartSet& ps, std::size_t n_max,
                                                  const EnumerationOptions& options,
                                                  std::optional<std::size_t> k_cap) {
  const std::size_t cap_key = k_cap.value_or(kNoCap);
  {
    std::shared_lock lock(mutex_);
    auto it = tables_.lower_bound(Key{ps.canonical(), cap_key, n_max});
    if (it != tables_.end() && std::get<0>(it->first) == ps.canonical() &&
        std::get<1>(it->first) == cap_key) {
      return it->second;
    }
  }
  auto table = std::make_shared<const CountTable>(part_count_table(ps, n_max, options, k_cap));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = tables_.emplace(Key{ps.canonical(), cap_key, n_max}, table);
  return it->second;
}

std::size_t TableCache::size() const {
  std::shared_lock lock(mutex_);
  return tables_.size();
}

void TableCache::clear() {
  std::unique_lock lock(mutex_);
  tables_.clear();
}

TableCache& default_table_cache() {
  static TableCache cache;
  return cache;
}

}  // namespace compeq
