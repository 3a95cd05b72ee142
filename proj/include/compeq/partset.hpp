#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "compeq/interval.hpp"

namespace compeq {

using Part = std::uint32_t;

enum class Family {
  Finite,       // explicit weighted list
  AllParts,     // every positive integer
  Tail,         // parts >= d
  Progression,  // parts in dN
  OddTail,      // odd parts >= d, d odd
};

struct WeightedPart {
  Part part;
  mpq_class weight;

  friend bool operator==(const WeightedPart&, const WeightedPart&) = default;
};

struct PartSetSpec {
  Family family = Family::AllParts;
  std::vector<WeightedPart> entries;  // Finite only
  Part d = 1;                         // Tail, Progression, OddTail

  friend bool operator==(const PartSetSpec&, const PartSetSpec&) = default;
};

struct ParseOptions {
  // Admits part 0 ("N>=0", or 0 inside a finite list). Only equal_parts_count
  // accepts such sets.
  bool allow_zero_part = false;
};

/// A weighted set of allowed parts with the derived quantities every other
/// module needs: support gcd, supercriticality, extreme parts, and the common
/// denominator of the weights. Immutable once built.
class PartSet {
 public:
  // Canonicalizes `spec` (sorts and merges finite entries, drops zero
  // weights, folds N>=1 and 1N into N). Throws Error on invalid input.
  explicit PartSet(PartSetSpec spec, ParseOptions options = {});

  static PartSet all_parts() { return PartSet(PartSetSpec{Family::AllParts, {}, 1}); }
  static PartSet tail(Part d) { return PartSet(PartSetSpec{Family::Tail, {}, d}); }
  static PartSet progression(Part d) { return PartSet(PartSetSpec{Family::Progression, {}, d}); }
  static PartSet odd_tail(Part d) { return PartSet(PartSetSpec{Family::OddTail, {}, d}); }
  static PartSet finite(std::vector<WeightedPart> entries) {
    return PartSet(PartSetSpec{Family::Finite, std::move(entries), 1});
  }

  const PartSetSpec& spec() const noexcept { return spec_; }
  Family family() const noexcept { return spec_.family; }
  const std::string& canonical() const noexcept { return canonical_; }

  std::uint64_t support_gcd() const noexcept { return support_gcd_; }
  bool weight_sum_exceeds_one() const noexcept { return supercritical_; }
  bool is_aperiodic() const noexcept { return support_gcd_ == 1; }
  bool has_zero_part() const noexcept { return min_part_ == 0; }
  Part min_part() const noexcept { return min_part_; }
  std::optional<Part> max_part() const noexcept { return max_part_; }

  // Least common multiple of the weight denominators; 1 for integer weights.
  const mpz_class& weight_denominator() const noexcept { return denominator_; }
  bool has_integer_weights() const { return denominator_ == 1; }

  friend bool operator==(const PartSet& a, const PartSet& b) { return a.spec_ == b.spec_; }

 private:
  PartSetSpec spec_;
  std::string canonical_;
  std::uint64_t support_gcd_ = 1;
  bool supercritical_ = true;
  Part min_part_ = 1;
  std::optional<Part> max_part_;
  mpz_class denominator_ = 1;
};

PartSet parse_part_spec(std::string_view text, ParseOptions options = {});
// Semicolon-separated coordinates.
std::vector<PartSet> parse_tuple_spec(std::string_view text, ParseOptions options = {});
std::string tuple_to_string(std::span<const PartSet> tuple);

// Exact weight p_j (0 outside the support).
mpq_class coefficient(const PartSet& ps, std::uint64_t j);

// Exact value of the order-th derivative of p at x (order 0, 1 or 2).
// Throws OutOfDomain when x is negative, or x >= 1 for an infinite family.
mpq_class evaluate_p_exact(const PartSet& ps, const mpq_class& x, int order);

// Certified enclosure of p^(order)(x) of width at most 2^-precision_bits.
Interval evaluate_p(const PartSet& ps, const mpq_class& x, int order, long precision_bits);

// Upper bound on sum_{j > cutoff} p_j x^j, for 0 <= x < 1 (any x >= 0 when finite).
mpq_class tail_bound(const PartSet& ps, const mpq_class& x, std::uint64_t cutoff);

// Throws NotSupercritical or Periodic (or ZeroPart) when the limit theorems
// do not apply.
void validate_for_asymptotics(const PartSet& ps);

}  // namespace compeq
