#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "compeq/partset.hpp"

namespace compeq {

inline constexpr const char* kRngName = "mt19937_64";

/// Exact weight-proportional sampler for compositions of a fixed n.
///
/// With R_t = P_t L^t (L the weight denominator) and W_j = p_j L^j, both
/// integers, the first part of a composition of t is j with probability
/// W_j R_{t-j} / R_t. For every t <= n the cumulative sums of W_j R_{t-j}
/// are precomputed, and each step draws an exact uniform integer below R_t.
/// One state per thread.
class SamplerState {
 public:
  SamplerState(PartSet part_set, std::size_t n, std::uint64_t seed,
               std::size_t n_max_cap = 10000);

  const PartSet& part_set() const noexcept { return part_set_; }
  std::size_t n() const noexcept { return n_; }
  std::uint64_t seed() const noexcept { return seed_; }
  // R_n; the probability of a composition is prod(W_j) / R_n.
  const mpz_class& total_weight() const { return totals_[n_]; }

  // Uniform integer in [0, bound), bound > 0.
  mpz_class uniform_below(const mpz_class& bound);
  std::vector<Part> sample();

 private:
  struct Choice {
    Part part;
    mpz_class cumulative;  // inclusive
  };

  PartSet part_set_;
  std::size_t n_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::vector<mpz_class> totals_;             // R_0..R_n
  std::vector<std::vector<Choice>> choices_;  // per t
};

std::vector<Part> sample_composition(SamplerState& state);

struct MonteCarloEstimate {
  double estimate = 0;
  double standard_error = 0;
  std::size_t trials = 0;
  std::size_t hits = 0;
  std::uint64_t seed = 0;
  std::string rng = kRngName;
};

// Coordinate i samples from a state seeded with sub_seed(seed, i).
MonteCarloEstimate monte_carlo_pi(std::span<const PartSet> tuple, std::size_t n,
                                  std::size_t trials, std::uint64_t seed);

// SplitMix64 of seed + index: decorrelated sub-seeds from one master seed.
std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace compeq
