#include "compeq/sampler.hpp"

#include <algorithm>
#include <cmath>

#include "compeq/error.hpp"

namespace compeq {

SamplerState::SamplerState(PartSet part_set, std::size_t n, std::uint64_t seed,
                           std::size_t n_max_cap)
    : part_set_(std::move(part_set)), n_(n), seed_(seed), rng_(seed) {
  if (part_set_.has_zero_part()) {
    throw Error(ErrorKind::ZeroPart, "cannot sample compositions with part 0");
  }
  if (n > n_max_cap) {
    throw Error(ErrorKind::CapacityExceeded,
                "n = " + std::to_string(n) + " exceeds cap " + std::to_string(n_max_cap));
  }

  // W_j = p_j L^j for j = 1..n, zero entries kept so indices line up.
  const mpz_class& L = part_set_.weight_denominator();
  std::vector<mpz_class> w(n + 1);
  mpz_class power = 1;
  for (std::size_t j = 1; j <= n; ++j) {
    power *= L;
    const mpq_class scaled = coefficient(part_set_, j) * power;
    w[j] = scaled.get_num();  // denominator divides L, so this is exact
  }

  totals_.resize(n + 1);
  choices_.resize(n + 1);
  totals_[0] = 1;
  for (std::size_t t = 1; t <= n; ++t) {
    mpz_class running = 0;
    for (std::size_t j = 1; j <= t; ++j) {
      if (w[j] == 0 || totals_[t - j] == 0) continue;
      running += w[j] * totals_[t - j];
      choices_[t].push_back(Choice{static_cast<Part>(j), running});
    }
    totals_[t] = running;
  }
  if (totals_[n] == 0) {
    throw Error(ErrorKind::NoCompositions,
                "no compositions of " + std::to_string(n) + " with parts in " +
                    part_set_.canonical());
  }
}

mpz_class SamplerState::uniform_below(const mpz_class& bound) {
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buffer(words);
  mpz_class value;
  // Rejection on the smallest power of two covering bound: fewer than two
  // attempts on average.
  do {
    for (auto& word : buffer) word = rng_();
    mpz_import(value.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buffer.data());
    mpz_fdiv_r_2exp(value.get_mpz_t(), value.get_mpz_t(), bits);
  } while (value >= bound);
  return value;
}

std::vector<Part> SamplerState::sample() {
  std::vector<Part> parts;
  std::size_t t = n_;
  while (t > 0) {
    const mpz_class u = uniform_below(totals_[t]);
    const auto& row = choices_[t];
    auto it = std::upper_bound(row.begin(), row.end(), u,
                               [](const mpz_class& v, const Choice& c) { return v < c.cumulative; });
    parts.push_back(it->part);
    t -= it->part;
  }
  return parts;
}

std::vector<Part> sample_composition(SamplerState& state) { return state.sample(); }

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MonteCarloEstimate monte_carlo_pi(std::span<const PartSet> tuple, std::size_t n,
                                  std::size_t trials, std::uint64_t seed) {
  if (tuple.empty()) throw Error(ErrorKind::InvalidArgument, "tuple must be nonempty");
  if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be >= 1");
  std::vector<SamplerState> states;
  states.reserve(tuple.size());
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    states.emplace_back(tuple[i], n, sub_seed(seed, i));
  }

  MonteCarloEstimate out;
  out.trials = trials;
  out.seed = seed;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t k = states[0].sample().size();
    bool equal = true;
    for (std::size_t i = 1; i < states.size(); ++i) {
      if (states[i].sample().size() != k) equal = false;
    }
    if (equal) ++out.hits;
  }
  const double p = static_cast<double>(out.hits) / static_cast<double>(trials);
  out.estimate = p;
  out.standard_error = std::sqrt(p * (1 - p) / static_cast<double>(trials));
  return out;
}

}  // namespace compeq
