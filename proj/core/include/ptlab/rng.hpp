#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ptlab/rational.hpp"

namespace ptlab {

// splitmix64 finalizer (Steele/Lea/Vigna). The project-wide generator is
// fixed here so that any (seed, draw sequence) pair reproduces bit-identically
// on every platform and for every thread count.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed for trial `index` of a run keyed by `master`. Trials seeded this way
// can run in any order, or in parallel, without changing their outcomes.
inline std::uint64_t derived_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(master + 0x9E3779B97F4A7C15ull * (index + 1));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() { return mix64(state_ += 0x9E3779B97F4A7C15ull); }

  // Uniform in [0, bound); rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: zero bound");
    const std::uint64_t limit = ~0ull - ~0ull % bound;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % bound;
  }

  // Exact Bernoulli(p) for rational p in [0,1] whose denominator fits in
  // 64 bits: draws uniformly below den and compares against num.
  bool bernoulli(const Rational& p) {
    if (p.sign() < 0 || p > Rational(1)) throw std::invalid_argument("Rng::bernoulli: p outside [0,1]");
    const BigInt den = p.den();
    if (!den.fits_ulong_p()) throw std::invalid_argument("Rng::bernoulli: denominator exceeds 64 bits");
    const std::uint64_t d = mpz_get_ui(den.get_mpz_t());
    const std::uint64_t n = mpz_get_ui(p.num().get_mpz_t());
    if (p.num() == den) return true;
    return below(d) < n;
  }

  // k distinct values from [0, n), in order of selection. Small draws use
  // rejection; larger ones a partial Fisher-Yates shuffle.
  std::vector<int> sample(int n, int k) {
    if (k < 0 || k > n) throw std::invalid_argument("Rng::sample: k out of range");
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(k));
    if (k <= 8) {
      while (static_cast<int>(out.size()) < k) {
        const int v = static_cast<int>(below(static_cast<std::uint64_t>(n)));
        bool seen = false;
        for (int u : out) seen = seen || (u == v);
        if (!seen) out.push_back(v);
      }
      return out;
    }
    std::vector<int> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < k; ++i) {
      const auto j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
      out.push_back(pool[static_cast<std::size_t>(i)]);
    }
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace ptlab
