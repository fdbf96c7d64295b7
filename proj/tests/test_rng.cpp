#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ptlab/rational.hpp"
#include "ptlab/rng.hpp"

using ptlab::Rational;
using ptlab::Rng;

TEST_SUITE("rng") {
  TEST_CASE("streams are reproducible") {
    Rng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 64; ++i) {
      const auto x = a.next();
      all_equal = all_equal && (x == b.next());
      any_diff = any_diff || (x != c.next());
    }
    CHECK(all_equal);
    CHECK(any_diff);
  }

  TEST_CASE("derived seeds differ per index") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(ptlab::derived_seed(7, i));
    CHECK(seen.size() == 1000);
    CHECK(ptlab::derived_seed(7, 0) != ptlab::derived_seed(8, 0));
  }

  TEST_CASE("below stays in range") {
    Rng rng(1);
    for (std::uint64_t bound : {1ull, 2ull, 3ull, 10ull, 1000ull}) {
      for (int i = 0; i < 200; ++i) CHECK(rng.below(bound) < bound);
    }
    CHECK_THROWS_AS(rng.below(0), std::invalid_argument);
  }

  TEST_CASE("bernoulli endpoints and frequency") {
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
      CHECK_FALSE(rng.bernoulli(Rational(0)));
      CHECK(rng.bernoulli(Rational(1)));
    }
    const int trials = 30000;
    int hits = 0;
    for (int i = 0; i < trials; ++i)
      if (rng.bernoulli(Rational(1, 3))) ++hits;
    const double p = static_cast<double>(hits) / trials;
    const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / trials);
    CHECK(std::abs(p - 1.0 / 3) <= 4 * sigma);
    CHECK_THROWS_AS(rng.bernoulli(Rational(3, 2)), std::invalid_argument);
    CHECK_THROWS_AS(rng.bernoulli(Rational(-1, 2)), std::invalid_argument);
  }

  TEST_CASE("sample draws distinct in-range vertices") {
    Rng rng(9);
    for (int k : {0, 1, 4, 8, 9, 40, 100}) {
      const auto s = rng.sample(100, k);
      CHECK(static_cast<int>(s.size()) == k);
      std::set<int> uniq(s.begin(), s.end());
      CHECK(static_cast<int>(uniq.size()) == k);
      for (int v : s) CHECK((0 <= v && v < 100));
    }
    const auto all = rng.sample(12, 12);
    std::set<int> uniq(all.begin(), all.end());
    CHECK(uniq.size() == 12);
    CHECK_THROWS_AS(rng.sample(3, 4), std::invalid_argument);
  }

  TEST_CASE("sample is seed-deterministic") {
    Rng a(123), b(123);
    CHECK(a.sample(50, 10) == b.sample(50, 10));
    CHECK(a.sample(50, 30) == b.sample(50, 30));
  }
}
