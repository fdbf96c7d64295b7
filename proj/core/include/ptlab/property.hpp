#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "ptlab/census.hpp"
#include "ptlab/graph.hpp"
#include "ptlab/rational.hpp"

namespace ptlab {

// A weighted density property: the graphs G with
//   sum over h-vertex classes H of w_H * p(H,G) <= b.
// Weights are nonnegative exact rationals. h = 4 is the fully supported
// order (array-indexed by Class4); other orders up to 7 are handled by
// brute-force class enumeration.
class WeightedDensityProperty {
 public:
  int h() const { return h_; }
  const Rational& b() const { return b_; }

  bool has_class4_weights() const { return h_ == 4; }
  const std::array<Rational, 11>& weights4() const;
  const std::map<std::uint64_t, Rational>& weights_by_code() const { return by_code_; }
  Rational weight_of_class4(int cls) const;
  Rational weight_of(const Graph& sample) const;  // by isomorphism class
  Rational max_weight() const;

  static WeightedDensityProperty from_weights4(std::array<Rational, 11> w, Rational b);
  static WeightedDensityProperty from_codes(int h, std::map<std::uint64_t, Rational> w, Rational b);

  // Registry of built-in instances; "thm1.4" is the flagship.
  static const WeightedDensityProperty& named(std::string_view name);
  static constexpr std::string_view kDefaultName = "thm1.4";

  // JSON property files: {"h": 4, "b": "num/den", "weights": {"C4": "1/2", ...}}.
  static WeightedDensityProperty parse_json(const std::string& text);
  std::string to_json() const;

 private:
  int h_ = 4;
  Rational b_;
  std::array<Rational, 11> w4_{};
  std::map<std::uint64_t, Rational> by_code_;
};

// z(G): the weighted class-density sum of the property. Graphs with fewer
// than h vertices have an empty sum, hence z = 0 (and are members whenever
// b >= 0).
Rational z_value(const WeightedDensityProperty& p, const Graph& g,
                 CensusMode mode = CensusMode::kFast);
Rational z_value(const WeightedDensityProperty& p, const FourProfile& profile);

// phi(G) = 2 t_inj(C4,G) - t_inj(K2,G) + 3/8, computed through the codegree
// kernel. For every G on >= 4 vertices, phi(G) = 2 z(G) - 5/8 under the
// "thm1.4" weights, so membership there is exactly phi(G) <= 0.
Rational phi_value(const Graph& g);

bool is_member(const WeightedDensityProperty& p, const Graph& g);

struct IntegerizedProperty {
  BigInt scale;                          // lcm of all weight and b denominators
  std::map<std::uint64_t, BigInt> w_int; // scale * w, keyed by canonical code
  BigInt b_int;                          // scale * b
  int h = 4;
};

IntegerizedProperty integerize(const WeightedDensityProperty& p);

// z(G) - b for a non-member; throws std::invalid_argument on members.
// Checks the integerized floor z(G) - b >= 1/(scale * C(n,h)) when n >= h.
Rational nonmember_gap(const WeightedDensityProperty& p, const Graph& g);

// Membership of every labeled n-vertex graph, indexed by edge mask.
// Exhaustive, so n <= 6.
std::vector<bool> labeled_membership_table(const WeightedDensityProperty& p, int n);

// Minimum number of unordered pair edits to reach a member; n <= 6.
int distance_to_property(const WeightedDensityProperty& p, const Graph& g);

// eps-farness in the unordered-pair convention: distance >= eps * n^2 / 2.
// (Entry counting doubles both sides, so the verdict is the same.)
bool is_far(const WeightedDensityProperty& p, const Graph& g, const Rational& eps);

// Proximity-oblivious tester: sample h vertices, reject with the class
// probability. `margin` is the configured detection-margin function f.
struct PotSpec {
  int h = 4;
  std::array<Rational, 11> reject4{};
  std::map<std::uint64_t, Rational> reject_by_code;
  Rational c;
  std::function<Rational(const Rational&)> margin;

  Rational reject_probability_of_class4(int cls) const { return reject4[static_cast<std::size_t>(cls)]; }
};

// The POT that samples an h-set and rejects with probability w_H: its
// rejection probability on G is exactly z(G), and c = 1 - b. Weights above
// 1 are scaled down by the maximum (b scales along) when normalization is
// allowed; otherwise this throws.
PotSpec pot_from_property(const WeightedDensityProperty& p, bool allow_normalization = true);

Rational pot_rejection_probability(const PotSpec& pot, const Graph& g);

// (z(G), average of z(G[U]) over all size-u subsets U); the two components
// are equal for every graph. Exhaustive, so C(n,u) must stay small (n <= 14).
std::pair<Rational, Rational> z_average_check(const WeightedDensityProperty& p, const Graph& g,
                                              int subset_size);

}  // namespace ptlab
