#include "ptlab/property.hpp"

#include <bit>
#include <stdexcept>

#include <json.hpp>

namespace ptlab {

const std::array<Rational, 11>& WeightedDensityProperty::weights4() const {
  if (h_ != 4) throw std::logic_error("weights4: property order is not 4");
  return w4_;
}

Rational WeightedDensityProperty::weight_of_class4(int cls) const {
  if (h_ != 4) throw std::logic_error("weight_of_class4: property order is not 4");
  if (cls < 0 || cls >= kClass4Count) throw std::out_of_range("weight_of_class4");
  return w4_[static_cast<std::size_t>(cls)];
}

Rational WeightedDensityProperty::weight_of(const Graph& sample) const {
  if (sample.n() != h_) throw std::invalid_argument("weight_of: sample order mismatch");
  if (h_ == 4) return w4_[static_cast<std::size_t>(classify4(sample))];
  const auto it = by_code_.find(canonical_mask(sample));
  return it == by_code_.end() ? Rational(0) : it->second;
}

Rational WeightedDensityProperty::max_weight() const {
  Rational best(0);
  for (const auto& [code, w] : by_code_) best = max(best, w);
  return best;
}

WeightedDensityProperty WeightedDensityProperty::from_weights4(std::array<Rational, 11> w, Rational b) {
  WeightedDensityProperty p;
  p.h_ = 4;
  p.b_ = std::move(b);
  p.w4_ = std::move(w);
  for (int c = 0; c < kClass4Count; ++c) {
    if (p.w4_[static_cast<std::size_t>(c)].sign() < 0)
      throw std::invalid_argument("WeightedDensityProperty: negative weight");
    p.by_code_[canonical_mask(class4_representative(c))] = p.w4_[static_cast<std::size_t>(c)];
  }
  return p;
}

WeightedDensityProperty WeightedDensityProperty::from_codes(int h, std::map<std::uint64_t, Rational> w,
                                                            Rational b) {
  if (h < 2 || h > 7) throw std::invalid_argument("WeightedDensityProperty: order must be in [2,7]");
  WeightedDensityProperty p;
  p.h_ = h;
  p.b_ = std::move(b);
  for (const auto& [code, weight] : w) {
    if (weight.sign() < 0) throw std::invalid_argument("WeightedDensityProperty: negative weight");
    const Graph rep = graph_from_mask(h, code);
    if (canonical_mask(rep) != code)
      throw std::invalid_argument("WeightedDensityProperty: non-canonical class code");
  }
  p.by_code_ = std::move(w);
  if (h == 4)
    for (int c = 0; c < kClass4Count; ++c) {
      const auto it = p.by_code_.find(canonical_mask(class4_representative(c)));
      p.w4_[static_cast<std::size_t>(c)] = it == p.by_code_.end() ? Rational(0) : it->second;
    }
  return p;
}

const WeightedDensityProperty& WeightedDensityProperty::named(std::string_view name) {
  static const WeightedDensityProperty instance = [] {
    // Class order: K4, K4c, D4, D4c, P3, P3c, C4, C4c, K13, K13c, P4.
    std::array<Rational, 11> w = {
        Rational(1),     Rational(1, 2),  Rational(5, 12), Rational(5, 12),
        Rational(1, 3),  Rational(1, 6),  Rational(1, 2),  Rational(1, 3),
        Rational(1, 4),  Rational(1, 4),  Rational(1, 4)};
    return from_weights4(std::move(w), Rational(5, 16));
  }();
  if (name == kDefaultName) return instance;
  throw std::invalid_argument("unknown built-in property '" + std::string(name) + "'");
}

WeightedDensityProperty WeightedDensityProperty::parse_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::invalid_argument("property file: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "h" && key != "b" && key != "weights")
      throw std::invalid_argument("property file: unknown key '" + key + "'");
  }
  const int h = j.at("h").get<int>();
  if (h != 4) throw std::invalid_argument("property file: only h = 4 files are supported");
  const Rational b = Rational::parse(j.at("b").get<std::string>());
  std::array<Rational, 11> w{};
  for (const auto& [key, value] : j.at("weights").items()) {
    const int cls = class4_by_name(key);
    if (cls < 0) throw std::invalid_argument("property file: unknown class '" + key + "'");
    w[static_cast<std::size_t>(cls)] = Rational::parse(value.get<std::string>());
  }
  return from_weights4(std::move(w), b);
}

std::string WeightedDensityProperty::to_json() const {
  if (h_ != 4) throw std::logic_error("to_json: only h = 4 properties serialize");
  nlohmann::json j;
  j["h"] = 4;
  j["b"] = b_.str();
  nlohmann::json w;
  for (int c = 0; c < kClass4Count; ++c)
    w[std::string(class4_name(c))] = w4_[static_cast<std::size_t>(c)].str();
  j["weights"] = w;
  return j.dump();
}

Rational z_value(const WeightedDensityProperty& p, const FourProfile& profile) {
  if (p.h() != 4) throw std::invalid_argument("z_value: profile route requires order 4");
  if (profile.n < 4) return Rational(0);
  Rational acc(0);
  for (int c = 0; c < kClass4Count; ++c) {
    const Rational& w = p.weights4()[static_cast<std::size_t>(c)];
    if (!w.is_zero()) acc += w * p_induced(c, profile);
  }
  return acc;
}

Rational z_value(const WeightedDensityProperty& p, const Graph& g, CensusMode mode) {
  const int n = g.n();
  if (n < p.h()) return Rational(0);  // empty sum
  if (p.h() == 4) return z_value(p, four_profile(g, mode));

  // General order: enumerate all h-subsets and tally by canonical class.
  const int h = p.h();
  std::map<std::uint64_t, BigInt> tally;
  std::vector<int> pick(static_cast<std::size_t>(h));
  for (int i = 0; i < h; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    tally[canonical_mask(induced_subgraph(g, pick))] += 1;
    int i = h - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - h + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < h; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  const BigInt total = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(h));
  Rational acc(0);
  for (const auto& [code, count] : tally) {
    const auto it = p.weights_by_code().find(code);
    if (it != p.weights_by_code().end() && !it->second.is_zero())
      acc += it->second * Rational(count, total);
  }
  return acc;
}

Rational phi_value(const Graph& g) {
  if (g.n() < 2) throw std::invalid_argument("phi_value: need at least 2 vertices");
  return Rational(2) * t_inj_c4(g) - t_inj_k2(g) + Rational(3, 8);
}

bool is_member(const WeightedDensityProperty& p, const Graph& g) {
  return z_value(p, g) <= p.b();
}

IntegerizedProperty integerize(const WeightedDensityProperty& p) {
  IntegerizedProperty out;
  out.h = p.h();
  out.scale = p.b().den();
  for (const auto& [code, w] : p.weights_by_code()) out.scale = lcm(out.scale, w.den());
  for (const auto& [code, w] : p.weights_by_code()) {
    const Rational scaled = w * Rational(out.scale);
    out.w_int[code] = scaled.num();
  }
  out.b_int = (p.b() * Rational(out.scale)).num();
  return out;
}

Rational nonmember_gap(const WeightedDensityProperty& p, const Graph& g) {
  const Rational z = z_value(p, g);
  if (z <= p.b()) throw std::invalid_argument("nonmember_gap: graph is a member");
  const Rational gap = z - p.b();
  if (g.n() >= p.h()) {
    const IntegerizedProperty ip = integerize(p);
    const Rational floor(BigInt(1),
                         ip.scale * binomial(static_cast<unsigned long>(g.n()),
                                             static_cast<unsigned long>(p.h())));
    if (gap < floor) throw std::logic_error("nonmember_gap: integerized floor violated");
  }
  return gap;
}

std::vector<bool> labeled_membership_table(const WeightedDensityProperty& p, int n) {
  if (n < 0 || n > 6) throw std::invalid_argument("labeled_membership_table: n must be <= 6");
  const int bits = pair_bit_count(n);
  std::vector<bool> member(static_cast<std::size_t>(1) << bits);
  for (std::uint64_t mask = 0; mask < member.size(); ++mask)
    member[mask] = is_member(p, graph_from_mask(n, mask));
  return member;
}

int distance_to_property(const WeightedDensityProperty& p, const Graph& g) {
  if (g.n() > 6) throw std::invalid_argument("distance_to_property: n must be <= 6");
  const auto member = labeled_membership_table(p, g.n());
  const std::uint64_t self = mask_from_graph(g);
  int best = -1;
  for (std::uint64_t mask = 0; mask < member.size(); ++mask) {
    if (!member[mask]) continue;
    const int d = std::popcount(self ^ mask);
    if (best < 0 || d < best) best = d;
  }
  if (best < 0) throw std::logic_error("distance_to_property: property is empty at this order");
  return best;
}

bool is_far(const WeightedDensityProperty& p, const Graph& g, const Rational& eps) {
  const int d = distance_to_property(p, g);
  return Rational(2 * d) >= eps * Rational(static_cast<long>(g.n()) * g.n());
}

PotSpec pot_from_property(const WeightedDensityProperty& p, bool allow_normalization) {
  const Rational maxw = p.max_weight();
  Rational scale(1);
  if (maxw > Rational(1)) {
    if (!allow_normalization)
      throw std::invalid_argument("pot_from_property: weight above 1 and normalization disabled");
    scale = maxw;
  }
  PotSpec pot;
  pot.h = p.h();
  const Rational b_scaled = p.b() / scale;
  pot.c = Rational(1) - b_scaled;
  if (pot.c <= Rational(0) || pot.c > Rational(1))
    throw std::invalid_argument("pot_from_property: acceptance constant outside (0,1]");
  for (const auto& [code, w] : p.weights_by_code()) pot.reject_by_code[code] = w / scale;
  if (p.h() == 4)
    for (int c = 0; c < kClass4Count; ++c)
      pot.reject4[static_cast<std::size_t>(c)] = p.weights4()[static_cast<std::size_t>(c)] / scale;
  pot.margin = [](const Rational& eps) { return eps; };
  return pot;
}

Rational pot_rejection_probability(const PotSpec& pot, const Graph& g) {
  if (g.n() < pot.h) throw std::invalid_argument("pot_rejection_probability: graph too small");
  if (pot.h == 4) {
    const FourProfile profile = four_profile(g);
    Rational acc(0);
    for (int c = 0; c < kClass4Count; ++c) {
      const Rational& r = pot.reject4[static_cast<std::size_t>(c)];
      if (!r.is_zero()) acc += r * p_induced(c, profile);
    }
    return acc;
  }
  // General order via the weighted property with the same weights.
  auto prop = WeightedDensityProperty::from_codes(pot.h, pot.reject_by_code, Rational(0));
  return z_value(prop, g);
}

std::pair<Rational, Rational> z_average_check(const WeightedDensityProperty& p, const Graph& g,
                                              int subset_size) {
  const int n = g.n();
  const int u = subset_size;
  if (u < p.h() || u > n || n > 14)
    throw std::invalid_argument("z_average_check: need h <= u <= n <= 14");
  const Rational whole = z_value(p, g, CensusMode::kFast);

  Rational sum(0);
  BigInt subsets = 0;
  std::vector<int> pick(static_cast<std::size_t>(u));
  for (int i = 0; i < u; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    sum += z_value(p, induced_subgraph(g, pick), CensusMode::kReference);
    subsets += 1;
    int i = u - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - u + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < u; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return {whole, sum / Rational(subsets)};
}

}  // namespace ptlab
