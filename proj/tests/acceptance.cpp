// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Everything here is exact unless a line says otherwise; Monte Carlo checks
// state their trial counts and sigma bands.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptlab/census.hpp"
#include "ptlab/experiments.hpp"
#include "ptlab/graph.hpp"
#include "ptlab/property.hpp"
#include "ptlab/quasirandom.hpp"
#include "ptlab/rng.hpp"
#include "ptlab/small_graphs.hpp"
#include "ptlab/tester.hpp"
#include "ptlab/util.hpp"

using namespace ptlab;
using nlohmann::json;

namespace {

const WeightedDensityProperty& flagship() {
  return WeightedDensityProperty::named(WeightedDensityProperty::kDefaultName);
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// One representative per isomorphism class, orders 4 through 7.
const std::vector<Graph>& class_corpus() {
  static const std::vector<Graph> corpus = [] {
    std::vector<Graph> out;
    for (int order = 4; order <= 7; ++order)
      for (const auto mask : class_masks(order)) out.push_back(graph_from_mask(order, mask));
    return out;
  }();
  return corpus;
}

const std::vector<Graph>& random_corpus() {
  static const std::vector<Graph> corpus = [] {
    std::vector<Graph> out;
    for (int i = 0; i < 500; ++i) {
      const int n = 4 + static_cast<int>(derived_seed(0xC0405, static_cast<std::uint64_t>(i)) % 37);
      out.push_back(random_graph(n, derived_seed(0x9A4D05, static_cast<std::uint64_t>(i))));
    }
    return out;
  }();
  return corpus;
}

std::vector<Graph> named_corpus() {
  std::vector<Graph> out;
  for (int c = 0; c < kClass4Count; ++c) out.push_back(named_graph(class4_name(c)));
  out.push_back(named_graph("Kn(8)"));
  out.push_back(named_graph("En(8)"));
  out.push_back(named_graph("Cn(12)"));
  return out;
}

std::vector<Graph> blowup_corpus() {
  std::vector<Graph> out;
  for (int c = 0; c < kClass4Count; ++c) out.push_back(blowup(named_graph(class4_name(c)), 16).graph);
  out.push_back(blowup(named_graph("Kn(8)"), 8).graph);
  out.push_back(blowup(named_graph("En(8)"), 8).graph);
  out.push_back(blowup(named_graph("Cn(12)"), 5).graph);
  return out;
}

Outcome from_experiment(const char* name, const char* config = "") {
  const auto rep = run_experiment(name, config, 20260808);
  const auto j = json::parse(rep.json);
  std::string detail;
  int checks = 0;
  for (const auto& a : j["assertions"]) {
    ++checks;
    if (!a["pass"].get<bool>()) {
      if (!detail.empty()) detail += "; ";
      detail += "FAILED " + a["name"].get<std::string>();
      if (a.contains("detail")) detail += " (" + a["detail"].get<std::string>() + ")";
    }
  }
  if (detail.empty()) detail = std::to_string(checks) + " assertions, experiment '" + std::string(name) + "'";
  return {rep.pass, detail};
}

Outcome criterion_phi_z_identity() {
  long checked = 0;
  for (const auto& corpus : {std::cref(class_corpus()), std::cref(random_corpus())})
    for (const Graph& g : corpus.get()) {
      if (phi_value(g) != Rational(2) * z_value(flagship(), g) - Rational(5, 8))
        return {false, "identity broke at n=" + std::to_string(g.n())};
      ++checked;
    }
  return {true, std::to_string(checked) + " graphs (all classes on 4..7 vertices + 500 random), exact"};
}

Outcome criterion_membership_equivalence() {
  long checked = 0;
  for (const auto& corpus : {std::cref(class_corpus()), std::cref(random_corpus())})
    for (const Graph& g : corpus.get()) {
      const bool via_z = z_value(flagship(), g) <= Rational(5, 16);
      const bool via_phi = phi_value(g) <= Rational(0);
      if (via_z != via_phi) return {false, "verdicts split at n=" + std::to_string(g.n())};
      ++checked;
    }
  return {true, std::to_string(checked) + " graphs, exact equivalence of both routes"};
}

Outcome criterion_phi_integrality() {
  long checked = 0, nonmembers = 0;
  for (const auto& corpus : {std::cref(class_corpus()), std::cref(random_corpus())})
    for (const Graph& g : corpus.get()) {
      const Rational phi = phi_value(g);
      const BigInt falling = falling_factorial(static_cast<unsigned long>(g.n()), 4);
      if (!(phi * Rational(falling)).is_integer())
        return {false, "phi * n(n-1)(n-2)(n-3) not integral at n=" + std::to_string(g.n())};
      if (phi > Rational(0)) {
        ++nonmembers;
        const BigInt n4 = BigInt(g.n()) * g.n() * g.n() * g.n();
        if (phi < Rational(BigInt(1), n4))
          return {false, "nonmember phi below 1/n^4 at n=" + std::to_string(g.n())};
      }
      ++checked;
    }
  return {true, std::to_string(checked) + " graphs, " + std::to_string(nonmembers) + " non-members floored at 1/n^4"};
}

Outcome criterion_nonmember_gap() {
  long nonmembers = 0;
  for (const Graph& g : class_corpus()) {
    if (is_member(flagship(), g)) continue;
    ++nonmembers;
    const Rational gap = nonmember_gap(flagship(), g);  // throws if the internal floor fails
    const Rational floor(BigInt(1), BigInt(48) * binomial(static_cast<unsigned long>(g.n()), 4));
    if (gap < floor) return {false, "gap below 1/(48*C(n,4)) at n=" + std::to_string(g.n())};
  }
  return {true, std::to_string(nonmembers) + " non-member classes on 4..7 vertices, exact floor"};
}

Outcome criterion_z_averaging() {
  long pairs = 0;
  for (int i = 0; i < 20; ++i) {
    const int n = 4 + static_cast<int>(derived_seed(0x2A6, static_cast<std::uint64_t>(i)) % 9);
    const Graph g = random_graph(n, derived_seed(0xAB6E, static_cast<std::uint64_t>(i)));
    for (int u = 4; u <= n; ++u) {
      const auto both = z_average_check(flagship(), g, u);
      if (both.first != both.second)
        return {false, "z(G) != mean z(G[U]) at n=" + std::to_string(n) + ", u=" + std::to_string(u)};
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " (graph, subset-size) pairs, exact equality"};
}

Outcome criterion_canonical_calibration() {
  const std::int64_t trials = 100000;
  for (int i = 0; i < 10; ++i) {
    Rng pick(derived_seed(0xFA41, static_cast<std::uint64_t>(i)));
    std::vector<int> classes;
    const std::uint64_t word = pick.next();
    for (int c = 0; c < kClass4Count; ++c)
      if ((word >> c) & 1ull) classes.push_back(c);
    const TesterSpec t{4, RejectionFamily::from_classes4(classes), "random-family"};
    const Graph g = random_graph(20, derived_seed(0x6AF, static_cast<std::uint64_t>(i)));
    const double exact = canonical_accept_probability(t, g).to_double();
    const auto accepted = canonical_acceptance_count(t, g, trials, derived_seed(0xCA11B, static_cast<std::uint64_t>(i)));
    const double emp = static_cast<double>(accepted) / static_cast<double>(trials);
    if (std::abs(emp - exact) > 4.0 * stderr_of_proportion(exact, trials))
      return {false, "family " + std::to_string(i) + " off by more than 4 sigma"};
  }
  return {true, "10 random rejection families at s=4, n=20, 100000 runs each, 4-sigma bands"};
}

Outcome criterion_kst() {
  long checked = 0;
  std::vector<Graph> corpus = named_corpus();
  for (const Graph& g : class_corpus()) corpus.push_back(g);
  for (const Graph& g : random_corpus()) corpus.push_back(g);
  for (Graph& g : blowup_corpus()) corpus.push_back(std::move(g));
  for (int i = 0; i < 10; ++i) {
    const int n = 50 + static_cast<int>(derived_seed(0x1A26E, static_cast<std::uint64_t>(i)) % 151);
    corpus.push_back(random_graph(n, derived_seed(0xB16, static_cast<std::uint64_t>(i))));
  }
  double max_scaled = 0.0;
  for (const Graph& g : corpus) {
    if (g.n() < 4) continue;
    if (!hom_c4_inequality_holds(g))
      return {false, "homomorphism-density inequality broke at n=" + std::to_string(g.n())};
    const Rational scaled = Rational(g.n()) * kst_defect(g);
    max_scaled = std::max(max_scaled, scaled.to_double());
    if (scaled > Rational(10))
      return {false, "n * defect = " + scaled.str() + " exceeds 10 at n=" + std::to_string(g.n())};
    ++checked;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "%ld graphs; max n*defect = %.3f (bound 10); hom inequality exact", checked,
                max_scaled);
  return {true, buf};
}

Outcome criterion_fast_census() {
  long checked = 0;
  for (const int n : {10, 20, 40, 60}) {
    for (int i = 0; i < 100; ++i) {
      const Graph g = random_graph(n, derived_seed(0xCE2505, static_cast<std::uint64_t>(n * 1000 + i)));
      if (four_profile(g, CensusMode::kFast).counts != four_profile(g, CensusMode::kReference).counts)
        return {false, "censuses disagree on a random graph, n=" + std::to_string(n)};
      ++checked;
    }
  }
  std::vector<Graph> extra = named_corpus();
  for (Graph& g : blowup_corpus()) extra.push_back(std::move(g));
  for (const Graph& g : extra) {
    if (four_profile(g, CensusMode::kFast).counts != four_profile(g, CensusMode::kReference).counts)
      return {false, "censuses disagree on a named graph or blowup, n=" + std::to_string(g.n())};
    ++checked;
  }
  return {true, std::to_string(checked) + " graphs (100 per n in {10,20,40,60} + named + blowups), exact"};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"phi-z-identity", criterion_phi_z_identity},
      {"membership-equivalence", criterion_membership_equivalence},
      {"membership-fraction-lower-bound", [] { return from_experiment("membership-prob"); }},
      {"phi-integrality", criterion_phi_integrality},
      {"nonmember-gap-floor", criterion_nonmember_gap},
      {"z-subset-averaging", criterion_z_averaging},
      {"pot-rejection-calibration", [] { return from_experiment("pot-calibration"); }},
      {"canonical-acceptance-calibration", criterion_canonical_calibration},
      {"member-quasirandomness", [] { return from_experiment("member-quasirandom"); }},
      {"c4-density-floor", criterion_kst},
      {"blowup-farness", [] { return from_experiment("blowup-farness"); }},
      {"blowup-indistinguishability", [] { return from_experiment("indistinguishability"); }},
      {"profile-density-concentration", [] { return from_experiment("rho-concentration"); }},
      {"fast-census-cross-check", criterion_fast_census},
      {"subsample-membership-decay", [] { return from_experiment("double-sampling"); }},
  };

  int failures = 0;
  int index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    std::printf("[%2d/15] %s  %-34s %s (%lld ms)\n", index, outcome.pass ? "PASS" : "FAIL", c.name,
                outcome.detail.c_str(), static_cast<long long>(ms));
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) std::printf("%d of 15 criteria FAILED\n", failures);
  else std::printf("all 15 criteria passed\n");
  return failures == 0 ? 0 : 1;
}
