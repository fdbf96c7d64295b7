#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <cmath>

#include "ptlab/census.hpp"
#include "ptlab/graph.hpp"
#include "ptlab/quasirandom.hpp"
#include "ptlab/rng.hpp"

using namespace ptlab;

namespace {
const WeightedDensityProperty& flagship() {
  return WeightedDensityProperty::named(WeightedDensityProperty::kDefaultName);
}
}  // namespace

TEST_SUITE("quasirandom") {
  TEST_CASE("window polynomial") {
    CHECK(f_window(Rational(1, 2)) == Rational(0));
    CHECK(f_window(Rational(0)) == Rational(3, 8));
    CHECK(f_window(Rational(1)) == Rational(11, 8));
    for (const Rational& gamma : {Rational(1, 10), Rational(1, 7), Rational(1, 3)}) {
      const Rational plus = Rational(2) * pow(gamma, 4) + Rational(4) * pow(gamma, 3) + Rational(3) * pow(gamma, 2);
      const Rational minus = Rational(2) * pow(gamma, 4) - Rational(4) * pow(gamma, 3) + Rational(3) * pow(gamma, 2);
      CHECK(f_window(Rational(1, 2) + gamma) == plus);
      CHECK(f_window(Rational(1, 2) - gamma) == minus);
    }
  }

  TEST_CASE("edge and cycle window check") {
    CHECK_FALSE(cgw_check(named_graph("Kn(20)"), Rational(1, 10)));
    CHECK_FALSE(cgw_check(named_graph("C4"), Rational(1, 10)));  // t_inj(K2) = 2/3
    int pass = 0;
    const int samples = 60;
    for (int i = 0; i < samples; ++i)
      if (cgw_check(random_graph(64, derived_seed(0xC97, static_cast<std::uint64_t>(i))), Rational(1, 10))) ++pass;
    CHECK(pass >= samples * 95 / 100);

    const Graph g = random_graph(30, 4);
    const Rational mg = cgw_min_gamma(g);
    CHECK(cgw_check(g, mg));
    if (mg > Rational(0)) CHECK_FALSE(cgw_check(g, mg - Rational(1, 1000000)));
  }

  TEST_CASE("derived window parameters") {
    const auto params = cgw_from_delta(Rational(1, 2));
    CHECK(params.source == CgwParams::Source::kDerivedFromDelta);
    CHECK(params.gamma == Rational(1, 4096));
    CHECK(params.n0 == 4096);
    CHECK(default_cgw_gamma(32) == Rational(1, 2));
    CHECK(default_cgw_gamma(2) == Rational(2));
  }

  TEST_CASE("exact enumeration refutes dense graphs") {
    const auto report = is_delta_quasirandom(named_graph("Kn(8)"), Rational(1, 10), QuasiMode::kExact);
    CHECK(report.violation_found);
    REQUIRE(report.witness.has_value());
    // The witness must itself verify.
    CHECK(quasirandom_pair_violates(named_graph("Kn(8)"), Rational(1, 10), report.witness->u,
                                    report.witness->v));
    CHECK(report.edge_density == Rational(1));
    CHECK_THROWS_AS(is_delta_quasirandom(random_graph(15, 1), Rational(1, 4), QuasiMode::kExact),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_delta_quasirandom(named_graph("C4"), Rational(0), QuasiMode::kExact),
                    std::invalid_argument);
  }

  TEST_CASE("exact verdicts are monotone in delta") {
    for (int i = 0; i < 6; ++i) {
      const Graph g = random_graph(11, derived_seed(0x303, static_cast<std::uint64_t>(i)));
      bool prev_quasi = false;
      for (const Rational& delta : {Rational(1, 8), Rational(1, 6), Rational(1, 4), Rational(1, 3), Rational(1, 2)}) {
        const bool quasi = !is_delta_quasirandom(g, delta, QuasiMode::kExact).violation_found;
        if (prev_quasi) CHECK(quasi);
        prev_quasi = quasi;
      }
    }
  }

  TEST_CASE("sampled probing agrees with the exact verdict on random graphs") {
    // At delta = 1/4 size-3 set pairs with extreme crossing counts are
    // plentiful in G(12,1/2), so both modes refute; at delta = 9/20 the
    // admissible pairs are the 6+6 splits, whose crossing counts never
    // leave the window, so both modes come up empty.
    int refuted_both = 0;
    for (int i = 0; i < 50; ++i) {
      const Graph g = random_graph(12, derived_seed(0xA9EE, static_cast<std::uint64_t>(i)));
      const auto exact = is_delta_quasirandom(g, Rational(1, 4), QuasiMode::kExact);
      const auto sampled = is_delta_quasirandom(g, Rational(1, 4), QuasiMode::kSampled, 2000,
                                                derived_seed(0x5A4D, static_cast<std::uint64_t>(i)));
      if (sampled.violation_found) {
        CHECK(exact.violation_found);
        REQUIRE(sampled.witness.has_value());
        CHECK(quasirandom_pair_violates(g, Rational(1, 4), sampled.witness->u, sampled.witness->v));
        if (exact.violation_found) ++refuted_both;
      }
      if (!exact.violation_found) CHECK_FALSE(sampled.violation_found);

      const auto wide_exact = is_delta_quasirandom(g, Rational(9, 20), QuasiMode::kExact);
      const auto wide_sampled = is_delta_quasirandom(g, Rational(9, 20), QuasiMode::kSampled, 2000,
                                                     derived_seed(0x70AD, static_cast<std::uint64_t>(i)));
      CHECK_FALSE(wide_exact.violation_found);
      CHECK_FALSE(wide_sampled.violation_found);
    }
    CHECK(refuted_both >= 45);
  }

  TEST_CASE("blowup part pairs violate at delta = 1/m") {
    const Graph base = random_graph(8, 99);
    REQUIRE(base.edge_count() > 0);
    const auto blown = blowup(base, 6);
    int bi = -1, bj = -1;
    for (int i = 0; i < base.n() && bi < 0; ++i)
      for (int j = i + 1; j < base.n(); ++j)
        if (base.edge(i, j)) {
          bi = i;
          bj = j;
          break;
        }
    const Rational delta(1, base.n());
    std::int64_t e = 0;
    CHECK(quasirandom_pair_violates(blown.graph, delta,
                                    blown.structure.parts[static_cast<std::size_t>(bi)],
                                    blown.structure.parts[static_cast<std::size_t>(bj)], &e));
    CHECK(e == 36);  // complete bipartite between parts of size 6
  }

  TEST_CASE("member audit checks the exact chain") {
    const auto audit = member_quasirandomness_audit(flagship(), 16, 5, 500, default_cgw_gamma(16), 2024);
    CHECK(audit.found_enough);
    CHECK(audit.members.size() == 5);
    CHECK(audit.all_exact_bounds_hold);
    for (const auto& rec : audit.members) {
      CHECK(rec.phi <= Rational(0));
      CHECK(f_window(rec.t_k2) <= Rational(2) * rec.defect);
      CHECK(rec.t_c4 <= rec.t_k2 / Rational(2) - Rational(3, 16));
      CHECK(cgw_check(random_graph(16, derived_seed(2024, rec.seed_index)), max(rec.min_gamma, Rational(1, 1000))));
    }
    const auto json = audit.to_json();
    CHECK(json.find("\"members_found\":5") != std::string::npos);
  }

  TEST_CASE("member audit reports an empty hunt without failing") {
    // Weights sum forced above any graph's reach: b negative, so nothing is
    // a member; the audit reports zero members instead of throwing.
    const auto impossible = WeightedDensityProperty::from_weights4(flagship().weights4(), Rational(-1));
    const auto audit = member_quasirandomness_audit(impossible, 8, 1, 50, Rational(1, 2), 7);
    CHECK_FALSE(audit.found_enough);
    CHECK(audit.members.empty());
    CHECK(audit.draws == 50);
  }

  TEST_CASE("exact mode handles the order-14 cap") {
    const Graph g = random_graph(14, 606);
    const auto report = is_delta_quasirandom(g, Rational(2, 5), QuasiMode::kExact);
    CHECK(report.pairs_examined > 0);
    if (report.violation_found) {
      REQUIRE(report.witness.has_value());
      CHECK(quasirandom_pair_violates(g, Rational(2, 5), report.witness->u, report.witness->v));
    }
  }

  TEST_CASE("reports serialize with sorted witnesses") {
    const auto report = is_delta_quasirandom(named_graph("Kn(6)"), Rational(1, 6), QuasiMode::kExact);
    REQUIRE(report.witness.has_value());
    CHECK(std::is_sorted(report.witness->u.begin(), report.witness->u.end()));
    CHECK(std::is_sorted(report.witness->v.begin(), report.witness->v.end()));
    const auto json = report.to_json();
    CHECK(json.find("\"witness\"") != std::string::npos);
    CHECK(json.find("\"violation_found\":true") != std::string::npos);
  }
}
