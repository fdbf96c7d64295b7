#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "ptlab/graph.hpp"
#include "ptlab/graph_io.hpp"
#include "ptlab/rng.hpp"
#include "ptlab/small_graphs.hpp"

using ptlab::Graph;
using ptlab::ParseError;

TEST_SUITE("graph") {
  TEST_CASE("edge bits are symmetric with zero diagonal") {
    Graph g(5);
    g.set_edge(1, 3);
    CHECK(g.edge(1, 3));
    CHECK(g.edge(3, 1));
    CHECK_FALSE(g.edge(1, 2));
    CHECK(g.degree(1) == 1);
    CHECK(g.edge_count() == 1);
    g.set_edge(1, 3, false);
    CHECK(g.edge_count() == 0);
    CHECK_THROWS_AS(g.set_edge(2, 2), std::invalid_argument);
    CHECK_THROWS_AS(g.set_edge(0, 5), std::out_of_range);
  }

  TEST_CASE("parse edge list") {
    const Graph p4 = ptlab::parse_graph("4 3\n0 1\n1 2\n2 3");
    CHECK(p4.n() == 4);
    CHECK(p4.edge_count() == 3);
    CHECK(ptlab::classify4(p4) == ptlab::kP4);

    const Graph single = ptlab::parse_graph("1 0");
    CHECK(single.n() == 1);
    CHECK(single.edge_count() == 0);

    const Graph empty = ptlab::parse_graph("0 0");
    CHECK(empty.n() == 0);
  }

  TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(ptlab::parse_graph("2 1\n0 0"), doctest::Contains("line 2"), ParseError);
    CHECK_THROWS_WITH_AS(ptlab::parse_graph("2 1\n0 0"), doctest::Contains("self-loop"), ParseError);
    CHECK_THROWS_WITH_AS(ptlab::parse_graph("3 2\n0 1\n0 1"), doctest::Contains("duplicate"), ParseError);
    CHECK_THROWS_WITH_AS(ptlab::parse_graph("3 1\n0 5"), doctest::Contains("out of range"), ParseError);
    CHECK_THROWS_WITH_AS(ptlab::parse_graph("3 1\n2 0"), doctest::Contains("u < v"), ParseError);
    CHECK_THROWS_WITH_AS(ptlab::parse_graph("x y"), doctest::Contains("line 1"), ParseError);
    CHECK_THROWS_AS(ptlab::parse_graph("3 2\n0 1"), ParseError);   // missing edge line
    CHECK_THROWS_AS(ptlab::parse_graph("3 0\n0 1"), ParseError);   // extra edge line
    CHECK_THROWS_AS(ptlab::parse_graph(""), ParseError);
  }

  TEST_CASE("parse adjacency matrix") {
    const Graph g = ptlab::parse_graph("3\n011\n101\n110");
    CHECK(g.edge_count() == 3);
    CHECK_THROWS_WITH_AS(ptlab::parse_graph("2\n01\n00"), doctest::Contains("symmetric"), ParseError);
    CHECK_THROWS_WITH_AS(ptlab::parse_graph("2\n10\n01"), doctest::Contains("diagonal"), ParseError);
    CHECK_THROWS_WITH_AS(ptlab::parse_graph("2\n012\n000"), doctest::Contains("line 2"), ParseError);
  }

  TEST_CASE("serialization round-trips and sorts edges") {
    const Graph c4 = ptlab::named_graph("C4");
    CHECK(ptlab::serialize_edge_list(c4) == "4 4\n0 1\n0 3\n1 2\n2 3\n");
    for (int i = 0; i < 10; ++i) {
      const Graph g = ptlab::random_graph(20, 100 + static_cast<std::uint64_t>(i));
      CHECK(ptlab::parse_graph(ptlab::serialize_edge_list(g)) == g);
    }
  }

  TEST_CASE("complement examples") {
    CHECK(ptlab::complement(ptlab::named_graph("K4")).edge_count() == 0);
    CHECK(ptlab::classify4(ptlab::complement(ptlab::named_graph("C4"))) == ptlab::kC4c);
    // 2K2: two disjoint edges
    const Graph two_k2 = ptlab::complement(ptlab::named_graph("C4"));
    CHECK(two_k2.edge_count() == 2);
    CHECK(two_k2.degree(0) == 1);
  }

  TEST_CASE("complement is an involution") {
    // Exhaustive over all labeled graphs on up to 5 vertices.
    for (int n = 1; n <= 5; ++n) {
      const int bits = ptlab::pair_bit_count(n);
      for (std::uint64_t mask = 0; mask < (1ull << bits); ++mask) {
        const Graph g = ptlab::graph_from_mask(n, mask);
        CHECK(ptlab::complement(ptlab::complement(g)) == g);
      }
    }
    for (int n : {37, 200}) {
      const Graph g = ptlab::random_graph(n, static_cast<std::uint64_t>(n));
      CHECK(ptlab::complement(ptlab::complement(g)) == g);
    }
  }

  TEST_CASE("named graphs") {
    CHECK(ptlab::named_graph("C4").edge_count() == 4);
    const Graph p3 = ptlab::named_graph("P3");  // path on 3 vertices plus an isolated vertex
    CHECK(p3.n() == 4);
    CHECK(p3.edge_count() == 2);
    CHECK(p3.degree(3) == 0);
    const Graph k13c = ptlab::named_graph("K13c");  // triangle plus isolated vertex
    CHECK(k13c.edge_count() == 3);
    CHECK(ptlab::classify4(k13c) == ptlab::kK13c);
    bool has_isolated = false;
    for (int v = 0; v < 4; ++v) has_isolated = has_isolated || k13c.degree(v) == 0;
    CHECK(has_isolated);

    CHECK(ptlab::named_graph("Kn(8)").edge_count() == 28);
    CHECK(ptlab::named_graph("En(5)").edge_count() == 0);
    CHECK(ptlab::named_graph("Cn(12)").edge_count() == 12);
    CHECK(ptlab::named_graph("Cn(3)").edge_count() == 3);
    CHECK_THROWS_AS(ptlab::named_graph("Q5"), std::invalid_argument);
    CHECK_THROWS_AS(ptlab::named_graph("Cn(2)"), std::invalid_argument);
    CHECK_THROWS_AS(ptlab::named_graph("Kn(x)"), std::invalid_argument);
  }

  TEST_CASE("random graphs are seed-exact") {
    CHECK(ptlab::random_graph(0, 7).n() == 0);
    const Graph a = ptlab::random_graph(100, 7);
    const Graph b = ptlab::random_graph(100, 7);
    CHECK(a == b);
    CHECK(a != ptlab::random_graph(100, 8));
  }

  TEST_CASE("random graph edge counts concentrate") {
    // n = 100: C(100,2)/2 = 2475 expected edges, sigma = sqrt(4950)/2.
    const double mean = 2475.0;
    const double sigma = std::sqrt(4950.0 * 0.25);
    double sum = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto m = static_cast<double>(ptlab::random_graph(100, static_cast<std::uint64_t>(i)).edge_count());
      CHECK(std::abs(m - mean) <= 5.0 * sigma);
      sum += m;
    }
    CHECK(std::abs(sum / 1000.0 - mean) <= 5.0 * sigma / std::sqrt(1000.0));
  }

  TEST_CASE("blowup structure") {
    const auto c4 = ptlab::blowup(ptlab::named_graph("Kn(2)"), 2);
    CHECK(c4.graph.n() == 4);
    CHECK(c4.graph.edge_count() == 4);
    CHECK(ptlab::isomorphic(c4.graph, ptlab::named_graph("C4")));

    const Graph base = ptlab::random_graph(7, 3);
    const int k = 3;
    const auto blown = ptlab::blowup(base, k);
    CHECK(blown.graph.n() == base.n() * k);
    CHECK(blown.graph.edge_count() == static_cast<std::int64_t>(k) * k * base.edge_count());
    // Every pair of parts is complete or empty bipartite; parts are independent sets.
    for (int i = 0; i < base.n(); ++i) {
      const auto& pi = blown.structure.parts[static_cast<std::size_t>(i)];
      for (std::size_t a = 0; a < pi.size(); ++a)
        for (std::size_t b = a + 1; b < pi.size(); ++b) CHECK_FALSE(blown.graph.edge(pi[a], pi[b]));
      for (int j = i + 1; j < base.n(); ++j) {
        const auto& pj = blown.structure.parts[static_cast<std::size_t>(j)];
        int crossing = 0;
        for (int u : pi)
          for (int v : pj) crossing += blown.graph.edge(u, v) ? 1 : 0;
        CHECK(crossing == (base.edge(i, j) ? k * k : 0));
      }
    }
    // One representative per part induces the base graph back.
    std::vector<int> reps;
    for (const auto& part : blown.structure.parts) reps.push_back(part.front());
    CHECK(ptlab::induced_subgraph(blown.graph, reps) == base);

    CHECK(ptlab::isomorphic(ptlab::blowup(base, 1).graph, base));
    CHECK_THROWS_AS(ptlab::blowup(base, 0), std::invalid_argument);
  }

  TEST_CASE("induced subgraphs and relabelings") {
    const Graph g = ptlab::random_graph(10, 11);
    const std::vector<int> verts = {2, 5, 7, 9};
    const Graph sub = ptlab::induced_subgraph(g, verts);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        CHECK(sub.edge(i, j) == g.edge(verts[static_cast<std::size_t>(i)], verts[static_cast<std::size_t>(j)]));

    const std::vector<int> perm = {3, 1, 4, 0, 2, 9, 6, 5, 8, 7};
    const Graph r = ptlab::relabeled(g, perm);
    CHECK(r.edge_count() == g.edge_count());
    CHECK(r.edge(perm[0], perm[1]) == g.edge(0, 1));
  }
}
