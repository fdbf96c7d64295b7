#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ptlab {

// Undirected simple graph stored as packed adjacency bit rows. Row u holds
// one bit per vertex; bit(u,v) == bit(v,u) and the diagonal is zero. The
// packed layout makes codegree computation a word-parallel AND + popcount,
// which is what the census kernels live on. Graphs are treated as immutable
// once built and are safe to share across threads.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  int n() const { return n_; }
  int words_per_row() const { return wpr_; }

  bool edge(int u, int v) const {
    return (rows_[static_cast<std::size_t>(u) * static_cast<std::size_t>(wpr_) +
                  static_cast<std::size_t>(v >> 6)] >>
            (v & 63)) &
           1ull;
  }

  void set_edge(int u, int v, bool present = true);

  std::span<const std::uint64_t> row(int u) const {
    return {rows_.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(wpr_),
            static_cast<std::size_t>(wpr_)};
  }

  int degree(int u) const;
  std::int64_t edge_count() const;

  // Codegree |N(u) & N(v)|; never counts u or v (the diagonal is zero).
  int codegree(int u, int v) const;

  // Number of edges with both endpoints in `mask` AND-able with rows.
  std::span<const std::uint64_t> raw() const { return rows_; }

  bool operator==(const Graph& other) const = default;

 private:
  void check_vertex(int v) const;

  int n_ = 0;
  int wpr_ = 0;
  std::vector<std::uint64_t> rows_;
};

Graph complement(const Graph& g);

// G(n, 1/2) under the project generator: pair (u,v), u < v, in lexicographic
// order consumes bit (t mod 64) of the (t div 64)-th splitmix64 output.
Graph random_graph(int n, std::uint64_t seed);

Graph induced_subgraph(const Graph& g, std::span<const int> vertices);
Graph relabeled(const Graph& g, std::span<const int> perm);

struct BlowupStructure {
  int base_n = 0;
  int factor = 0;
  std::vector<std::vector<int>> parts;  // parts[i] = vertices standing in for base vertex i
};

struct BlowupResult {
  Graph graph;
  BlowupStructure structure;
};

// Replaces every vertex of `base` with an independent set of `factor`
// vertices and every (non-)edge with a complete (empty) bipartite graph.
BlowupResult blowup(const Graph& base, int factor);

// Named graphs: the eleven 4-vertex classes (K4, K4c, D4, D4c, P3, P3c, C4,
// C4c, K13, K13c, P4; complements computed, not hand-coded) plus the
// parametric families Kn(n), En(n), Cn(n).
Graph named_graph(std::string_view name);

}  // namespace ptlab
