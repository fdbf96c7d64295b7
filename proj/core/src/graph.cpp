#include "ptlab/graph.hpp"

#include <bit>
#include <charconv>
#include <stdexcept>

#include "ptlab/rng.hpp"
#include "ptlab/small_graphs.hpp"

namespace ptlab {

Graph::Graph(int n) : n_(n), wpr_(n == 0 ? 0 : (n + 63) / 64) {
  if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
  rows_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(wpr_), 0);
}

void Graph::check_vertex(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("Graph: vertex out of range");
}

void Graph::set_edge(int u, int v, bool present) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("Graph: self-loop");
  const auto idx = [this](int a, int b) {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(wpr_) +
           static_cast<std::size_t>(b >> 6);
  };
  const std::uint64_t bu = 1ull << (v & 63);
  const std::uint64_t bv = 1ull << (u & 63);
  if (present) {
    rows_[idx(u, v)] |= bu;
    rows_[idx(v, u)] |= bv;
  } else {
    rows_[idx(u, v)] &= ~bu;
    rows_[idx(v, u)] &= ~bv;
  }
}

int Graph::degree(int u) const {
  check_vertex(u);
  int d = 0;
  for (std::uint64_t w : row(u)) d += std::popcount(w);
  return d;
}

std::int64_t Graph::edge_count() const {
  std::int64_t twice = 0;
  for (std::uint64_t w : rows_) twice += std::popcount(w);
  return twice / 2;
}

int Graph::codegree(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const std::uint64_t* a = rows_.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(wpr_);
  const std::uint64_t* b = rows_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(wpr_);
  int c = 0;
  for (int i = 0; i < wpr_; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

Graph complement(const Graph& g) {
  const int n = g.n();
  Graph out(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (!g.edge(u, v)) out.set_edge(u, v);
  return out;
}

Graph random_graph(int n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("random_graph: negative n");
  Graph g(n);
  Rng rng(seed);
  std::uint64_t word = 0;
  int bits_left = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (bits_left == 0) {
        word = rng.next();
        bits_left = 64;
      }
      if (word & 1ull) g.set_edge(u, v);
      word >>= 1;
      --bits_left;
    }
  }
  return g;
}

Graph induced_subgraph(const Graph& g, std::span<const int> vertices) {
  const int k = static_cast<int>(vertices.size());
  Graph out(k);
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (g.edge(vertices[static_cast<std::size_t>(i)], vertices[static_cast<std::size_t>(j)]))
        out.set_edge(i, j);
  return out;
}

Graph relabeled(const Graph& g, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != g.n())
    throw std::invalid_argument("relabeled: permutation size mismatch");
  Graph out(g.n());
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v)
      if (g.edge(u, v))
        out.set_edge(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]);
  return out;
}

BlowupResult blowup(const Graph& base, int factor) {
  if (factor < 1) throw std::invalid_argument("blowup: factor must be >= 1");
  const int m = base.n();
  BlowupResult out;
  out.graph = Graph(m * factor);
  out.structure.base_n = m;
  out.structure.factor = factor;
  out.structure.parts.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    auto& part = out.structure.parts[static_cast<std::size_t>(i)];
    part.reserve(static_cast<std::size_t>(factor));
    for (int a = 0; a < factor; ++a) part.push_back(i * factor + a);
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (base.edge(i, j))
        for (int a = 0; a < factor; ++a)
          for (int b = 0; b < factor; ++b)
            out.graph.set_edge(i * factor + a, j * factor + b);
  return out;
}

namespace {

Graph parametric(char kind, int n) {
  if (n < 0) throw std::invalid_argument("named_graph: negative order");
  Graph g(n);
  switch (kind) {
    case 'E':
      return g;
    case 'K':
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.set_edge(u, v);
      return g;
    case 'C':
      if (n < 3) throw std::invalid_argument("named_graph: cycle needs >= 3 vertices");
      for (int u = 0; u < n; ++u) g.set_edge(u, (u + 1) % n);
      return g;
    default:
      throw std::invalid_argument("named_graph: unknown family");
  }
}

}  // namespace

Graph named_graph(std::string_view name) {
  // Parametric families: Kn(8), En(5), Cn(12).
  if (name.size() > 4 && name.substr(1, 2) == "n(" && name.back() == ')') {
    const std::string_view digits = name.substr(3, name.size() - 4);
    int n = 0;
    const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (res.ec != std::errc() || res.ptr != digits.data() + digits.size())
      throw std::invalid_argument("named_graph: bad order in '" + std::string(name) + "'");
    return parametric(name.front(), n);
  }
  const int cls = class4_by_name(name);
  if (cls < 0) throw std::invalid_argument("named_graph: unknown name '" + std::string(name) + "'");
  return class4_representative(cls);
}

}  // namespace ptlab
