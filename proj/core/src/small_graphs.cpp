#include "ptlab/small_graphs.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

#include "ptlab/rational.hpp"

namespace ptlab {

namespace {

constexpr std::array<std::string_view, 11> kNames = {
    "K4", "K4c", "D4", "D4c", "P3", "P3c", "C4", "C4c", "K13", "K13c", "P4"};

// Representatives as 6-bit masks, pair order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
// Complement classes are derived (mask XOR 63), not hand-coded.
constexpr unsigned kRepK4 = 0b111111;   // all six pairs
constexpr unsigned kRepD4 = kRepK4 & ~(1u << 5);  // drop (2,3)
constexpr unsigned kRepP3 = (1u << 0) | (1u << 3);             // 0-1-2 path, 3 isolated
constexpr unsigned kRepC4 = (1u << 0) | (1u << 3) | (1u << 5) | (1u << 2);  // 0-1-2-3-0
constexpr unsigned kRepK13 = (1u << 0) | (1u << 1) | (1u << 2);             // center 0
constexpr unsigned kRepP4 = (1u << 0) | (1u << 3) | (1u << 5);              // 0-1-2-3

constexpr std::array<unsigned, 11> kRepMasks = {
    kRepK4,  kRepK4 ^ 63u,  kRepD4,  kRepD4 ^ 63u,  kRepP3, kRepP3 ^ 63u,
    kRepC4,  kRepC4 ^ 63u,  kRepK13, kRepK13 ^ 63u, kRepP4};

int pair_index(int order, int i, int j) {
  // (i,j), i < j, in lexicographic order.
  int idx = 0;
  for (int a = 0; a < i; ++a) idx += order - 1 - a;
  return idx + (j - i - 1);
}

// All permutations of [0,order) as flat arrays.
std::vector<std::vector<int>> permutations(int order) {
  std::vector<int> p(static_cast<std::size_t>(order));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// For each permutation, bit_maps[k][b] = destination bit of source bit b.
std::vector<std::vector<int>> permutation_bit_maps(int order) {
  const auto perms = permutations(order);
  const int bits = order * (order - 1) / 2;
  std::vector<std::vector<int>> maps;
  maps.reserve(perms.size());
  for (const auto& perm : perms) {
    std::vector<int> bm(static_cast<std::size_t>(bits));
    for (int i = 0; i < order; ++i) {
      for (int j = i + 1; j < order; ++j) {
        const int a = std::min(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        const int b = std::max(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        bm[static_cast<std::size_t>(pair_index(order, i, j))] = pair_index(order, a, b);
      }
    }
    maps.push_back(std::move(bm));
  }
  return maps;
}

const std::vector<std::vector<int>>& bit_maps_for(int order) {
  static const std::array<std::vector<std::vector<int>>, 9> cache = [] {
    std::array<std::vector<std::vector<int>>, 9> c;
    for (int k = 1; k <= 8; ++k) c[static_cast<std::size_t>(k)] = permutation_bit_maps(k);
    return c;
  }();
  if (order < 1 || order > 8)
    throw std::invalid_argument("small graph machinery is capped at order 8");
  return cache[static_cast<std::size_t>(order)];
}

std::uint64_t apply_bit_map(std::uint64_t mask, const std::vector<int>& bm) {
  std::uint64_t out = 0;
  while (mask != 0) {
    const int b = std::countr_zero(mask);
    out |= 1ull << bm[static_cast<std::size_t>(b)];
    mask &= mask - 1;
  }
  return out;
}

std::uint64_t canonical_mask_of(int order, std::uint64_t mask) {
  std::uint64_t best = mask;
  for (const auto& bm : bit_maps_for(order)) {
    const std::uint64_t img = apply_bit_map(mask, bm);
    if (img < best) best = img;
  }
  return best;
}

// classify4 lookup, one entry per 6-bit edge mask, built by brute-force
// isomorphism against the representatives.
const std::array<int, 64>& classify4_table() {
  static const std::array<int, 64> table = [] {
    std::array<std::uint64_t, 11> canon{};
    for (int c = 0; c < kClass4Count; ++c) canon[static_cast<std::size_t>(c)] = canonical_mask_of(4, kRepMasks[static_cast<std::size_t>(c)]);
    std::array<int, 64> t{};
    for (unsigned m = 0; m < 64; ++m) {
      const std::uint64_t cm = canonical_mask_of(4, m);
      int cls = -1;
      for (int c = 0; c < kClass4Count; ++c)
        if (canon[static_cast<std::size_t>(c)] == cm) cls = c;
      if (cls < 0) throw std::logic_error("classify4: mask missing from class table");
      t[m] = cls;
    }
    return t;
  }();
  return table;
}

}  // namespace

std::string_view class4_name(int cls) {
  if (cls < 0 || cls >= kClass4Count) throw std::out_of_range("class4_name");
  return kNames[static_cast<std::size_t>(cls)];
}

int class4_by_name(std::string_view name) {
  for (int c = 0; c < kClass4Count; ++c)
    if (kNames[static_cast<std::size_t>(c)] == name) return c;
  return -1;
}

int class4_complement(int cls) {
  if (cls < 0 || cls >= kClass4Count) throw std::out_of_range("class4_complement");
  return classify4_mask(static_cast<unsigned>(kRepMasks[static_cast<std::size_t>(cls)]) ^ 63u);
}

Graph class4_representative(int cls) {
  if (cls < 0 || cls >= kClass4Count) throw std::out_of_range("class4_representative");
  return graph_from_mask(4, kRepMasks[static_cast<std::size_t>(cls)]);
}

int classify4_mask(unsigned mask) {
  if (mask >= 64) throw std::out_of_range("classify4_mask");
  return classify4_table()[mask];
}

int classify4(const Graph& g) {
  if (g.n() != 4) throw std::invalid_argument("classify4: graph must have 4 vertices");
  return classify4_mask(static_cast<unsigned>(mask_from_graph(g)));
}

int class4_aut(int cls) {
  static const std::array<int, 11> aut = [] {
    std::array<int, 11> a{};
    for (int c = 0; c < kClass4Count; ++c)
      a[static_cast<std::size_t>(c)] = static_cast<int>(aut_count(class4_representative(c)));
    return a;
  }();
  if (cls < 0 || cls >= kClass4Count) throw std::out_of_range("class4_aut");
  return aut[static_cast<std::size_t>(cls)];
}

std::uint64_t class4_labeled_count(int cls) {
  // |Aut(H)| * labeled copies = 4!.
  return 24ull / static_cast<std::uint64_t>(class4_aut(cls));
}

int pair_bit_count(int order) { return order * (order - 1) / 2; }

std::uint64_t mask_from_graph(const Graph& g) {
  const int n = g.n();
  if (pair_bit_count(n) > 63) throw std::invalid_argument("mask_from_graph: order too large");
  std::uint64_t mask = 0;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (g.edge(i, j)) mask |= 1ull << bit;
  return mask;
}

Graph graph_from_mask(int order, std::uint64_t mask) {
  Graph g(order);
  int bit = 0;
  for (int i = 0; i < order; ++i)
    for (int j = i + 1; j < order; ++j, ++bit)
      if ((mask >> bit) & 1ull) g.set_edge(i, j);
  return g;
}

std::uint64_t canonical_mask(const Graph& g) {
  return canonical_mask_of(g.n(), mask_from_graph(g));
}

std::uint64_t aut_count(const Graph& g) {
  const std::uint64_t mask = mask_from_graph(g);
  std::uint64_t count = 0;
  for (const auto& bm : bit_maps_for(g.n()))
    if (apply_bit_map(mask, bm) == mask) ++count;
  return count;
}

bool isomorphic(const Graph& a, const Graph& b) {
  if (a.n() != b.n()) return false;
  if (a.edge_count() != b.edge_count()) return false;
  return canonical_mask(a) == canonical_mask(b);
}

namespace {

std::vector<std::uint64_t> enumerate_class_masks(int order) {
  // Edge augmentation: every class with e+1 edges is one edge away from a
  // class with e edges, so a BFS from the empty graph reaches everything.
  const int bits = pair_bit_count(order);
  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> frontier = {0};
  seen.insert(0);
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (const std::uint64_t rep : frontier) {
      for (int b = 0; b < bits; ++b) {
        if ((rep >> b) & 1ull) continue;
        const std::uint64_t child = canonical_mask_of(order, rep | (1ull << b));
        if (seen.insert(child).second) next.push_back(child);
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

const std::vector<std::uint64_t>& class_masks(int order) {
  if (order < 1 || order > 7) throw std::invalid_argument("class_masks: order must be in [1,7]");
  static std::mutex mutex;
  static std::array<std::vector<std::uint64_t>, 8> cache;
  const std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(order)];
  if (slot.empty()) slot = enumerate_class_masks(order);
  return slot;
}

const std::array<std::array<int, 11>, 11>& subgraph_copies4() {
  static const std::array<std::array<int, 11>, 11> m = [] {
    std::array<std::array<int, 11>, 11> t{};
    for (int h = 0; h < kClass4Count; ++h) {
      const std::uint64_t hm = kRepMasks[static_cast<std::size_t>(h)];
      // Enumerate edge subsets of the representative.
      std::uint64_t sub = hm;
      while (true) {
        ++t[static_cast<std::size_t>(classify4_mask(static_cast<unsigned>(sub)))][static_cast<std::size_t>(h)];
        if (sub == 0) break;
        sub = (sub - 1) & hm;
      }
    }
    return t;
  }();
  return m;
}

const std::array<std::array<long long, 11>, 11>& subgraph_copies4_inverse() {
  static const std::array<std::array<long long, 11>, 11> inv = [] {
    const auto& m = subgraph_copies4();
    // Gaussian elimination over exact rationals; the matrix is unimodular,
    // so the inverse must come out integral.
    std::array<std::array<Rational, 22>, 11> a{};
    for (int i = 0; i < 11; ++i) {
      for (int j = 0; j < 11; ++j) a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(11 + i)] = 1;
    }
    for (int col = 0; col < 11; ++col) {
      int pivot = -1;
      for (int r = col; r < 11; ++r)
        if (!a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) {
          pivot = r;
          break;
        }
      if (pivot < 0) throw std::logic_error("subgraph_copies4: singular matrix");
      std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(col)]);
      const Rational inv_p = Rational(1) / a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      for (int c = 0; c < 22; ++c) a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)] *= inv_p;
      for (int r = 0; r < 11; ++r) {
        if (r == col || a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)].is_zero()) continue;
        const Rational f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
        for (int c = 0; c < 22; ++c)
          a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -= f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
      }
    }
    std::array<std::array<long long, 11>, 11> out{};
    for (int i = 0; i < 11; ++i)
      for (int j = 0; j < 11; ++j) {
        const Rational& v = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(11 + j)];
        if (!v.is_integer()) throw std::logic_error("subgraph_copies4: non-integer inverse");
        out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v.num().get_si();
      }
    return out;
  }();
  return inv;
}

}  // namespace ptlab
