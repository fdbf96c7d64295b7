#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "ptlab/graph.hpp"

namespace ptlab {

// The eleven isomorphism classes of 4-vertex graphs, in the fixed table
// order used throughout: complement pairs adjacent, P4 self-paired.
inline constexpr int kClass4Count = 11;
enum Class4 : int {
  kK4 = 0,
  kK4c = 1,
  kD4 = 2,
  kD4c = 3,
  kP3 = 4,
  kP3c = 5,
  kC4 = 6,
  kC4c = 7,
  kK13 = 8,
  kK13c = 9,
  kP4 = 10,
};

std::string_view class4_name(int cls);
int class4_by_name(std::string_view name);  // -1 when unknown
int class4_complement(int cls);
int class4_aut(int cls);                 // |Aut|, e.g. 8 for the 4-cycle
std::uint64_t class4_labeled_count(int cls);  // labeled copies on 4 fixed vertices
Graph class4_representative(int cls);

// Edge masks of 4-vertex graphs use pair order (0,1),(0,2),(0,3),(1,2),(1,3),(2,3).
int classify4_mask(unsigned mask);  // 6-bit mask -> class index
int classify4(const Graph& g);      // requires |V| = 4

// Pair-index helpers for order <= 11 (mask fits in 64 bits up to order 11;
// the canonical machinery below is capped at order 8 by cost).
int pair_bit_count(int order);
std::uint64_t mask_from_graph(const Graph& g);
Graph graph_from_mask(int order, std::uint64_t mask);

// Minimum edge mask over all vertex relabelings; two graphs of equal order
// get the same code iff they are isomorphic. Brute force, order <= 8.
std::uint64_t canonical_mask(const Graph& g);

std::uint64_t aut_count(const Graph& g);      // order <= 8
bool isomorphic(const Graph& a, const Graph& b);

// Canonical masks of all isomorphism classes of the given order (<= 7),
// sorted. Built by edge-augmentation from the empty graph.
const std::vector<std::uint64_t>& class_masks(int order);

// subgraph_copies4()[p][h]: number of edge subsets of a class-h 4-vertex
// graph that form a class-p graph on the same four vertices. Row/column
// order is the Class4 order. Unit upper-triangular under edge count, so the
// copy-count -> induced-count inversion below is integral.
const std::array<std::array<int, 11>, 11>& subgraph_copies4();
const std::array<std::array<long long, 11>, 11>& subgraph_copies4_inverse();

}  // namespace ptlab
