#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "ptlab/graph.hpp"
#include "ptlab/small_graphs.hpp"

namespace ptlab {

// A set of isomorphism classes of `order`-vertex graphs, used both as
// canonical-tester rejection families and as the F of density estimates.
// Three representations, checked in this order: the 4-vertex class list,
// canonical codes (order <= 8), and an arbitrary predicate on the sampled
// induced subgraph.
class RejectionFamily {
 public:
  static RejectionFamily from_classes4(std::vector<int> classes);
  static RejectionFamily from_codes(int order, std::set<std::uint64_t> canonical_codes);
  static RejectionFamily from_predicate(int order, std::function<bool(const Graph&)> predicate);

  int order() const { return order_; }
  bool analytic() const { return !predicate_; }  // exact p(F,G) computable
  bool contains(const Graph& sample) const;
  bool contains_class4(int cls) const;

  const std::vector<int>& classes4() const { return classes4_; }
  const std::set<std::uint64_t>& codes() const { return codes_; }

 private:
  int order_ = 0;
  std::vector<int> classes4_;  // sorted, unique (order == 4 only)
  std::set<std::uint64_t> codes_;
  std::function<bool(const Graph&)> predicate_;
  std::uint64_t class4_bits_ = 0;
};

}  // namespace ptlab
