#include "ptlab/family.hpp"

#include <algorithm>
#include <stdexcept>

namespace ptlab {

RejectionFamily RejectionFamily::from_classes4(std::vector<int> classes) {
  RejectionFamily f;
  f.order_ = 4;
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  for (int c : classes) {
    if (c < 0 || c >= kClass4Count) throw std::invalid_argument("RejectionFamily: bad class index");
    f.class4_bits_ |= 1ull << c;
  }
  f.classes4_ = std::move(classes);
  return f;
}

RejectionFamily RejectionFamily::from_codes(int order, std::set<std::uint64_t> canonical_codes) {
  if (order < 1 || order > 8) throw std::invalid_argument("RejectionFamily: code order must be <= 8");
  RejectionFamily f;
  f.order_ = order;
  f.codes_ = std::move(canonical_codes);
  return f;
}

RejectionFamily RejectionFamily::from_predicate(int order, std::function<bool(const Graph&)> predicate) {
  if (order < 1) throw std::invalid_argument("RejectionFamily: bad order");
  RejectionFamily f;
  f.order_ = order;
  f.predicate_ = std::move(predicate);
  return f;
}

bool RejectionFamily::contains(const Graph& sample) const {
  if (sample.n() != order_) throw std::invalid_argument("RejectionFamily: sample order mismatch");
  if (order_ == 4 && !predicate_) return contains_class4(classify4(sample));
  if (!codes_.empty() || (!predicate_ && order_ <= 8))
    return codes_.count(canonical_mask(sample)) > 0;
  return predicate_(sample);
}

bool RejectionFamily::contains_class4(int cls) const { return (class4_bits_ >> cls) & 1ull; }

}  // namespace ptlab
