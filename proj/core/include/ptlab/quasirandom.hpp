#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ptlab/graph.hpp"
#include "ptlab/property.hpp"
#include "ptlab/rational.hpp"

namespace ptlab {

enum class QuasiMode { kExact, kSampled };

struct QuasirandomWitness {
  std::vector<int> u;  // sorted
  std::vector<int> v;  // sorted
  std::int64_t crossing_edges = 0;
};

struct QuasirandomReport {
  int n = 0;
  Rational delta;
  QuasiMode mode = QuasiMode::kExact;
  // Exact mode: violation_found is a ground-truth verdict. Sampled mode can
  // only refute: violation_found == false just means no violation was found
  // within the budget.
  bool violation_found = false;
  std::optional<QuasirandomWitness> witness;
  Rational edge_density;  // t_inj(K2,G)
  Rational c4_density;    // t_inj(C4,G)
  Rational kst;           // kst_defect(G)
  std::int64_t pairs_examined = 0;
  std::uint64_t seed = 0;

  std::string to_json() const;
};

// delta-quasirandomness with density 1/2: every pair of disjoint sets U,V
// with |U|,|V| >= delta*n has e(U,V) = (1/2 +- delta)|U||V|. Exact mode
// enumerates all disjoint set pairs (n <= 14); sampled mode probes `budget`
// random pairs with sizes drawn from [ceil(delta*n), n/2].
QuasirandomReport is_delta_quasirandom(const Graph& g, const Rational& delta, QuasiMode mode,
                                       std::int64_t budget = 0, std::uint64_t seed = 0);

// Validates a specific (U,V) pair; used for structural witnesses.
bool quasirandom_pair_violates(const Graph& g, const Rational& delta, std::span<const int> u,
                               std::span<const int> v, std::int64_t* crossing_edges = nullptr);

struct CgwParams {
  enum class Source { kConfigured, kDerivedFromDelta };
  Rational gamma;
  int n0 = 4;
  Source source = Source::kConfigured;
};

// The published dependence is gamma ~ delta^12, n0 ~ delta^-12 with unknown
// constants; they stay configuration here and carry no claimed default.
CgwParams cgw_from_delta(const Rational& delta, const Rational& gamma_constant = Rational(1),
                         const Rational& n0_constant = Rational(1));

// gamma = sqrt(8/n) (exact binary value of the double), the instance-size
// default used when nothing better is known.
Rational default_cgw_gamma(int n);

// The edge/4-cycle condition: t_inj(K2,G) = 1/2 +- gamma and
// t_inj(C4,G) <= 1/16 + gamma, both compared exactly.
bool cgw_check(const Graph& g, const Rational& gamma);

// Smallest gamma for which cgw_check passes.
Rational cgw_min_gamma(const Graph& g);

// f(x) = 2x^4 - x + 3/8: the window polynomial controlling how membership
// pins the edge density to 1/2.
Rational f_window(const Rational& x);

struct MemberQuasirandomRecord {
  std::uint64_t seed_index = 0;
  Rational t_k2;
  Rational t_c4;
  Rational phi;
  Rational defect;
  bool f_bound_holds = false;       // f(t_K2) <= 2 * defect
  bool c4_window_holds = false;     // t_C4 <= t_K2/2 - 3/16
  bool cgw_pass = false;            // at the audited gamma
  Rational min_gamma;               // smallest passing gamma
};

struct MemberQuasirandomAudit {
  int n = 0;
  Rational gamma;
  std::int64_t draws = 0;
  std::vector<MemberQuasirandomRecord> members;
  bool found_enough = false;
  bool all_exact_bounds_hold = false;

  std::string to_json() const;
};

// Rejection-samples G(n,1/2) until `min_members` members of `p` are found
// (or the draw budget runs out, which is reported, not fatal), then checks
// the exact density chain and the cgw condition on each member.
MemberQuasirandomAudit member_quasirandomness_audit(const WeightedDensityProperty& p, int n,
                                                    int min_members, std::int64_t budget,
                                                    const Rational& gamma, std::uint64_t seed);

}  // namespace ptlab
