#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ptlab/family.hpp"
#include "ptlab/graph.hpp"
#include "ptlab/rational.hpp"
#include "ptlab/small_graphs.hpp"

namespace ptlab {

enum class CensusMode { kReference, kFast };

// Exact counts of the 11 classes of 4-vertex induced subgraphs.
// counts sum to C(n,4); n < 4 gives the all-zero profile.
struct FourProfile {
  std::array<std::uint64_t, 11> counts{};
  int n = 0;

  BigInt total() const { return binomial(static_cast<unsigned long>(n), 4); }
};

// Reference mode enumerates all C(n,4) quadruples; fast mode assembles the
// profile from word-parallel codegree kernels and an exact inversion over
// the 4-vertex subgraph lattice. The two agree exactly.
FourProfile four_profile(const Graph& g, CensusMode mode = CensusMode::kFast);

FourProfile complement_profile(const FourProfile& p);

Rational p_induced(int cls, const FourProfile& profile);
Rational p_induced(int cls, const Graph& g);

// Pairwise codegree aggregates; one pass over all vertex pairs.
struct PairAggregates {
  int n = 0;
  std::int64_t m = 0;
  std::vector<int> degree;
  std::vector<std::int64_t> tri2;  // per vertex: 2 * (triangles through v)
  unsigned long long sum_codeg_edges = 0;      // = 3 * triangle count
  unsigned long long sum_choose2_edges = 0;    // sum over edges of C(codeg,2)
  unsigned long long sum_choose2_nonedges = 0;
  unsigned long long sum_cc1_all = 0;          // sum over pairs of codeg*(codeg-1)
  unsigned long long sum_codeg_sq_all = 0;     // sum over pairs of codeg^2
};

PairAggregates pair_aggregates(const Graph& g);

// Injective embedding densities, normalized by the falling factorial.
// t_inj_c4 goes through the codegree kernel directly and is therefore an
// independent route from the census-based t_inj4/t_ind4 below.
Rational t_inj_k2(const Graph& g);  // = 2m / (n(n-1)); n >= 2
Rational t_inj_c4(const Graph& g);  // 0 when n < 4
Rational t_inj4(int cls, const Graph& g);
Rational t_ind4(int cls, const Graph& g);
Rational t_inj4(int cls, const FourProfile& profile);
Rational t_ind4(int cls, const FourProfile& profile);

// Homomorphism densities (degenerate maps included) and the exact
// C4-vs-edge inequality t(C4,G) >= t(K2,G)^4.
Rational hom_t_k2(const Graph& g);
Rational hom_t_c4(const Graph& g);
bool hom_c4_inequality_holds(const Graph& g);

// max(0, t_inj(K2)^4 - t_inj(C4)): the measured violation of the
// injective-density version of the inequality; vanishes as n grows.
Rational kst_defect(const Graph& g);

// p(F,G) recomputed by averaging through all intermediate classes of the
// given order (4 <= order <= min(n,7)); equals p_induced(F,G) exactly.
Rational p_via_intermediate(int cls, const Graph& g, int intermediate_order);

// Exact p(F,G) = sum of class densities over the family. Order 4 uses the
// census; canonical-code families enumerate all C(n,s) subsets (small n).
Rational p_family(const RejectionFamily& family, const Graph& g, CensusMode mode = CensusMode::kFast);

// Expected p(F, G(n,1/2)) as n -> infinity: sum over F of 2^-C(s,2) s!/aut(F).
Rational rho_expected(const RejectionFamily& family);

struct DensityEstimate {
  Rational point;       // hits / trials
  std::int64_t trials = 0;
  double stderr_value = 0.0;  // sqrt(p(1-p)/trials)
  std::uint64_t seed = 0;
};

// Monte Carlo estimate of p(F,G) by sampling vertex sets without
// replacement; deterministic given the seed, independent of thread count.
DensityEstimate sample_density(const RejectionFamily& family, const Graph& g, std::int64_t trials,
                               std::uint64_t seed);

std::string census_json(const FourProfile& profile);

}  // namespace ptlab
