#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ptlab/census.hpp"
#include "ptlab/family.hpp"
#include "ptlab/graph.hpp"
#include "ptlab/property.hpp"
#include "ptlab/rational.hpp"

namespace ptlab {

// A canonical tester: sample s vertices uniformly, decide from the
// isomorphism class of the induced subgraph. Rejects iff the sample lands
// in the rejection family.
struct TesterSpec {
  int s = 0;
  RejectionFamily family;
  std::string label;
};

struct RunOutcome {
  bool accepted = false;
  std::vector<int> sample;  // vertices in order of selection
  std::uint64_t seed = 0;   // the outcome is a pure function of this seed
};

// One POT invocation: sample h vertices, reject with the class probability.
// Acceptance probability is exactly 1 - pot_rejection_probability(pot, G).
RunOutcome run_pot(const PotSpec& pot, const Graph& g, std::uint64_t seed);

RunOutcome run_canonical(const TesterSpec& tester, const Graph& g, std::uint64_t seed);

// Exact acceptance probability of a canonical tester, 1 - p(F,G).
Rational canonical_accept_probability(const TesterSpec& tester, const Graph& g,
                                      CensusMode mode = CensusMode::kFast);

// Repeats `trials` independent runs with derived seeds; returns the
// acceptance count. Deterministic and thread-count independent.
std::int64_t pot_acceptance_count(const PotSpec& pot, const Graph& g, std::int64_t trials,
                                  std::uint64_t seed);
std::int64_t canonical_acceptance_count(const TesterSpec& tester, const Graph& g,
                                        std::int64_t trials, std::uint64_t seed);

// Majority amplification: T = ceil(kappa / f(eps)^2) POT invocations,
// accept iff at least (c - f(eps)/2) * T of them accepted.
struct AmplifiedPot {
  PotSpec pot;
  std::int64_t runs = 1;
  Rational accept_threshold;  // compare acceptances against this, >=
  Rational margin;            // f(eps) used to build the runner
};

AmplifiedPot amplify(const PotSpec& pot, const Rational& eps, const Rational& kappa);

RunOutcome run_amplified(const AmplifiedPot& amp, const Graph& g, std::uint64_t seed);

// P[Binomial(trials, p) >= threshold], exact.
Rational binomial_tail_at_least(std::int64_t trials, const Rational& p, const Rational& threshold);

// Exact acceptance probability of the amplified runner on G.
Rational amplified_accept_probability(const AmplifiedPot& amp, const Graph& g);

// The double-sampling device: draw U of size s^4, then s blocks of size s
// from U without repetition; a sequence is good when at least half of the
// blocks are accepted. The concatenated blocks, unconditioned on U, are
// distributed as s^2 vertices of G sampled without repetition.
struct SequenceVerdict {
  std::vector<bool> blocks;
  bool good = false;
};

struct DoubleSample {
  SequenceVerdict verdict;
  std::vector<int> subset;    // U, in order of selection
  std::vector<int> sequence;  // the s^2 sampled vertices, block after block
};

DoubleSample double_sampling(const TesterSpec& tester, const Graph& g, std::uint64_t seed);

// Blowup indistinguishability: compares sampled family densities of a base
// graph G and its factor-k blowup, against the part-collision bound
// C(s,2)/m. Exact densities are attached when the family is order 4.
struct IndistinguishabilityReport {
  int s = 0;
  int base_n = 0;
  int factor = 0;
  std::int64_t trials = 0;
  double p_blowup = 0.0;        // sampled p(F, Gamma)
  double p_base = 0.0;          // sampled p(F, G)
  double stderr_blowup = 0.0;
  double stderr_base = 0.0;
  Rational exact_p_base;        // order-4 families only
  Rational exact_p_blowup;
  Rational collision_bound;     // C(s,2)/m
  double multi_hit_frequency = 0.0;  // some part sampled twice
  double conditional_p_blowup = 0.0; // P[sample in F | no multi-hit]
  std::int64_t conditional_trials = 0;
  bool blowup_member = false;
  Rational blowup_phi;
  bool density_bound_holds = false;   // p_blowup <= p_base + bound + 5 * combined stderr
  bool collision_bound_holds = false; // multi-hit freq <= bound + 4 sigma
  std::uint64_t seed = 0;

  std::string to_json() const;
};

IndistinguishabilityReport indistinguishability_experiment(const Graph& base, int factor,
                                                           const RejectionFamily& family, int s,
                                                           std::int64_t trials, std::uint64_t seed);

// The exact farness arithmetic used with blowups: for parts of size k on a
// base of m >= 10 vertices, C(m,2) * (2/5) * k^2 >= (1/10) * (mk)^2.
bool blowup_farness_inequality_holds(int base_n, int factor);

}  // namespace ptlab
