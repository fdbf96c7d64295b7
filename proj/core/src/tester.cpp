#include "ptlab/tester.hpp"

#include <cmath>
#include <stdexcept>

#include "ptlab/rng.hpp"
#include "ptlab/util.hpp"

#include <json.hpp>

namespace ptlab {

namespace {

// Ceiling of a nonnegative rational.
BigInt ceil_rational(const Rational& r) {
  BigInt q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  if (rem != 0) q += 1;
  return q;
}

std::int64_t count_acceptances(std::int64_t trials, std::uint64_t seed,
                               const std::function<bool(Rng&)>& one_run) {
  const int chunks = parallel_chunk_count(trials, 4096);
  std::vector<std::int64_t> partial(static_cast<std::size_t>(chunks), 0);
  parallel_chunks(trials, 4096, [&](std::int64_t begin, std::int64_t end, int chunk) {
    std::int64_t acc = 0;
    for (std::int64_t t = begin; t < end; ++t) {
      Rng rng(derived_seed(seed, static_cast<std::uint64_t>(t)));
      if (one_run(rng)) ++acc;
    }
    partial[static_cast<std::size_t>(chunk)] = acc;
  });
  std::int64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

bool run_pot_with(const PotSpec& pot, const Graph& g, Rng& rng, std::vector<int>* sample_out) {
  const auto sample = rng.sample(g.n(), pot.h);
  Rational reject;
  if (pot.h == 4) {
    unsigned mask = 0;
    int bit = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++bit)
        if (g.edge(sample[static_cast<std::size_t>(i)], sample[static_cast<std::size_t>(j)])) mask |= 1u << bit;
    reject = pot.reject4[static_cast<std::size_t>(classify4_mask(mask))];
  } else {
    const auto it = pot.reject_by_code.find(canonical_mask(induced_subgraph(g, sample)));
    reject = it == pot.reject_by_code.end() ? Rational(0) : it->second;
  }
  if (sample_out != nullptr) *sample_out = sample;
  if (reject.is_zero()) return true;
  return !rng.bernoulli(reject);
}

bool run_canonical_with(const TesterSpec& tester, const Graph& g, Rng& rng,
                        std::vector<int>* sample_out) {
  const auto sample = rng.sample(g.n(), tester.s);
  if (sample_out != nullptr) *sample_out = sample;
  if (tester.family.order() == 4 && tester.s == 4) {
    unsigned mask = 0;
    int bit = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j, ++bit)
        if (g.edge(sample[static_cast<std::size_t>(i)], sample[static_cast<std::size_t>(j)])) mask |= 1u << bit;
    return !tester.family.contains_class4(classify4_mask(mask));
  }
  return !tester.family.contains(induced_subgraph(g, sample));
}

}  // namespace

RunOutcome run_pot(const PotSpec& pot, const Graph& g, std::uint64_t seed) {
  if (g.n() < pot.h) throw std::invalid_argument("run_pot: graph smaller than the sample order");
  Rng rng(seed);
  RunOutcome out;
  out.seed = seed;
  out.accepted = run_pot_with(pot, g, rng, &out.sample);
  return out;
}

RunOutcome run_canonical(const TesterSpec& tester, const Graph& g, std::uint64_t seed) {
  if (g.n() < tester.s) throw std::invalid_argument("run_canonical: graph smaller than the sample");
  if (tester.family.order() != tester.s)
    throw std::invalid_argument("run_canonical: family order differs from sample size");
  Rng rng(seed);
  RunOutcome out;
  out.seed = seed;
  out.accepted = run_canonical_with(tester, g, rng, &out.sample);
  return out;
}

Rational canonical_accept_probability(const TesterSpec& tester, const Graph& g, CensusMode mode) {
  return Rational(1) - p_family(tester.family, g, mode);
}

std::int64_t pot_acceptance_count(const PotSpec& pot, const Graph& g, std::int64_t trials,
                                  std::uint64_t seed) {
  if (g.n() < pot.h) throw std::invalid_argument("pot_acceptance_count: graph too small");
  return count_acceptances(trials, seed, [&](Rng& rng) { return run_pot_with(pot, g, rng, nullptr); });
}

std::int64_t canonical_acceptance_count(const TesterSpec& tester, const Graph& g,
                                        std::int64_t trials, std::uint64_t seed) {
  if (g.n() < tester.s) throw std::invalid_argument("canonical_acceptance_count: graph too small");
  return count_acceptances(trials, seed,
                           [&](Rng& rng) { return run_canonical_with(tester, g, rng, nullptr); });
}

AmplifiedPot amplify(const PotSpec& pot, const Rational& eps, const Rational& kappa) {
  const Rational f = pot.margin ? pot.margin(eps) : eps;
  if (f.sign() <= 0) throw std::invalid_argument("amplify: detection margin must be positive");
  AmplifiedPot amp;
  amp.pot = pot;
  amp.margin = f;
  const BigInt t = ceil_rational(kappa / (f * f));
  if (t > BigInt(1) << 30) throw std::invalid_argument("amplify: run count too large");
  amp.runs = t < 1 ? 1 : t.get_si();
  amp.accept_threshold = (pot.c - f / Rational(2)) * Rational(BigInt(amp.runs));
  return amp;
}

RunOutcome run_amplified(const AmplifiedPot& amp, const Graph& g, std::uint64_t seed) {
  std::int64_t accepted = 0;
  for (std::int64_t t = 0; t < amp.runs; ++t) {
    Rng rng(derived_seed(seed, static_cast<std::uint64_t>(t)));
    if (run_pot_with(amp.pot, g, rng, nullptr)) ++accepted;
  }
  RunOutcome out;
  out.seed = seed;
  out.accepted = Rational(BigInt(accepted)) >= amp.accept_threshold;
  return out;
}

Rational binomial_tail_at_least(std::int64_t trials, const Rational& p, const Rational& threshold) {
  const BigInt k_min = ceil_rational(max(threshold, Rational(0)));
  Rational acc(0);
  const Rational q = Rational(1) - p;
  for (std::int64_t k = 0; k <= trials; ++k) {
    if (BigInt(k) < k_min) continue;
    acc += Rational(binomial(static_cast<unsigned long>(trials), static_cast<unsigned long>(k))) *
           pow(p, static_cast<unsigned>(k)) * pow(q, static_cast<unsigned>(trials - k));
  }
  return acc;
}

Rational amplified_accept_probability(const AmplifiedPot& amp, const Graph& g) {
  const Rational accept_one = Rational(1) - pot_rejection_probability(amp.pot, g);
  return binomial_tail_at_least(amp.runs, accept_one, amp.accept_threshold);
}

DoubleSample double_sampling(const TesterSpec& tester, const Graph& g, std::uint64_t seed) {
  const int s = tester.s;
  const std::int64_t need = static_cast<std::int64_t>(s) * s * s * s;
  if (static_cast<std::int64_t>(g.n()) < need)
    throw std::invalid_argument("double_sampling: need n >= s^4");
  Rng rng(seed);
  DoubleSample out;
  out.subset = rng.sample(g.n(), static_cast<int>(need));
  // s blocks of size s, sampled without repetition from U.
  const auto positions = rng.sample(static_cast<int>(need), s * s);
  out.sequence.reserve(static_cast<std::size_t>(s) * static_cast<std::size_t>(s));
  for (int pos : positions) out.sequence.push_back(out.subset[static_cast<std::size_t>(pos)]);
  int good_blocks = 0;
  for (int b = 0; b < s; ++b) {
    const std::span<const int> block(out.sequence.data() + static_cast<std::size_t>(b) * static_cast<std::size_t>(s),
                                     static_cast<std::size_t>(s));
    const bool accepted = !tester.family.contains(induced_subgraph(g, block));
    out.verdict.blocks.push_back(accepted);
    if (accepted) ++good_blocks;
  }
  out.verdict.good = 2 * good_blocks >= s + (s & 1);  // at least ceil(s/2)
  return out;
}

IndistinguishabilityReport indistinguishability_experiment(const Graph& base, int factor,
                                                           const RejectionFamily& family, int s,
                                                           std::int64_t trials, std::uint64_t seed) {
  const int m = base.n();
  if (static_cast<std::int64_t>(s) * s > static_cast<std::int64_t>(m) * factor)
    throw std::invalid_argument("indistinguishability_experiment: s^2 exceeds the blowup order");
  if (family.order() != s)
    throw std::invalid_argument("indistinguishability_experiment: family order differs from s");
  if (s > m) throw std::invalid_argument("indistinguishability_experiment: s exceeds the base order");

  const BlowupResult blown = blowup(base, factor);
  const Graph& gamma = blown.graph;

  IndistinguishabilityReport rep;
  rep.s = s;
  rep.base_n = m;
  rep.factor = factor;
  rep.trials = trials;
  rep.seed = seed;
  rep.collision_bound = Rational(binomial(static_cast<unsigned long>(s), 2), BigInt(m));

  struct Acc {
    std::int64_t hits_gamma = 0, hits_base = 0, multi = 0, cond_trials = 0, cond_hits = 0;
  };
  const int chunks = parallel_chunk_count(trials, 4096);
  std::vector<Acc> partial(static_cast<std::size_t>(chunks));
  parallel_chunks(trials, 4096, [&](std::int64_t begin, std::int64_t end, int chunk) {
    Acc& a = partial[static_cast<std::size_t>(chunk)];
    std::vector<int> parts(static_cast<std::size_t>(s));
    for (std::int64_t t = begin; t < end; ++t) {
      Rng rng(derived_seed(seed, static_cast<std::uint64_t>(t)));
      // One sample of Gamma and one of G per trial.
      const auto sg = rng.sample(gamma.n(), s);
      const bool hit_gamma = family.contains(induced_subgraph(gamma, sg));
      if (hit_gamma) ++a.hits_gamma;
      bool multi = false;
      for (int i = 0; i < s && !multi; ++i) {
        parts[static_cast<std::size_t>(i)] = sg[static_cast<std::size_t>(i)] / factor;
        for (int j = 0; j < i; ++j)
          if (parts[static_cast<std::size_t>(i)] == parts[static_cast<std::size_t>(j)]) multi = true;
      }
      if (multi) {
        ++a.multi;
      } else {
        ++a.cond_trials;
        if (hit_gamma) ++a.cond_hits;
      }
      const auto sb = rng.sample(m, s);
      if (family.contains(induced_subgraph(base, sb))) ++a.hits_base;
    }
  });
  Acc total;
  for (const Acc& a : partial) {
    total.hits_gamma += a.hits_gamma;
    total.hits_base += a.hits_base;
    total.multi += a.multi;
    total.cond_trials += a.cond_trials;
    total.cond_hits += a.cond_hits;
  }

  const double t = static_cast<double>(trials);
  rep.p_blowup = static_cast<double>(total.hits_gamma) / t;
  rep.p_base = static_cast<double>(total.hits_base) / t;
  rep.stderr_blowup = stderr_of_proportion(rep.p_blowup, trials);
  rep.stderr_base = stderr_of_proportion(rep.p_base, trials);
  rep.multi_hit_frequency = static_cast<double>(total.multi) / t;
  rep.conditional_trials = total.cond_trials;
  rep.conditional_p_blowup =
      total.cond_trials > 0 ? static_cast<double>(total.cond_hits) / static_cast<double>(total.cond_trials) : 0.0;

  if (family.analytic() && family.order() == 4) {
    rep.exact_p_base = p_family(family, base);
    rep.exact_p_blowup = p_family(family, gamma);
  }
  rep.blowup_member = is_member(WeightedDensityProperty::named(WeightedDensityProperty::kDefaultName), gamma);
  rep.blowup_phi = phi_value(gamma);

  const double combined = std::sqrt(rep.stderr_blowup * rep.stderr_blowup + rep.stderr_base * rep.stderr_base);
  rep.density_bound_holds =
      rep.p_blowup <= rep.p_base + rep.collision_bound.to_double() + 5.0 * combined;
  const double sigma_multi = stderr_of_proportion(rep.multi_hit_frequency, trials);
  rep.collision_bound_holds =
      rep.multi_hit_frequency <= rep.collision_bound.to_double() + 4.0 * sigma_multi;
  return rep;
}

bool blowup_farness_inequality_holds(int base_n, int factor) {
  const BigInt m(base_n), k(factor);
  const BigInt pairs = binomial(static_cast<unsigned long>(base_n), 2);
  // C(m,2) * (2/5) * k^2 >= (1/10) * (mk)^2, cleared of denominators.
  return pairs * BigInt(4) * k * k >= m * m * k * k;
}

std::string IndistinguishabilityReport::to_json() const {
  nlohmann::json j;
  j["s"] = s;
  j["base_n"] = base_n;
  j["factor"] = factor;
  j["trials"] = trials;
  j["seed"] = seed;
  j["p_blowup"] = p_blowup;
  j["p_base"] = p_base;
  j["stderr_blowup"] = stderr_blowup;
  j["stderr_base"] = stderr_base;
  j["exact_p_base"] = exact_p_base.str();
  j["exact_p_blowup"] = exact_p_blowup.str();
  j["collision_bound"] = collision_bound.str();
  j["multi_hit_frequency"] = multi_hit_frequency;
  j["conditional_p_blowup"] = conditional_p_blowup;
  j["conditional_trials"] = conditional_trials;
  j["blowup_member"] = blowup_member;
  j["blowup_phi"] = blowup_phi.str();
  j["density_bound_holds"] = density_bound_holds;
  j["collision_bound_holds"] = collision_bound_holds;
  return j.dump();
}

}  // namespace ptlab
