#include "ptlab/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ctime>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "ptlab/census.hpp"
#include "ptlab/graph.hpp"
#include "ptlab/property.hpp"
#include "ptlab/quasirandom.hpp"
#include "ptlab/rng.hpp"
#include "ptlab/tester.hpp"
#include "ptlab/util.hpp"

#include <json.hpp>

namespace ptlab {

namespace {

using nlohmann::json;

struct Assertions {
  json list = json::array();
  bool all = true;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    json a;
    a["name"] = name;
    a["pass"] = ok;
    if (!detail.empty()) a["detail"] = detail;
    list.push_back(std::move(a));
    all = all && ok;
  }
};

json parse_params(const std::string& text, const std::map<std::string, json>& defaults) {
  json in = text.empty() ? json::object() : json::parse(text);
  if (!in.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  for (const auto& [key, value] : in.items()) {
    (void)value;
    if (defaults.find(key) == defaults.end())
      throw std::invalid_argument("unknown config key '" + key + "'");
  }
  json out;
  for (const auto& [key, value] : defaults) out[key] = in.contains(key) ? in[key] : value;
  return out;
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ExperimentReport finish(const std::string& name, std::uint64_t seed, const json& config, json body,
                        Assertions& asserts) {
  body["experiment"] = name;
  body["seed"] = seed;
  body["params"] = config;
  body["assertions"] = asserts.list;
  body["pass"] = asserts.all;
  body["verdict"] = asserts.all ? "pass" : "fail";
  body["meta"] = {{"generated_at", timestamp_utc()}};
  ExperimentReport rep;
  rep.name = name;
  rep.pass = asserts.all;
  rep.json = body.dump(2);
  return rep;
}

const WeightedDensityProperty& flagship() {
  return WeightedDensityProperty::named(WeightedDensityProperty::kDefaultName);
}

std::optional<std::pair<Graph, std::int64_t>> find_member(const WeightedDensityProperty& p, int n,
                                                          std::int64_t budget,
                                                          std::uint64_t stream_seed) {
  for (std::int64_t i = 0; i < budget; ++i) {
    Graph g = random_graph(n, derived_seed(stream_seed, static_cast<std::uint64_t>(i)));
    if (is_member(p, g)) return std::make_pair(std::move(g), i + 1);
  }
  return std::nullopt;
}

RejectionFamily random_class4_family(std::uint64_t seed, bool force_nonempty) {
  Rng rng(seed);
  for (;;) {
    const std::uint64_t word = rng.next();
    std::vector<int> classes;
    for (int c = 0; c < kClass4Count; ++c)
      if ((word >> c) & 1ull) classes.push_back(c);
    if (classes.empty() && force_nonempty) continue;
    return RejectionFamily::from_classes4(std::move(classes));
  }
}

json family_names(const RejectionFamily& family) {
  json names = json::array();
  for (int c : family.classes4()) names.push_back(std::string(class4_name(c)));
  return names;
}

// Membership of a 4-vertex edge mask decided through direct injection
// counts: 24 vertex maps checked against the 4-cycle, edges counted for the
// pair density. Shares no code with the census or the weight table.
bool member_by_injection_oracle(unsigned mask) {
  const Graph g = graph_from_mask(4, mask);
  int c4_injections = 0;
  std::array<int, 4> perm = {0, 1, 2, 3};
  do {
    const bool cycle = g.edge(perm[0], perm[1]) && g.edge(perm[1], perm[2]) &&
                       g.edge(perm[2], perm[3]) && g.edge(perm[3], perm[0]);
    if (cycle) ++c4_injections;
  } while (std::next_permutation(perm.begin(), perm.end()));
  const Rational t_c4(c4_injections, 24);
  const Rational t_k2(2 * static_cast<long>(g.edge_count()), 12);
  return Rational(2) * t_c4 - t_k2 + Rational(3, 8) <= Rational(0);
}

ExperimentReport exp_membership_prob(const json& config, std::uint64_t seed) {
  Assertions asserts;
  json body;
  json rows = json::array();
  for (const auto& nv : config.at("n_values")) {
    const int n = nv.get<int>();
    const auto table = labeled_membership_table(flagship(), n);
    std::uint64_t members = 0;
    for (bool b : table) members += b ? 1 : 0;
    const Rational fraction(BigInt(static_cast<unsigned long>(members)),
                            BigInt(static_cast<unsigned long>(table.size())));
    const BigInt n4 = BigInt(n) * n * n * n;
    const Rational bound(BigInt(1), BigInt(2) * n4);
    asserts.check("fraction-at-least-1-over-2n4 (n=" + std::to_string(n) + ")", fraction >= bound,
                  fraction.str() + " vs " + bound.str());
    if (n == 4) {
      std::uint64_t oracle_members = 0;
      for (unsigned mask = 0; mask < 64; ++mask)
        if (member_by_injection_oracle(mask)) ++oracle_members;
      asserts.check("n4-fraction-matches-injection-oracle", oracle_members == members,
                    std::to_string(oracle_members) + " vs " + std::to_string(members));
    }
    json row;
    row["n"] = n;
    row["labeled_graphs"] = table.size();
    row["members"] = members;
    row["fraction"] = fraction.str();
    row["bound"] = bound.str();
    rows.push_back(std::move(row));
  }
  body["counts"] = rows;
  return finish("membership-prob", seed, config, std::move(body), asserts);
}

ExperimentReport exp_member_quasirandom(const json& config, std::uint64_t seed) {
  Assertions asserts;
  json body;
  json rows = json::array();
  const int min_members = config.at("min_members").get<int>();
  const auto budget = config.at("budget").get<std::int64_t>();
  for (const auto& nv : config.at("n_values")) {
    const int n = nv.get<int>();
    const std::string gamma_spec = config.at("gamma").get<std::string>();
    const Rational gamma =
        gamma_spec == "default" ? default_cgw_gamma(n) : Rational::parse(gamma_spec);
    const auto audit = member_quasirandomness_audit(flagship(), n, min_members, budget, gamma,
                                                    derived_seed(seed, static_cast<std::uint64_t>(n)));
    asserts.check("enough-members (n=" + std::to_string(n) + ")", audit.found_enough,
                  std::to_string(audit.members.size()) + " members in " + std::to_string(audit.draws) + " draws");
    asserts.check("exact-density-chain (n=" + std::to_string(n) + ")", audit.all_exact_bounds_hold);
    bool gamma_ok = true;
    for (const auto& rec : audit.members) {
      // cgw at the audited gamma, or min_gamma * sqrt(n) <= 10 checked as
      // min_gamma^2 * n <= 100 to stay exact.
      const bool scaled = pow(rec.min_gamma, 2) * Rational(n) <= Rational(100);
      gamma_ok = gamma_ok && (rec.cgw_pass || scaled);
    }
    asserts.check("cgw-or-scaled-min-gamma (n=" + std::to_string(n) + ")", gamma_ok);
    rows.push_back(json::parse(audit.to_json()));
  }
  body["audits"] = rows;
  return finish("member-quasirandom", seed, config, std::move(body), asserts);
}

ExperimentReport exp_rho_concentration(const json& config, std::uint64_t seed) {
  Assertions asserts;
  json body;
  const int n = config.at("n").get<int>();
  const auto samples = config.at("samples").get<std::int64_t>();
  const auto min_ok = config.at("min_ok").get<std::int64_t>();
  const Rational tolerance = Rational::parse(config.at("tolerance").get<std::string>());

  const RejectionFamily family = random_class4_family(derived_seed(seed, 0), /*force_nonempty=*/false);
  const Rational rho = rho_expected(family);
  std::int64_t ok = 0;
  json deviations = json::array();
  for (std::int64_t i = 0; i < samples; ++i) {
    const Graph g = random_graph(n, derived_seed(seed, static_cast<std::uint64_t>(1 + i)));
    const Rational p = p_family(family, g);
    const Rational dev = abs(p - rho);
    if (dev <= tolerance) ++ok;
    deviations.push_back(dev.to_double());
  }
  asserts.check("within-tolerance-count", ok >= min_ok,
                std::to_string(ok) + "/" + std::to_string(samples) + " within " + tolerance.str());
  body["family"] = family_names(family);
  body["rho"] = rho.str();
  body["ok"] = ok;
  body["deviations"] = deviations;
  return finish("rho-concentration", seed, config, std::move(body), asserts);
}

ExperimentReport exp_blowup_farness(const json& config, std::uint64_t seed) {
  Assertions asserts;
  json body;
  const int m = config.at("m").get<int>();
  const int k = config.at("k").get<int>();
  const Rational delta = Rational::parse(config.at("delta").get<std::string>());
  const auto budget = config.at("member_budget").get<std::int64_t>();

  const auto found = find_member(flagship(), m, budget, derived_seed(seed, 1));
  asserts.check("base-member-found", found.has_value());
  if (!found.has_value()) return finish("blowup-farness", seed, config, std::move(body), asserts);
  const Graph& base = found->first;
  body["member_draws"] = found->second;

  const BlowupResult blown = blowup(base, k);
  const Graph& gamma = blown.graph;
  const int n = gamma.n();
  const Rational z = z_value(flagship(), gamma);
  const Rational phi = phi_value(gamma);
  asserts.check("blowup-nonmember", z > flagship().b(), "z = " + z.str());
  asserts.check("blowup-phi-positive", phi > Rational(0), "phi = " + phi.str());

  // Structural witness: any base edge gives a part pair with crossing
  // density 1 instead of 1/2 +- delta.
  int bi = -1, bj = -1;
  for (int i = 0; i < m && bi < 0; ++i)
    for (int j = i + 1; j < m && bi < 0; ++j)
      if (base.edge(i, j)) {
        bi = i;
        bj = j;
      }
  asserts.check("base-has-an-edge", bi >= 0);
  if (bi >= 0) {
    const auto& u = blown.structure.parts[static_cast<std::size_t>(bi)];
    const auto& v = blown.structure.parts[static_cast<std::size_t>(bj)];
    std::int64_t crossing_edges = 0;
    const bool violates = quasirandom_pair_violates(gamma, delta, u, v, &crossing_edges);
    asserts.check("part-pair-witness-violates-delta", violates,
                  "parts " + std::to_string(bi) + "," + std::to_string(bj) + " with e(U,V) = " +
                      std::to_string(crossing_edges));
    json witness;
    witness["u"] = u;
    witness["v"] = v;
    witness["crossing_edges"] = crossing_edges;
    body["witness"] = witness;
  }

  asserts.check("farness-integer-inequality", blowup_farness_inequality_holds(m, k));

  // The farness arithmetic, reported in both edit-count conventions.
  const Rational changes_pairs = Rational(binomial(static_cast<unsigned long>(m), 2)) *
                                 Rational(2, 5) * Rational(static_cast<long>(k) * k);
  body["z"] = z.str();
  body["phi"] = phi.str();
  body["n"] = n;
  body["min_pair_changes_bound"] = changes_pairs.str();
  body["min_entry_changes_bound"] = (Rational(2) * changes_pairs).str();
  const Rational n_squared(static_cast<long>(n) * n);
  body["eps_pairs_convention"] = (Rational(2) * changes_pairs / n_squared).str();
  body["eps_entries_convention"] = (Rational(2) * changes_pairs / n_squared).str();
  return finish("blowup-farness", seed, config, std::move(body), asserts);
}

ExperimentReport exp_indistinguishability(const json& config, std::uint64_t seed) {
  Assertions asserts;
  json body;
  const int m = config.at("m").get<int>();
  const int k = config.at("k").get<int>();
  const int s = config.at("s").get<int>();
  const auto trials = config.at("trials").get<std::int64_t>();
  const auto budget = config.at("member_budget").get<std::int64_t>();

  const auto found = find_member(flagship(), m, budget, derived_seed(seed, 1));
  asserts.check("base-member-found", found.has_value());
  if (!found.has_value())
    return finish("indistinguishability", seed, config, std::move(body), asserts);
  body["member_draws"] = found->second;

  const RejectionFamily family = random_class4_family(derived_seed(seed, 2), /*force_nonempty=*/true);
  const auto rep =
      indistinguishability_experiment(found->first, k, family, s, trials, derived_seed(seed, 3));
  asserts.check("density-bound", rep.density_bound_holds);
  asserts.check("collision-bound", rep.collision_bound_holds);
  body["family"] = family_names(family);
  body["report"] = json::parse(rep.to_json());
  return finish("indistinguishability", seed, config, std::move(body), asserts);
}

ExperimentReport exp_double_sampling(const json& config, std::uint64_t seed) {
  Assertions asserts;
  json body;
  const int m = config.at("m").get<int>();
  const int k = config.at("k").get<int>();
  const int s = config.at("s").get<int>();
  const auto budget = config.at("member_budget").get<std::int64_t>();
  const auto member_trials = config.at("membership_trials").get<std::int64_t>();
  const auto chi2_trials = config.at("chi2_trials").get<std::int64_t>();
  const Rational max_fraction = Rational::parse(config.at("max_member_fraction").get<std::string>());

  const auto found = find_member(flagship(), m, budget, derived_seed(seed, 1));
  asserts.check("base-member-found", found.has_value());
  if (!found.has_value()) return finish("double-sampling", seed, config, std::move(body), asserts);
  const Graph gamma = blowup(found->first, k).graph;
  const int n = gamma.n();
  const int subset_size = s * s * s * s;
  if (n < subset_size) throw std::invalid_argument("double-sampling: n < s^4");

  // Membership decay of random induced subsamples of the far blowup.
  std::int64_t member_hits = 0;
  {
    const int chunks = parallel_chunk_count(member_trials, 64);
    std::vector<std::int64_t> partial(static_cast<std::size_t>(chunks), 0);
    parallel_chunks(member_trials, 64, [&](std::int64_t begin, std::int64_t end, int chunk) {
      std::int64_t acc = 0;
      for (std::int64_t t = begin; t < end; ++t) {
        Rng rng(derived_seed(seed, static_cast<std::uint64_t>(1000000 + t)));
        const auto u = rng.sample(n, subset_size);
        if (is_member(flagship(), induced_subgraph(gamma, u))) ++acc;
      }
      partial[static_cast<std::size_t>(chunk)] = acc;
    });
    for (auto v : partial) member_hits += v;
  }
  const Rational member_fraction{BigInt(member_hits), BigInt(member_trials)};
  asserts.check("subsample-member-fraction", member_fraction <= max_fraction,
                member_fraction.str() + " <= " + max_fraction.str());
  body["subsample_member_fraction"] = member_fraction.to_double();
  body["subsample_trials"] = member_trials;
  const double frac = std::max(member_fraction.to_double(), 1.0 / static_cast<double>(member_trials));
  body["decay_log_per_s"] = std::log(frac) / static_cast<double>(s);

  // Good/bad machinery over an order-s code family (empty graph and clique),
  // plus the marginal check: the concatenated blocks must be distributed as
  // s^2 vertices sampled without repetition, compared against direct
  // sampling with a two-sample chi-squared statistic.
  std::set<std::uint64_t> codes;
  codes.insert(0);
  codes.insert(canonical_mask(named_graph("Kn(" + std::to_string(s) + ")")));
  TesterSpec tester{s, RejectionFamily::from_codes(s, codes), "empty-or-clique"};

  std::vector<std::int64_t> counts_double(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> counts_direct(static_cast<std::size_t>(n), 0);
  std::int64_t good_count = 0;
  for (std::int64_t t = 0; t < chi2_trials; ++t) {
    const auto ds = double_sampling(tester, gamma, derived_seed(seed, static_cast<std::uint64_t>(2000000 + t)));
    for (int v : ds.sequence) ++counts_double[static_cast<std::size_t>(v)];
    if (ds.verdict.good) ++good_count;
    Rng rng(derived_seed(seed, static_cast<std::uint64_t>(3000000 + t)));
    for (int v : rng.sample(n, s * s)) ++counts_direct[static_cast<std::size_t>(v)];
  }
  int df = 0;
  const double stat = chi2_two_sample(counts_double, counts_direct, &df);
  const double critical = chi2_quantile(df, 0.999);
  asserts.check("marginal-chi2", stat <= critical,
                "stat " + std::to_string(stat) + " vs critical " + std::to_string(critical));
  body["chi2_stat"] = stat;
  body["chi2_df"] = df;
  body["chi2_critical"] = critical;
  body["chi2_trials"] = chi2_trials;
  body["good_fraction"] = static_cast<double>(good_count) / static_cast<double>(chi2_trials);
  return finish("double-sampling", seed, config, std::move(body), asserts);
}

ExperimentReport exp_pot_calibration(const json& config, std::uint64_t seed) {
  Assertions asserts;
  json body;
  const int graphs = config.at("graphs").get<int>();
  const int n = config.at("n").get<int>();
  const auto trials = config.at("trials").get<std::int64_t>();

  const PotSpec pot = pot_from_property(flagship());
  json rows = json::array();
  for (int i = 0; i < graphs; ++i) {
    const Graph g = random_graph(n, derived_seed(seed, static_cast<std::uint64_t>(100 + i)));
    const Rational z = pot_rejection_probability(pot, g);
    const std::int64_t accepted =
        pot_acceptance_count(pot, g, trials, derived_seed(seed, static_cast<std::uint64_t>(200 + i)));
    const double emp_reject = 1.0 - static_cast<double>(accepted) / static_cast<double>(trials);
    const double sigma = std::sqrt(z.to_double() * (1.0 - z.to_double()) / static_cast<double>(trials));
    const double dev = std::abs(emp_reject - z.to_double());
    asserts.check("rejection-within-4-sigma (graph " + std::to_string(i) + ")", dev <= 4.0 * sigma);
    json row;
    row["graph"] = i;
    row["analytic"] = z.str();
    row["empirical"] = emp_reject;
    row["stderr"] = sigma;
    rows.push_back(std::move(row));
  }
  body["runs"] = rows;
  body["c"] = pot.c.str();
  return finish("pot-calibration", seed, config, std::move(body), asserts);
}

using Runner = ExperimentReport (*)(const json&, std::uint64_t);

struct Entry {
  const char* name;
  Runner runner;
  std::map<std::string, json> defaults;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = {
      {"membership-prob", exp_membership_prob, {{"n_values", json::array({4, 5, 6})}}},
      {"member-quasirandom",
       exp_member_quasirandom,
       {{"n_values", json::array({16, 32})}, {"min_members", 30}, {"budget", 5000}, {"gamma", "default"}}},
      {"rho-concentration",
       exp_rho_concentration,
       {{"s", 4}, {"n", 100}, {"samples", 100}, {"min_ok", 99}, {"tolerance", "1/10"}}},
      {"blowup-farness",
       exp_blowup_farness,
       {{"m", 16}, {"k", 16}, {"delta", "1/16"}, {"member_budget", 20000}}},
      {"indistinguishability",
       exp_indistinguishability,
       {{"m", 64}, {"k", 8}, {"s", 4}, {"trials", 100000}, {"member_budget", 20000}}},
      {"double-sampling",
       exp_double_sampling,
       {{"m", 16},
        {"k", 16},
        {"s", 3},
        {"member_budget", 20000},
        {"membership_trials", 2000},
        {"chi2_trials", 100000},
        {"max_member_fraction", "1/10"}}},
      {"pot-calibration", exp_pot_calibration, {{"graphs", 20}, {"n", 30}, {"trials", 100000}}},
  };
  return entries;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : registry()) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

ExperimentReport run_experiment(const std::string& name, const std::string& params_json,
                                std::uint64_t seed) {
  for (const auto& entry : registry()) {
    if (name != entry.name) continue;
    const json config = parse_params(params_json, entry.defaults);
    return entry.runner(config, seed);
  }
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

}  // namespace ptlab
