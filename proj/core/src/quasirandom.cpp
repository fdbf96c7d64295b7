#include "ptlab/quasirandom.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ptlab/census.hpp"
#include "ptlab/rng.hpp"
#include "ptlab/util.hpp"

#include <json.hpp>

namespace ptlab {

namespace {

std::vector<int> mask_to_sorted(std::uint64_t mask) {
  std::vector<int> out;
  while (mask != 0) {
    out.push_back(std::countr_zero(mask));
    mask &= mask - 1;
  }
  return out;
}

// Smallest integer strictly greater than 2*delta*a*b.
long long violation_threshold(const Rational& delta, long long a, long long b) {
  const BigInt x = BigInt(2) * delta.num() * BigInt(static_cast<long>(a)) * BigInt(static_cast<long>(b));
  BigInt t = x / delta.den() + 1;
  if (!t.fits_slong_p()) return (1ll << 62);
  return t.get_si();
}

// Smallest s with s >= delta * n.
long long min_set_size(const Rational& delta, int n) {
  const BigInt num = delta.num() * BigInt(n);
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), delta.den().get_mpz_t());
  if (r != 0) q += 1;
  if (q < 0) return 0;
  return q.get_si();
}

struct ExactSearch {
  const Graph* g;
  int n;
  std::vector<std::uint64_t> adj;  // one word per row, n <= 14
  long long smin;
  // thresholds[a][b]: |2e - ab| >= value  <=>  the pair (|U|=a,|V|=b) violates
  std::vector<std::vector<long long>> thresholds;
  std::int64_t examined = 0;
  bool found = false;
  std::uint64_t witness_u = 0, witness_v = 0;
  std::int64_t witness_e = 0;

  void run(int vertex, std::uint64_t umask, std::uint64_t vmask, int usz, int vsz, long long e) {
    if (found) return;
    if (vertex == n) {
      if (usz < smin || vsz < smin) return;
      ++examined;
      const long long ab = static_cast<long long>(usz) * vsz;
      const long long dev = std::abs(2 * e - ab);
      if (dev >= thresholds[static_cast<std::size_t>(usz)][static_cast<std::size_t>(vsz)]) {
        found = true;
        witness_u = umask;
        witness_v = vmask;
        witness_e = e;
      }
      return;
    }
    const int remaining = n - vertex;
    if (usz + remaining < smin || vsz + remaining < smin) return;
    const std::uint64_t row = adj[static_cast<std::size_t>(vertex)];
    run(vertex + 1, umask, vmask, usz, vsz, e);  // skip
    run(vertex + 1, umask | (1ull << vertex), vmask, usz + 1, vsz,
        e + std::popcount(row & vmask));
    if (found) return;
    run(vertex + 1, umask, vmask | (1ull << vertex), usz, vsz + 1,
        e + std::popcount(row & umask));
  }
};

std::int64_t crossing(const Graph& g, std::span<const int> u, const std::vector<std::uint64_t>& vmask) {
  std::int64_t e = 0;
  for (int x : u) {
    const auto row = g.row(x);
    for (std::size_t w = 0; w < vmask.size(); ++w)
      e += std::popcount(row[w] & vmask[w]);
  }
  return e;
}

std::vector<std::uint64_t> make_mask(int n, std::span<const int> verts) {
  std::vector<std::uint64_t> mask(static_cast<std::size_t>((n + 63) / 64), 0);
  for (int v : verts) mask[static_cast<std::size_t>(v >> 6)] |= 1ull << (v & 63);
  return mask;
}

}  // namespace

bool quasirandom_pair_violates(const Graph& g, const Rational& delta, std::span<const int> u,
                               std::span<const int> v, std::int64_t* crossing_edges) {
  const auto vmask = make_mask(g.n(), v);
  const std::int64_t e = crossing(g, u, vmask);
  if (crossing_edges != nullptr) *crossing_edges = e;
  const long long a = static_cast<long long>(u.size());
  const long long b = static_cast<long long>(v.size());
  if (a < min_set_size(delta, g.n()) || b < min_set_size(delta, g.n())) return false;
  const long long dev = std::abs(2 * e - a * b);
  return dev >= violation_threshold(delta, a, b);
}

QuasirandomReport is_delta_quasirandom(const Graph& g, const Rational& delta, QuasiMode mode,
                                       std::int64_t budget, std::uint64_t seed) {
  if (delta.sign() <= 0) throw std::invalid_argument("is_delta_quasirandom: delta must be positive");
  QuasirandomReport report;
  report.n = g.n();
  report.delta = delta;
  report.mode = mode;
  report.seed = seed;
  const int n = g.n();
  if (n >= 2) report.edge_density = t_inj_k2(g);
  report.c4_density = t_inj_c4(g);
  report.kst = kst_defect(g);

  const long long smin = std::max<long long>(min_set_size(delta, n), 1);

  if (mode == QuasiMode::kExact) {
    if (n > 14) throw std::invalid_argument("is_delta_quasirandom: exact mode is capped at n = 14");
    ExactSearch search;
    search.g = &g;
    search.n = n;
    search.adj.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) search.adj[static_cast<std::size_t>(i)] = n == 0 ? 0 : g.row(i)[0];
    search.smin = smin;
    search.thresholds.assign(static_cast<std::size_t>(n + 1),
                             std::vector<long long>(static_cast<std::size_t>(n + 1), 1ll << 62));
    for (int a = static_cast<int>(smin); a <= n; ++a)
      for (int b = static_cast<int>(smin); b <= n; ++b)
        search.thresholds[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            violation_threshold(delta, a, b);
    if (smin <= n) search.run(0, 0, 0, 0, 0, 0);
    report.pairs_examined = search.examined;
    report.violation_found = search.found;
    if (search.found) {
      QuasirandomWitness w;
      w.u = mask_to_sorted(search.witness_u);
      w.v = mask_to_sorted(search.witness_v);
      w.crossing_edges = search.witness_e;
      report.witness = std::move(w);
    }
    return report;
  }

  // Sampled mode: one-sided evidence only.
  if (budget <= 0) throw std::invalid_argument("is_delta_quasirandom: sampled mode needs a budget");
  const long long smax = n / 2;
  report.pairs_examined = 0;
  if (smin > smax) return report;  // no admissible sizes at this delta

  struct Hit {
    std::int64_t trial = -1;
    std::vector<int> u, v;
    std::int64_t e = 0;
  };
  const int chunks = parallel_chunk_count(budget, 1024);
  std::vector<Hit> hits(static_cast<std::size_t>(chunks));
  parallel_chunks(budget, 1024, [&](std::int64_t begin, std::int64_t end, int chunk) {
    Hit& best = hits[static_cast<std::size_t>(chunk)];
    for (std::int64_t t = begin; t < end; ++t) {
      Rng rng(derived_seed(seed, static_cast<std::uint64_t>(t)));
      const long long a = smin + static_cast<long long>(rng.below(static_cast<std::uint64_t>(smax - smin + 1)));
      const long long b = smin + static_cast<long long>(rng.below(static_cast<std::uint64_t>(smax - smin + 1)));
      auto both = rng.sample(n, static_cast<int>(a + b));
      std::vector<int> u(both.begin(), both.begin() + a);
      std::vector<int> v(both.begin() + a, both.end());
      const auto vmask = make_mask(n, v);
      const std::int64_t e = crossing(g, u, vmask);
      const long long dev = std::abs(2 * e - a * b);
      if (dev >= violation_threshold(delta, a, b)) {
        std::sort(u.begin(), u.end());
        std::sort(v.begin(), v.end());
        best.trial = t;
        best.u = std::move(u);
        best.v = std::move(v);
        best.e = e;
        return;  // earliest hit in this chunk
      }
    }
  });
  report.pairs_examined = budget;
  const Hit* first = nullptr;
  for (const Hit& h : hits)
    if (h.trial >= 0 && (first == nullptr || h.trial < first->trial)) first = &h;
  if (first != nullptr) {
    report.violation_found = true;
    QuasirandomWitness w;
    w.u = first->u;
    w.v = first->v;
    w.crossing_edges = first->e;
    report.witness = std::move(w);
  }
  return report;
}

CgwParams cgw_from_delta(const Rational& delta, const Rational& gamma_constant,
                         const Rational& n0_constant) {
  if (delta.sign() <= 0) throw std::invalid_argument("cgw_from_delta: delta must be positive");
  CgwParams params;
  params.source = CgwParams::Source::kDerivedFromDelta;
  params.gamma = gamma_constant * pow(delta, 12);
  const Rational n0 = n0_constant / pow(delta, 12);
  BigInt q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n0.num().get_mpz_t(), n0.den().get_mpz_t());
  if (r != 0) q += 1;
  if (!q.fits_sint_p())
    params.n0 = std::numeric_limits<int>::max();
  else
    params.n0 = std::max(4, static_cast<int>(q.get_si()));
  return params;
}

Rational default_cgw_gamma(int n) {
  if (n < 1) throw std::invalid_argument("default_cgw_gamma: n must be positive");
  return Rational::from_double(std::sqrt(8.0 / static_cast<double>(n)));
}

bool cgw_check(const Graph& g, const Rational& gamma) {
  if (g.n() < 4) throw std::invalid_argument("cgw_check: need at least 4 vertices");
  const Rational half(1, 2);
  const Rational edge_window = abs(t_inj_k2(g) - half);
  if (edge_window > gamma) return false;
  return t_inj_c4(g) <= Rational(1, 16) + gamma;
}

Rational cgw_min_gamma(const Graph& g) {
  if (g.n() < 4) throw std::invalid_argument("cgw_min_gamma: need at least 4 vertices");
  const Rational edge_window = abs(t_inj_k2(g) - Rational(1, 2));
  const Rational c4_excess = t_inj_c4(g) - Rational(1, 16);
  return max(edge_window, max(c4_excess, Rational(0)));
}

Rational f_window(const Rational& x) {
  return Rational(2) * pow(x, 4) - x + Rational(3, 8);
}

MemberQuasirandomAudit member_quasirandomness_audit(const WeightedDensityProperty& p, int n,
                                                    int min_members, std::int64_t budget,
                                                    const Rational& gamma, std::uint64_t seed) {
  if (n < 4) throw std::invalid_argument("member_quasirandomness_audit: n must be >= 4");
  MemberQuasirandomAudit audit;
  audit.n = n;
  audit.gamma = gamma;
  for (std::int64_t i = 0; i < budget && static_cast<int>(audit.members.size()) < min_members; ++i) {
    ++audit.draws;
    const Graph g = random_graph(n, derived_seed(seed, static_cast<std::uint64_t>(i)));
    if (!is_member(p, g)) continue;
    MemberQuasirandomRecord rec;
    rec.seed_index = static_cast<std::uint64_t>(i);
    rec.t_k2 = t_inj_k2(g);
    rec.t_c4 = t_inj_c4(g);
    rec.phi = Rational(2) * rec.t_c4 - rec.t_k2 + Rational(3, 8);
    rec.defect = kst_defect(g);
    rec.f_bound_holds = f_window(rec.t_k2) <= Rational(2) * rec.defect;
    rec.c4_window_holds = rec.t_c4 <= rec.t_k2 / Rational(2) - Rational(3, 16);
    rec.cgw_pass = cgw_check(g, gamma);
    rec.min_gamma = cgw_min_gamma(g);
    audit.members.push_back(std::move(rec));
  }
  audit.found_enough = static_cast<int>(audit.members.size()) >= min_members;
  audit.all_exact_bounds_hold = !audit.members.empty();
  for (const auto& rec : audit.members)
    audit.all_exact_bounds_hold = audit.all_exact_bounds_hold && rec.f_bound_holds && rec.c4_window_holds;
  return audit;
}

std::string QuasirandomReport::to_json() const {
  nlohmann::json j;
  j["delta"] = delta.to_double();
  j["delta_exact"] = delta.str();
  j["mode"] = mode == QuasiMode::kExact ? "exact" : "sampled";
  j["violation_found"] = violation_found;
  j["edge_density"] = edge_density.str();
  j["c4_density"] = c4_density.str();
  j["kst_defect"] = kst.str();
  j["n_times_kst_defect"] = (Rational(n) * kst).to_double();
  j["n"] = n;
  j["pairs_examined"] = pairs_examined;
  if (mode == QuasiMode::kSampled) j["seed"] = seed;
  if (witness.has_value()) {
    j["witness"]["u"] = witness->u;
    j["witness"]["v"] = witness->v;
    j["witness"]["crossing_edges"] = witness->crossing_edges;
  }
  return j.dump();
}

std::string MemberQuasirandomAudit::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["gamma"] = gamma.str();
  j["draws"] = draws;
  j["members_found"] = members.size();
  j["found_enough"] = found_enough;
  j["all_exact_bounds_hold"] = all_exact_bounds_hold;
  nlohmann::json items = nlohmann::json::array();
  for (const auto& rec : members) {
    nlohmann::json r;
    r["seed_index"] = rec.seed_index;
    r["t_k2"] = rec.t_k2.str();
    r["t_c4"] = rec.t_c4.str();
    r["phi"] = rec.phi.str();
    r["kst_defect"] = rec.defect.str();
    r["f_bound_holds"] = rec.f_bound_holds;
    r["c4_window_holds"] = rec.c4_window_holds;
    r["cgw_pass"] = rec.cgw_pass;
    r["min_gamma"] = rec.min_gamma.to_double();
    items.push_back(std::move(r));
  }
  j["members"] = items;
  return j.dump();
}

}  // namespace ptlab
