#include "ptlab/census.hpp"

#include <bit>
#include <map>
#include <stdexcept>

#include "ptlab/rng.hpp"
#include "ptlab/util.hpp"

#include <json.hpp>

namespace ptlab {

namespace {

FourProfile reference_census(const Graph& g) {
  FourProfile p;
  p.n = g.n();
  const int n = g.n();
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        const unsigned eab = g.edge(a, b) ? 1u : 0u;
        const unsigned eac = g.edge(a, c) ? 2u : 0u;
        const unsigned ebc = g.edge(b, c) ? 8u : 0u;
        const unsigned base = eab | eac | ebc;
        for (int d = c + 1; d < n; ++d) {
          unsigned mask = base;
          if (g.edge(a, d)) mask |= 4u;
          if (g.edge(b, d)) mask |= 16u;
          if (g.edge(c, d)) mask |= 32u;
          ++p.counts[static_cast<std::size_t>(classify4_mask(mask))];
        }
      }
  return p;
}

// 12 * (number of K4s): for every edge, every ordered pair of adjacent
// common neighbors.
unsigned long long k4_kernel_12(const Graph& g) {
  const int n = g.n();
  const int wpr = g.words_per_row();
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (g.edge(u, v)) edges.emplace_back(u, v);

  const int chunks = parallel_chunk_count(static_cast<std::int64_t>(edges.size()), 1024);
  std::vector<unsigned long long> partial(static_cast<std::size_t>(chunks), 0);
  parallel_chunks(static_cast<std::int64_t>(edges.size()), 1024, [&](std::int64_t begin, std::int64_t end, int chunk) {
    std::vector<std::uint64_t> common(static_cast<std::size_t>(wpr));
    unsigned long long acc = 0;
    for (std::int64_t e = begin; e < end; ++e) {
      const auto [u, v] = edges[static_cast<std::size_t>(e)];
      const auto ru = g.row(u);
      const auto rv = g.row(v);
      for (int w = 0; w < wpr; ++w) common[static_cast<std::size_t>(w)] = ru[static_cast<std::size_t>(w)] & rv[static_cast<std::size_t>(w)];
      for (int w = 0; w < wpr; ++w) {
        std::uint64_t bits = common[static_cast<std::size_t>(w)];
        while (bits != 0) {
          const int x = (w << 6) + std::countr_zero(bits);
          bits &= bits - 1;
          const auto rx = g.row(x);
          for (int k = 0; k < wpr; ++k)
            acc += static_cast<unsigned long long>(std::popcount(rx[static_cast<std::size_t>(k)] & common[static_cast<std::size_t>(k)]));
        }
      }
    }
    partial[static_cast<std::size_t>(chunk)] = acc;
  });
  unsigned long long total = 0;
  for (unsigned long long v : partial) total += v;
  return total;
}

unsigned long long choose2(unsigned long long x) { return x * (x - 1) / 2; }
unsigned long long choose3(unsigned long long x) { return x >= 3 ? x * (x - 1) * (x - 2) / 6 : 0; }

FourProfile fast_census(const Graph& g) {
  FourProfile out;
  out.n = g.n();
  const unsigned long long n = static_cast<unsigned long long>(g.n());
  if (n < 4) return out;

  const PairAggregates agg = pair_aggregates(g);
  const unsigned long long m = static_cast<unsigned long long>(agg.m);
  const unsigned long long triangles = agg.sum_codeg_edges / 3;

  unsigned long long wedges = 0, claws = 0, deg_tri2 = 0;
  for (int v = 0; v < g.n(); ++v) {
    const auto d = static_cast<unsigned long long>(agg.degree[static_cast<std::size_t>(v)]);
    wedges += choose2(d);
    claws += choose3(d);
    deg_tri2 += d * static_cast<unsigned long long>(agg.tri2[static_cast<std::size_t>(v)]);
  }
  // Paths on 4 vertices via middle edges: sum over edges of
  // (deg(u)-1)(deg(v)-1), minus the triangle closures.
  unsigned long long middle = 0;
  for (int u = 0; u < g.n(); ++u) {
    const auto ru = g.row(u);
    for (int w = 0; w < g.words_per_row(); ++w) {
      std::uint64_t bits = ru[static_cast<std::size_t>(w)];
      while (bits != 0) {
        const int v = (w << 6) + std::countr_zero(bits);
        bits &= bits - 1;
        if (v <= u) continue;
        middle += static_cast<unsigned long long>(agg.degree[static_cast<std::size_t>(u)] - 1) *
                  static_cast<unsigned long long>(agg.degree[static_cast<std::size_t>(v)] - 1);
      }
    }
  }

  // Copy counts of the 11 patterns spanning exactly four vertices.
  std::array<unsigned long long, 11> copies{};
  const BigInt total4 = binomial(n, 4);
  copies[kK4] = k4_kernel_12(g) / 12;
  copies[kK4c] = total4.get_ui();
  copies[kD4] = agg.sum_choose2_edges;
  copies[kD4c] = m * choose2(n - 2);
  copies[kP3] = wedges * (n - 3);
  copies[kP3c] = (deg_tri2 - 12 * triangles) / 2;  // triangle + pendant
  copies[kC4] = (agg.sum_choose2_edges + agg.sum_choose2_nonedges) / 2;
  copies[kC4c] = choose2(m) - wedges;  // disjoint edge pairs
  copies[kK13] = claws;
  copies[kK13c] = triangles * (n - 3);
  copies[kP4] = middle - agg.sum_codeg_edges;

  const auto& inv = subgraph_copies4_inverse();
  for (int h = 0; h < kClass4Count; ++h) {
    __int128 acc = 0;
    for (int p = 0; p < kClass4Count; ++p)
      acc += static_cast<__int128>(inv[static_cast<std::size_t>(h)][static_cast<std::size_t>(p)]) *
             static_cast<__int128>(copies[static_cast<std::size_t>(p)]);
    if (acc < 0) throw std::logic_error("fast census produced a negative count");
    out.counts[static_cast<std::size_t>(h)] = static_cast<std::uint64_t>(acc);
  }

  BigInt sum = 0;
  for (auto c : out.counts) sum += BigInt(static_cast<unsigned long>(c));
  if (sum != total4) throw std::logic_error("fast census counts do not sum to C(n,4)");
  return out;
}

}  // namespace

FourProfile four_profile(const Graph& g, CensusMode mode) {
  if (g.n() < 4) {
    FourProfile p;
    p.n = g.n();
    return p;
  }
  return mode == CensusMode::kReference ? reference_census(g) : fast_census(g);
}

FourProfile complement_profile(const FourProfile& p) {
  FourProfile out;
  out.n = p.n;
  for (int c = 0; c < kClass4Count; ++c)
    out.counts[static_cast<std::size_t>(class4_complement(c))] = p.counts[static_cast<std::size_t>(c)];
  return out;
}

Rational p_induced(int cls, const FourProfile& profile) {
  if (cls < 0 || cls >= kClass4Count) throw std::out_of_range("p_induced: class index");
  if (profile.n < 4) return Rational(0);
  return Rational(BigInt(static_cast<unsigned long>(profile.counts[static_cast<std::size_t>(cls)])), profile.total());
}

Rational p_induced(int cls, const Graph& g) { return p_induced(cls, four_profile(g)); }

PairAggregates pair_aggregates(const Graph& g) {
  PairAggregates agg;
  const int n = g.n();
  agg.n = n;
  agg.degree.resize(static_cast<std::size_t>(n));
  agg.tri2.assign(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) agg.degree[static_cast<std::size_t>(v)] = g.degree(v);
  agg.m = g.edge_count();
  const int wpr = g.words_per_row();

  struct Acc {
    unsigned long long ce = 0, c2e = 0, c2ne = 0, cc1 = 0, sq = 0;
    std::vector<std::int64_t> tri2;
  };
  const int chunks = parallel_chunk_count(n, 64);
  std::vector<Acc> partial(static_cast<std::size_t>(chunks));
  for (auto& a : partial) a.tri2.assign(static_cast<std::size_t>(n), 0);

  parallel_chunks(n, 64, [&](std::int64_t begin, std::int64_t end, int chunk) {
    Acc& a = partial[static_cast<std::size_t>(chunk)];
    for (int u = static_cast<int>(begin); u < static_cast<int>(end); ++u) {
      const auto ru = g.row(u);
      for (int v = u + 1; v < n; ++v) {
        const auto rv = g.row(v);
        int c = 0;
        for (int w = 0; w < wpr; ++w) c += std::popcount(ru[static_cast<std::size_t>(w)] & rv[static_cast<std::size_t>(w)]);
        const auto cd = static_cast<unsigned long long>(c);
        a.cc1 += cd * (cd - (cd > 0 ? 1 : 0));
        a.sq += cd * cd;
        if (g.edge(u, v)) {
          a.ce += cd;
          a.c2e += choose2(cd);
          a.tri2[static_cast<std::size_t>(u)] += c;
          a.tri2[static_cast<std::size_t>(v)] += c;
        } else {
          a.c2ne += choose2(cd);
        }
      }
    }
  });

  for (const auto& a : partial) {
    agg.sum_codeg_edges += a.ce;
    agg.sum_choose2_edges += a.c2e;
    agg.sum_choose2_nonedges += a.c2ne;
    agg.sum_cc1_all += a.cc1;
    agg.sum_codeg_sq_all += a.sq;
    for (int v = 0; v < n; ++v) agg.tri2[static_cast<std::size_t>(v)] += a.tri2[static_cast<std::size_t>(v)];
  }
  return agg;
}

Rational t_inj_k2(const Graph& g) {
  if (g.n() < 2) throw std::invalid_argument("t_inj_k2: need at least 2 vertices");
  return Rational(BigInt(2 * g.edge_count()), falling_factorial(static_cast<unsigned long>(g.n()), 2));
}

Rational t_inj_c4(const Graph& g) {
  if (g.n() < 4) return Rational(0);
  const PairAggregates agg = pair_aggregates(g);
  // Injective cycle maps: ordered diagonal pair times ordered choice of two
  // distinct common neighbors = 2 * sum codeg*(codeg-1).
  const BigInt inj = BigInt(2) * BigInt(static_cast<unsigned long>(agg.sum_cc1_all));
  return Rational(inj, falling_factorial(static_cast<unsigned long>(g.n()), 4));
}

Rational t_inj4(int cls, const FourProfile& profile) {
  if (profile.n < 4) return Rational(0);
  const auto& copies = subgraph_copies4();
  BigInt inj = 0;
  for (int h = 0; h < kClass4Count; ++h)
    inj += BigInt(copies[static_cast<std::size_t>(cls)][static_cast<std::size_t>(h)]) *
           BigInt(static_cast<unsigned long>(profile.counts[static_cast<std::size_t>(h)]));
  inj *= class4_aut(cls);
  return Rational(inj, falling_factorial(static_cast<unsigned long>(profile.n), 4));
}

Rational t_ind4(int cls, const FourProfile& profile) {
  // t_ind(H,G) * 4! = p(H,G) * aut(H).
  return p_induced(cls, profile) * Rational(class4_aut(cls), 24);
}

Rational t_inj4(int cls, const Graph& g) { return t_inj4(cls, four_profile(g)); }
Rational t_ind4(int cls, const Graph& g) { return t_ind4(cls, four_profile(g)); }

Rational hom_t_k2(const Graph& g) {
  if (g.n() == 0) throw std::invalid_argument("hom_t_k2: empty graph");
  const BigInt n2 = BigInt(g.n()) * BigInt(g.n());
  return Rational(BigInt(2 * g.edge_count()), n2);
}

Rational hom_t_c4(const Graph& g) {
  if (g.n() == 0) throw std::invalid_argument("hom_t_c4: empty graph");
  const PairAggregates agg = pair_aggregates(g);
  BigInt hom = BigInt(2) * BigInt(static_cast<unsigned long>(agg.sum_codeg_sq_all));
  for (int v = 0; v < g.n(); ++v) {
    const BigInt d(agg.degree[static_cast<std::size_t>(v)]);
    hom += d * d;
  }
  BigInt n4 = BigInt(g.n());
  n4 = n4 * n4 * n4 * n4;
  return Rational(hom, n4);
}

bool hom_c4_inequality_holds(const Graph& g) {
  return hom_t_c4(g) >= pow(hom_t_k2(g), 4);
}

Rational kst_defect(const Graph& g) {
  if (g.n() < 4) return Rational(0);
  const Rational gap = pow(t_inj_k2(g), 4) - t_inj_c4(g);
  return gap.sign() > 0 ? gap : Rational(0);
}

Rational p_via_intermediate(int cls, const Graph& g, int intermediate_order) {
  const int n = g.n();
  const int h = intermediate_order;
  if (h < 4 || h > 7 || h > n)
    throw std::invalid_argument("p_via_intermediate: order must be in [4, min(n,7)]");

  // Tally the induced h-subsets of G by canonical class.
  std::map<std::uint64_t, BigInt> tally;
  std::vector<int> pick(static_cast<std::size_t>(h));
  for (int i = 0; i < h; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    const Graph sub = induced_subgraph(g, pick);
    tally[canonical_mask(sub)] += 1;
    int i = h - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - h + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < h; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }

  // p(F,G) = sum over intermediate classes of p(F,H) * p(H,G).
  const BigInt denom_h = binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(h));
  Rational acc(0);
  for (const auto& [code, count] : tally) {
    const Graph rep = graph_from_mask(h, code);
    const FourProfile rep_profile = four_profile(rep, CensusMode::kReference);
    acc += p_induced(cls, rep_profile) * Rational(count, denom_h);
  }
  return acc;
}

Rational p_family(const RejectionFamily& family, const Graph& g, CensusMode mode) {
  if (!family.analytic())
    throw std::invalid_argument("p_family: family has no analytic representation");
  const int s = family.order();
  if (g.n() < s) throw std::invalid_argument("p_family: sample order exceeds graph order");
  if (s == 4) {
    const FourProfile profile = four_profile(g, mode);
    Rational acc(0);
    for (int c : family.classes4()) acc += p_induced(c, profile);
    return acc;
  }
  // Enumerate all C(n,s) subsets; exact but only meant for small inputs.
  BigInt hits = 0;
  std::vector<int> pick(static_cast<std::size_t>(s));
  for (int i = 0; i < s; ++i) pick[static_cast<std::size_t>(i)] = i;
  while (true) {
    if (family.contains(induced_subgraph(g, pick))) hits += 1;
    int i = s - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == g.n() - s + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return Rational(hits, binomial(static_cast<unsigned long>(g.n()), static_cast<unsigned long>(s)));
}

Rational rho_expected(const RejectionFamily& family) {
  if (!family.analytic())
    throw std::invalid_argument("rho_expected: family has no analytic representation");
  const int s = family.order();
  const BigInt denom = BigInt(1) << static_cast<unsigned>(pair_bit_count(s));
  const BigInt s_fact = factorial(static_cast<unsigned long>(s));
  Rational acc(0);
  if (s == 4) {
    for (int c : family.classes4())
      acc += Rational(s_fact, denom * BigInt(class4_aut(c)));
    return acc;
  }
  for (const std::uint64_t code : family.codes()) {
    const Graph rep = graph_from_mask(s, code);
    if (canonical_mask(rep) != code)
      throw std::invalid_argument("rho_expected: non-canonical code in family");
    acc += Rational(s_fact, denom * BigInt(static_cast<unsigned long>(aut_count(rep))));
  }
  return acc;
}

DensityEstimate sample_density(const RejectionFamily& family, const Graph& g, std::int64_t trials,
                               std::uint64_t seed) {
  const int s = family.order();
  if (s > g.n()) throw std::invalid_argument("sample_density: sample order exceeds graph order");
  if (trials <= 0) throw std::invalid_argument("sample_density: trials must be positive");

  const int chunks = parallel_chunk_count(trials, 4096);
  std::vector<std::int64_t> partial(static_cast<std::size_t>(chunks), 0);
  parallel_chunks(trials, 4096, [&](std::int64_t begin, std::int64_t end, int chunk) {
    std::int64_t hits = 0;
    for (std::int64_t t = begin; t < end; ++t) {
      Rng rng(derived_seed(seed, static_cast<std::uint64_t>(t)));
      const auto pick = rng.sample(g.n(), s);
      if (family.contains(induced_subgraph(g, pick))) ++hits;
    }
    partial[static_cast<std::size_t>(chunk)] = hits;
  });
  std::int64_t hits = 0;
  for (std::int64_t h : partial) hits += h;

  DensityEstimate est;
  est.point = Rational(BigInt(hits), BigInt(trials));
  est.trials = trials;
  est.seed = seed;
  est.stderr_value = stderr_of_proportion(est.point.to_double(), trials);
  return est;
}

std::string census_json(const FourProfile& profile) {
  nlohmann::json j;
  j["n"] = profile.n;
  j["counts"] = profile.counts;
  nlohmann::json dens = nlohmann::json::array();
  for (int c = 0; c < kClass4Count; ++c) dens.push_back(p_induced(c, profile).str());
  j["densities"] = dens;
  return j.dump();
}

}  // namespace ptlab
