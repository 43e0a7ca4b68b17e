#include "hx/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

#include "hx/bounds.hpp"
#include "hx/configurations.hpp"
#include "hx/properties.hpp"
#include "hx/rng.hpp"

namespace hx {

namespace {

double unit_draw(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double log_binomial(double n, double k) {
  if (k < 0 || k > n) return -INFINITY;
  return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
}

}  // namespace

double deletion_probability(std::uint32_t m, std::uint32_t r, std::uint32_t k, std::uint32_t e) {
  const long double exponent = static_cast<long double>(k) + 1.0L / static_cast<long double>(e - 1) -
                               static_cast<long double>(r);
  const long double p = 0.5L * std::pow(static_cast<long double>(m), exponent);
  return static_cast<double>(std::min<long double>(p, 1.0L));
}

EllMinusRun random_ell_minus_free_run(std::uint32_t m, std::uint32_t r, std::uint32_t k, std::uint32_t e,
                                      std::uint64_t seed, const EllMinusOptions& options) {
  require(r > k && k >= 2, ErrorKind::BadParameters, "need r > k >= 2");
  require(e >= 2, ErrorKind::BadParameters, "need e >= 2");
  require(m >= r, ErrorKind::BadParameters, "need m >= r");
  require(options.retries >= 1, ErrorKind::BadParameters, "need at least one attempt");
  const std::uint64_t candidates = binomial(m, r);
  require(candidates <= options.max_candidates, ErrorKind::ResourceLimit,
          "C(m, r) = " + std::to_string(candidates) + " r-subsets exceed the scan limit");
  const double p = deletion_probability(m, r, k, e);

  std::optional<EllMinusRun> best;
  for (std::uint32_t attempt = 0; attempt < options.retries; ++attempt) {
    Rng rng = seed_substream(seed, "constructions", "G", attempt);
    std::vector<VertexSet> sampled;
    for_each_combination(m, r, [&](std::span<const std::size_t> idx) {
      if (unit_draw(rng) < p) {
        VertexSet s(m);
        for (std::size_t i : idx) s.insert(static_cast<Vertex>(i));
        sampled.push_back(std::move(s));
      }
      return true;
    });
    Hypergraph g = Hypergraph::from_edges(m, r, std::move(sampled));
    EllMinusRun run;
    run.probability = p;
    run.sampled = g.size();
    run.attempts = attempt + 1;

    std::vector<bool> alive(g.size(), true);
    for (std::uint32_t ell = 2; ell <= e; ++ell) {
      std::vector<std::size_t> live;
      std::vector<VertexSet> sets;
      for (std::size_t i = 0; i < g.size(); ++i) {
        if (alive[i]) {
          live.push_back(i);
          sets.push_back(g.edge(i));
        }
      }
      if (live.size() < ell) break;
      const Adjacency adj = intersection_graph(sets);
      const UnionCap cap{[&](std::uint32_t i) -> const VertexSet& { return sets[i]; },
                         ell_minus_threshold(r, k, ell)};
      std::vector<std::vector<std::size_t>> bad;
      for_each_connected_subset(
          adj, ell,
          [&](std::span<const std::uint32_t> idx) {
            std::vector<std::size_t> tuple;
            for (std::uint32_t i : idx) tuple.push_back(live[i]);
            std::sort(tuple.begin(), tuple.end());
            bad.push_back(std::move(tuple));
            return true;
          },
          &cap);
      std::sort(bad.begin(), bad.end());
      for (const auto& tuple : bad) {
        const bool intact = std::all_of(tuple.begin(), tuple.end(), [&](std::size_t i) { return alive[i]; });
        if (intact) {
          alive[tuple.back()] = false;  // colex-largest edge of the tuple
          ++run.deleted;
        }
      }
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (alive[i]) keep.push_back(i);
    }
    run.graph = g.subgraph(keep);
    const bool clean = ell_minus_free_upto(run.graph, k, e).holds;
    if (clean && run.graph.size() >= options.min_edges) return run;
    if (clean && (!best || run.graph.size() > best->graph.size())) best = run;
  }
  if (!best) best = EllMinusRun{Hypergraph(m, r), p, 0, 0, options.retries};
  best->attempts = options.retries;
  throw RetriesExhaustedError("no attempt reached " + std::to_string(options.min_edges) + " edges after " +
                                  std::to_string(options.retries) + " attempts (best: " +
                                  std::to_string(best->graph.size()) + ")",
                              *best);
}

Hypergraph random_ell_minus_free(std::uint32_t m, std::uint32_t r, std::uint32_t k, std::uint32_t e,
                                 std::uint64_t seed, const EllMinusOptions& options) {
  return random_ell_minus_free_run(m, r, k, e, seed, options).graph;
}

Hypergraph drop_isolated_vertices(const Hypergraph& g) {
  VertexSet used(g.n());
  for (const VertexSet& e : g.edges()) used |= e;
  std::vector<Vertex> relabel(g.n(), 0);
  Vertex next = 0;
  used.for_each([&](Vertex v) { relabel[v] = next++; });
  std::vector<VertexSet> edges;
  for (const VertexSet& e : g.edges()) {
    VertexSet s(next);
    e.for_each([&](Vertex v) { s.insert(relabel[v]); });
    edges.push_back(std::move(s));
  }
  return Hypergraph::from_edges(next, g.r(), std::move(edges));
}

Hypergraph lift_to_F(const Hypergraph& g, std::uint32_t t, std::uint32_t k) {
  require(g.r() + 1 == t * k, ErrorKind::UniformityMismatch,
          "lift needs a (tk-1)-graph, got r = " + std::to_string(g.r()));
  const auto n = static_cast<std::uint32_t>(g.n() + g.size());
  std::vector<VertexSet> edges;
  edges.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    VertexSet e = g.edge(i).resized(n);
    e.insert(static_cast<Vertex>(g.n() + i));
    edges.push_back(std::move(e));
  }
  return Hypergraph::from_edges(n, t * k, std::move(edges));
}

Hypergraph k_shadow(const Hypergraph& f, std::uint32_t k) {
  require(k >= 1 && k <= f.r(), ErrorKind::BadParameters, "k-shadow needs 1 <= k <= r");
  std::unordered_set<VertexSet, VertexSetHash> seen;
  std::vector<VertexSet> out;
  for (const VertexSet& e : f.edges()) {
    for_each_k_subset(e, k, [&](const VertexSet& s) {
      if (seen.insert(s).second) out.push_back(s);
      return true;
    });
  }
  return Hypergraph::from_edges(f.n(), k, std::move(out));
}

std::int64_t choose_m0(std::uint32_t t, std::uint32_t k, const Rational& epsilon, const Rational& c_hat) {
  require(t >= 1 && k >= 1, ErrorKind::BadParameters, "need t, k >= 1");
  require(epsilon > 0 && epsilon < 1, ErrorKind::BadParameters, "epsilon must lie in (0, 1)");
  require(c_hat > 0, ErrorKind::BadParameters, "c_hat must be positive");
  const BigInt b = binomial_big(static_cast<std::uint64_t>(t) * k - 1, k - 1);
  // m0^{1/(2t-1)} >= (2 - eps) / (c_hat * eps * B)
  const Rational q = (Rational(2) - epsilon) / (c_hat * epsilon * Rational(b));
  const std::uint64_t power = 2ULL * t - 1;
  Rational qp = 1;
  for (std::uint64_t i = 0; i < power; ++i) qp *= q;
  const BigInt num = boost::multiprecision::numerator(qp);
  const BigInt den = boost::multiprecision::denominator(qp);
  BigInt ceil_value = num / den;
  if (ceil_value * den < num) ceil_value += 1;
  const BigInt floor_m0 = static_cast<std::int64_t>(t) * k;
  const BigInt m0 = std::max(ceil_value, floor_m0);
  require(m0 <= BigInt(std::numeric_limits<std::int64_t>::max()), ErrorKind::BadParameters,
          "m0 does not fit in 64 bits");
  return static_cast<std::int64_t>(m0);
}

Rational estimate_c_hat(std::uint32_t r, std::uint32_t k, std::uint32_t e, std::uint32_t m, std::uint32_t pilots,
                        std::uint64_t seed) {
  require(pilots >= 1, ErrorKind::BadParameters, "need at least one pilot run");
  long double total = 0;
  for (std::uint32_t i = 0; i < pilots; ++i) {
    EllMinusOptions opts;
    opts.retries = 1;
    const auto run = random_ell_minus_free_run(m, r, k, e, substream_key(seed, {"constructions", "pilot", std::to_string(i)}), opts);
    total += static_cast<long double>(run.graph.size());
  }
  const long double scale =
      std::pow(static_cast<long double>(m), static_cast<long double>(k) + 1.0L / static_cast<long double>(e - 1));
  const long double c = total / pilots / scale;
  // keep six significant decimals so the rational stays small
  const auto micro = static_cast<std::int64_t>(std::llround(c * 1e6L));
  return Rational(std::max<std::int64_t>(micro, 1), 1000000);
}

Hypergraph assemble_HF(const Hypergraph& f, const PackingRecord& p, std::uint32_t k) {
  const Hypergraph shadow = k_shadow(f, k);
  std::vector<VertexSet> edges;
  edges.reserve(p.copies.size() * f.size());
  for (std::size_t i = 0; i < p.copies.size(); ++i) {
    const PackedCopy& c = p.copies[i];
    if (c.bijection.size() != f.n()) {
      fail(ErrorKind::ShadowMismatch, "copy " + std::to_string(i) + " has a bijection of the wrong length");
    }
    const PackedCopy image = transport(shadow, c.bijection, p.n);
    std::vector<VertexSet> expected = image.edges;
    std::vector<VertexSet> actual = c.edges;
    std::sort(expected.begin(), expected.end());
    std::sort(actual.begin(), actual.end());
    if (expected != actual || !(image.vertices == c.vertices)) {
      fail(ErrorKind::ShadowMismatch, "copy " + std::to_string(i) + " is not the shadow image of F under its bijection");
    }
    const PackedCopy lifted = transport(f, c.bijection, p.n);
    edges.insert(edges.end(), lifted.edges.begin(), lifted.edges.end());
  }
  const std::size_t expected_size = edges.size();
  Hypergraph h = Hypergraph::from_edges(p.n, f.r(), std::move(edges));
  require(h.size() == expected_size, ErrorKind::ShadowMismatch, "two copies of F share an edge");
  return h;
}

namespace {

// Sampled check of the target property on random tuples. Returns a failing
// description or an empty string.
std::string sample_cancellative(const Hypergraph& h, std::uint32_t t, std::uint64_t samples, Rng& rng) {
  const std::size_t m = h.size();
  if (m < t + 2) return {};
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (std::size_t i = 0; i < t + 2; ++i) std::swap(perm[i], perm[i + uniform_below(rng, m - i)]);
    const VertexSet diff = h.edge(perm[0]) ^ h.edge(perm[1]);
    VertexSet cover(h.n());
    for (std::size_t i = 2; i < t + 2; ++i) cover |= h.edge(perm[i]);
    if (diff.is_subset_of(cover)) return "sampled tuple violates cancellativity";
  }
  return {};
}

std::string sample_union_free(const Hypergraph& h, std::uint32_t t, std::uint64_t samples, Rng& rng) {
  const std::size_t m = h.size();
  if (m < 2) return {};
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  const auto draw = [&](std::vector<std::size_t>& fam) {
    const std::size_t size = 1 + uniform_below(rng, std::min<std::size_t>(t, m));
    for (std::size_t i = 0; i < size; ++i) std::swap(perm[i], perm[i + uniform_below(rng, m - i)]);
    fam.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(fam.begin(), fam.end());
  };
  std::vector<std::size_t> a, b;
  for (std::uint64_t s = 0; s < samples; ++s) {
    draw(a);
    draw(b);
    if (a == b) continue;
    VertexSet ua(h.n()), ub(h.n());
    for (std::size_t i : a) ua |= h.edge(i);
    for (std::size_t i : b) ub |= h.edge(i);
    if (ua == ub) return "sampled subfamilies have equal unions";
  }
  return {};
}

double tuple_count(std::size_t m, std::size_t choose_pair, std::size_t rest) {
  if (m < choose_pair + rest) return 0;
  return std::exp(log_binomial(static_cast<double>(m), static_cast<double>(choose_pair)) +
                  log_binomial(static_cast<double>(m - choose_pair), static_cast<double>(rest)));
}

// Every edge of one copy meets the vertex set of any other copy in at most k-1 vertices.
bool cross_copy_intersections_ok(const Hypergraph& f, const PackingRecord& p, std::uint32_t k) {
  std::vector<std::vector<VertexSet>> lifted;
  for (const PackedCopy& c : p.copies) lifted.push_back(transport(f, c.bijection, p.n).edges);
  for (std::size_t i = 0; i < p.copies.size(); ++i) {
    for (std::size_t j = 0; j < p.copies.size(); ++j) {
      if (i == j || !p.copies[i].vertices.intersects(p.copies[j].vertices)) continue;
      for (const VertexSet& e : lifted[i]) {
        if (e.intersection_count(p.copies[j].vertices) > k - 1) return false;
      }
    }
  }
  return true;
}

}  // namespace

PipelineArtifacts build_pipeline(PipelineKind kind, const ConstructionParams& params) {
  const std::uint32_t t = params.t;
  const std::uint32_t k = params.k;
  require(t >= 2 && k >= 2, ErrorKind::BadParameters, "pipelines need t >= 2 and k >= 2");
  const std::uint32_t e_default = kind == PipelineKind::Cancellative ? 2 * t : 2 * t + 2;
  const std::uint32_t e = params.e == 0 ? e_default : params.e;
  require(e == e_default, ErrorKind::BadParameters,
          "e must be " + std::to_string(e_default) + " for this pipeline");
  require(params.retries >= 1, ErrorKind::BadParameters, "need at least one attempt");
  const std::uint32_t r_g = t * k - 1;

  PipelineArtifacts out;
  PipelineReport& rep = out.report;
  rep.kind = kind;
  rep.params = params;
  rep.e = e;

  std::uint32_t m0 = 0;
  if (params.m0) {
    m0 = *params.m0;
  } else {
    require(params.epsilon.has_value(), ErrorKind::BadParameters, "give either m0 or epsilon");
    const std::uint32_t pilot_m = std::max<std::uint32_t>(3 * t * k, 12);
    rep.c_hat = estimate_c_hat(r_g, k, e, pilot_m, params.pilot_runs, params.seed);
    const std::int64_t chosen = choose_m0(t, k, *params.epsilon, *rep.c_hat);
    require(chosen <= std::numeric_limits<std::uint32_t>::max(), ErrorKind::ResourceLimit, "m0 too large");
    m0 = static_cast<std::uint32_t>(chosen);
    rep.notes.push_back("m0 chosen from epsilon with c_hat from " + std::to_string(params.pilot_runs) +
                        " pilot runs at m = " + std::to_string(pilot_m));
  }
  require(m0 >= t * k, ErrorKind::BadParameters, "m0 must be at least tk");
  rep.m0 = m0;

  for (std::uint32_t attempt = 0; attempt < params.retries; ++attempt) {
    rep.attempts = attempt + 1;
    rep.verdicts.clear();
    const auto fail_attempt = [&](const std::string& what) {
      rep.notes.push_back("attempt " + std::to_string(attempt + 1) + ": " + what);
    };

    // stage 1: the ℓ⁻-free (tk−1)-graph on [m0]
    EllMinusOptions gopts;
    gopts.retries = params.retries;
    const double p = deletion_probability(m0, r_g, k, e);
    gopts.min_edges = std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::floor(p * static_cast<double>(binomial(m0, r_g)) / 4)));
    EllMinusRun grun;
    try {
      grun = random_ell_minus_free_run(m0, r_g, k, e, substream_key(params.seed, {"constructions", "G", std::to_string(attempt)}),
                                       gopts);
    } catch (const RetriesExhaustedError& err) {
      grun = err.best();
      rep.notes.push_back(std::string("G below survivor floor, using best attempt: ") + err.what());
    }
    rep.probability = grun.probability;
    rep.sampled_edges = grun.sampled;
    rep.deleted_edges = grun.deleted;
    rep.ell_minus_attempts = grun.attempts;
    out.G = grun.graph;

    // stage 2: lift and shadow
    out.F = lift_to_F(drop_isolated_vertices(out.G), t, k);
    out.shadow = k_shadow(out.F, k);
    const std::uint32_t m = out.F.n();
    rep.template_vertices = m;

    // stage 3: hypotheses on F
    {
      const PropertyWitness ell = ell_minus_free_upto(out.F, k, e);
      rep.verdicts.push_back({"F ell-minus-free for 2<=l<=" + std::to_string(e), ell.holds, "exhaustive-connected", ell.reason});
      if (kind == PipelineKind::Cancellative) {
        const PropertyWitness c = is_t_cancellative(out.F, 2 * (t - 1), {params.threads, params.max_unions});
        rep.verdicts.push_back({"F " + std::to_string(2 * (t - 1)) + "-cancellative", c.holds, "exhaustive", c.reason});
      } else {
        const PropertyWitness u = is_t_union_free(out.F, t + 1, {params.threads, params.max_unions});
        rep.verdicts.push_back({"F " + std::to_string(t + 1) + "-union-free", u.holds, "exhaustive", u.reason});
        const PropertyWitness c = is_t_cover_free(out.F, t, {params.threads, params.max_unions});
        rep.verdicts.push_back({"F " + std::to_string(t) + "-cover-free", c.holds, "exhaustive", c.reason});
      }
      const bool ok = std::all_of(rep.verdicts.begin(), rep.verdicts.end(), [](const Verdict& v) { return v.holds; });
      if (!ok) {
        fail_attempt("hypotheses on F failed");
        continue;
      }
    }

    // stage 4: packing of the shadow
    PackingOptions popts;
    popts.n = params.n;
    popts.k = k;
    popts.e = e;
    popts.epsilon = params.packing_epsilon ? *params.packing_epsilon : default_packing_epsilon(m, k);
    popts.strategy = params.strategy;
    popts.seed = substream_key(params.seed, {"constructions", "packing", std::to_string(attempt)});
    popts.target_count = params.target_copies;
    popts.budget = params.packing_budget;
    popts.search_node_cap = params.search_node_cap;
    popts.template_id = "shadow(F): m=" + std::to_string(m) + " |J|=" + std::to_string(out.shadow.size()) +
                        " F-edges=" + std::to_string(out.F.size());
    rep.packing_epsilon = popts.epsilon;
    if (m > k && popts.epsilon >= Rational(1, 2 * static_cast<std::int64_t>(m - k))) {
      rep.notes.push_back("packing epsilon is outside (0, 1/(2(m-k)))");
    }
    PackingResult packed = greedy_conflict_free_packing(out.shadow, popts);
    out.packing = std::move(packed.record);
    rep.packing_stats = packed.stats;

    {
      const PropertyWitness induced = is_induced_packing(out.packing, k);
      rep.verdicts.push_back({"packing induced", induced.holds, "exhaustive", induced.reason});
      const auto vertex_sets = out.packing.vertex_sets();
      const bool v_free = m <= k || !find_ell_minus_configuration(vertex_sets, m, k, e).has_value();
      rep.verdicts.push_back({"vertex-set family ell-minus-free for 2<=l<=" + std::to_string(e), v_free,
                              "exhaustive-connected", ""});
      if (!induced.holds || !v_free) {
        fail_attempt("packing audit failed");
        continue;
      }
    }

    // stage 5: assembly and checks on H
    out.H = assemble_HF(out.F, out.packing, k);
    {
      const PropertyWitness ell = ell_minus_free_upto(out.H, k, e);
      rep.verdicts.push_back({"H ell-minus-free for 2<=l<=" + std::to_string(e), ell.holds, "exhaustive-connected", ell.reason});
      const bool cross = cross_copy_intersections_ok(out.F, out.packing, k);
      rep.verdicts.push_back({"cross-copy intersections at most k-1", cross, "exhaustive", ""});
      if (!ell.holds || !cross) {
        fail_attempt("assembled hypergraph failed its structural checks");
        continue;
      }
    }
    Rng sample_rng = seed_substream(params.seed, "constructions", "verify", attempt);
    bool exhaustive = true;
    bool target_ok = true;
    if (kind == PipelineKind::Cancellative) {
      const std::uint32_t tc = 2 * (t - 1);
      const double tuples = tuple_count(out.H.size(), 2, tc);
      if (tuples <= params.exhaustive_budget) {
        const PropertyWitness w = is_t_cancellative(out.H, tc, {params.threads, params.max_unions});
        rep.verdicts.push_back({"H " + std::to_string(tc) + "-cancellative", w.holds, "exhaustive", w.reason});
        target_ok = w.holds;
      } else {
        exhaustive = false;
        const std::string bad = sample_cancellative(out.H, tc, params.sampled_tuples, sample_rng);
        rep.verdicts.push_back({"H " + std::to_string(tc) + "-cancellative", bad.empty(),
                                "sufficient-conditions+sampled(" + std::to_string(params.sampled_tuples) + ")", bad});
        target_ok = bad.empty();
      }
    } else {
      const PropertyWitness cf = is_t_cover_free(out.H, t, {params.threads, params.max_unions});
      rep.verdicts.push_back({"H " + std::to_string(t) + "-cover-free", cf.holds, "exhaustive", cf.reason});
      double unions = 0;
      for (std::uint32_t j = 1; j <= t + 1; ++j) {
        unions += std::exp(log_binomial(static_cast<double>(out.H.size()), j));
      }
      bool uf_ok = true;
      if (unions <= static_cast<double>(params.max_unions) && unions <= params.exhaustive_budget) {
        const PropertyWitness uf = is_t_union_free(out.H, t + 1, {params.threads, params.max_unions});
        rep.verdicts.push_back({"H " + std::to_string(t + 1) + "-union-free", uf.holds, "exhaustive", uf.reason});
        uf_ok = uf.holds;
      } else {
        exhaustive = false;
        const std::string bad = sample_union_free(out.H, t + 1, params.sampled_tuples, sample_rng);
        rep.verdicts.push_back({"H " + std::to_string(t + 1) + "-union-free", bad.empty(),
                                "sufficient-conditions+sampled(" + std::to_string(params.sampled_tuples) + ")", bad});
        uf_ok = bad.empty();
      }
      target_ok = cf.holds && uf_ok;
    }
    if (!target_ok) {
      fail_attempt("target property failed on H");
      continue;
    }
    rep.verification = exhaustive ? "verified-exhaustive" : "verified-sufficient-conditions+sampled";
    rep.size_G = out.G.size();
    rep.size_F = out.F.size();
    rep.size_J = out.shadow.size();
    rep.size_P = out.packing.size();
    rep.size_H = out.H.size();
    rep.packing_density = packing_density(out.packing, params.n, k, out.shadow.size());
    rep.density_ratio = density_ratio(out.H, params.n, t, k);
    if (params.n < m) rep.notes.push_back("n < m: no copy of the template fits, H is empty");
    return out;
  }
  fail(ErrorKind::HypothesisFailed, "every attempt failed a hypothesis check; see notes: " +
                                        (rep.notes.empty() ? std::string() : rep.notes.back()));
}

PipelineArtifacts build_cancellative(const ConstructionParams& params) {
  return build_pipeline(PipelineKind::Cancellative, params);
}

PipelineArtifacts build_union_free(const ConstructionParams& params) {
  return build_pipeline(PipelineKind::UnionFree, params);
}

nlohmann::ordered_json report_to_json(const PipelineReport& r) {
  nlohmann::ordered_json doc;
  doc["kind"] = r.kind == PipelineKind::Cancellative ? "cancellative" : "union-free";
  nlohmann::ordered_json params;
  params["t"] = r.params.t;
  params["k"] = r.params.k;
  params["n"] = r.params.n;
  params["m0"] = r.m0;
  params["e"] = r.e;
  if (r.params.epsilon) params["epsilon"] = to_fraction_string(*r.params.epsilon);
  if (r.c_hat) params["c_hat"] = to_fraction_string(*r.c_hat);
  params["packing_epsilon"] = to_fraction_string(r.packing_epsilon);
  params["strategy"] = to_string(r.params.strategy);
  params["packing_budget"] = r.params.packing_budget;
  params["target_copies"] = r.params.target_copies;
  params["seed"] = r.params.seed;
  doc["params"] = std::move(params);
  nlohmann::ordered_json sizes;
  sizes["G"] = r.size_G;
  sizes["F"] = r.size_F;
  sizes["J"] = r.size_J;
  sizes["P"] = r.size_P;
  sizes["H"] = r.size_H;
  sizes["template_vertices"] = r.template_vertices;
  doc["sizes"] = std::move(sizes);
  nlohmann::ordered_json del;
  del["probability"] = r.probability;
  del["sampled"] = r.sampled_edges;
  del["deleted"] = r.deleted_edges;
  del["attempts"] = r.ell_minus_attempts;
  doc["deletion"] = std::move(del);
  doc["packing"] = stats_to_json(r.packing_stats);
  doc["packing_density"] = to_fraction_string(r.packing_density);
  doc["density_ratio"] = to_fraction_string(r.density_ratio);
  doc["density_ratio_decimal"] = static_cast<double>(r.density_ratio);
  auto verdicts = nlohmann::ordered_json::array();
  for (const Verdict& v : r.verdicts) {
    nlohmann::ordered_json entry;
    entry["check"] = v.name;
    entry["holds"] = v.holds;
    entry["method"] = v.method;
    if (!v.detail.empty()) entry["detail"] = v.detail;
    verdicts.push_back(std::move(entry));
  }
  doc["verdicts"] = std::move(verdicts);
  doc["verification"] = r.verification;
  doc["attempts"] = r.attempts;
  doc["notes"] = r.notes;
  return doc;
}

}  // namespace hx
