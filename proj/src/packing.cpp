#include "hx/packing.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "hx/error.hpp"
#include "hx/properties.hpp"

namespace hx {

std::string to_string(PackingStrategy s) {
  return s == PackingStrategy::FaithfulColoring ? "faithful" : "direct";
}

PackingStrategy parse_strategy(const std::string& name) {
  if (name == "faithful") return PackingStrategy::FaithfulColoring;
  if (name == "direct") return PackingStrategy::DirectGreedy;
  fail(ErrorKind::UsageError, "unknown packing strategy '" + name + "' (expected faithful or direct)");
}

std::string to_string(ConflictReason r) {
  switch (r) {
    case ConflictReason::EdgeOverlap: return "edge-overlap";
    case ConflictReason::VertexOverlap: return "vertex-overlap";
    case ConflictReason::EdgeInIntersection: return "edge-in-intersection";
    case ConflictReason::EllMinus: return "ell-minus";
    case ConflictReason::SearchBudget: return "search-budget";
  }
  return "unknown";
}

Coloring::Coloring(std::uint32_t n, std::uint32_t k, const Rational& epsilon, std::uint64_t seed)
    : n_(n), k_(k), epsilon_(epsilon), seed_(seed) {
  require(epsilon >= 0 && epsilon <= 1, ErrorKind::BadParameters, "epsilon must lie in [0, 1]");
  if (epsilon == 1) {
    all_red_ = true;
    return;
  }
  const Rational scaled = epsilon * Rational(BigInt(1) << 64);
  const BigInt floor_value = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);
  threshold_ = static_cast<std::uint64_t>(floor_value);
}

bool Coloring::is_red(const VertexSet& kset) const noexcept {
  if (all_red_) return true;
  const std::uint64_t h = splitmix64(seed_ ^ splitmix64(static_cast<std::uint64_t>(kset.hash())));
  return h < threshold_;
}

Coloring color_ksets(std::uint32_t n, std::uint32_t k, const Rational& epsilon, std::uint64_t seed) {
  return Coloring(n, k, epsilon, seed);
}

bool matches_pattern(const PackedCopy& copy, const Coloring& coloring) {
  std::unordered_set<VertexSet, VertexSetHash> edges(copy.edges.begin(), copy.edges.end());
  return for_each_k_subset(copy.vertices, coloring.k(), [&](const VertexSet& s) {
    const bool is_edge = edges.count(s) != 0;
    return is_edge ? coloring.is_blue(s) : coloring.is_red(s);
  });
}

PlacementSampler::PlacementSampler(const Hypergraph& templ, std::uint32_t n, Rng rng)
    : templ_(templ), n_(n), rng_(std::move(rng)), perm_(n) {
  require(templ.n() <= n, ErrorKind::BadParameters, "template has more vertices than the host");
  std::iota(perm_.begin(), perm_.end(), Vertex{0});
}

PackedCopy PlacementSampler::next() {
  const std::uint32_t m = templ_.n();
  for (std::uint32_t i = 0; i < m; ++i) {
    const auto j = i + static_cast<std::uint32_t>(uniform_below(rng_, n_ - i));
    std::swap(perm_[i], perm_[j]);
  }
  return transport(templ_, std::span<const Vertex>(perm_.data(), m), n_);
}

CandidateStream find_placements_greedy(const Hypergraph& templ, const Coloring& coloring, std::uint32_t n,
                                       PackingStrategy strategy, std::uint64_t budget, std::uint64_t seed,
                                       std::uint64_t max_yield) {
  CandidateStream out;
  if (n < templ.n()) return out;
  PlacementSampler sampler(templ, n, seed_substream(seed, "packing", "placements"));
  while (out.samples < budget && (max_yield == 0 || out.placements.size() < max_yield)) {
    ++out.samples;
    PackedCopy c = sampler.next();
    if (strategy == PackingStrategy::FaithfulColoring && !matches_pattern(c, coloring)) continue;
    out.placements.push_back(std::move(c));
  }
  out.budget_exhausted = out.samples >= budget && (max_yield == 0 || out.placements.size() < max_yield);
  return out;
}

PackingIndex::PackingIndex(std::uint32_t n, std::uint32_t k, std::uint32_t m, std::uint32_t e,
                           std::uint64_t search_node_cap)
    : n_(n), k_(k), m_(m), e_(e), node_cap_(search_node_cap), by_vertex_(n) {}

std::vector<std::uint32_t> PackingIndex::neighbours(const VertexSet& vertices) const {
  std::vector<std::uint32_t> out;
  vertices.for_each([&](Vertex v) {
    if (v < by_vertex_.size()) out.insert(out.end(), by_vertex_[v].begin(), by_vertex_[v].end());
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Conflict> PackingIndex::check(const PackedCopy& candidate) {
  // (a) shared edge
  for (const VertexSet& e : candidate.edges) {
    const auto it = edge_owner_.find(e);
    if (it != edge_owner_.end()) return Conflict{ConflictReason::EdgeOverlap, {it->second}, 0, e};
  }
  // (b) induced-packing rule
  const std::vector<std::uint32_t> near = neighbours(candidate.vertices);
  for (std::uint32_t j : near) {
    const VertexSet common = candidate.vertices & copies_[j].vertices;
    const std::size_t size = common.count();
    if (size > k_) return Conflict{ConflictReason::VertexOverlap, {j}, 0, std::nullopt};
    if (size == k_) {
      const auto owner = edge_owner_.find(common);
      const bool edge_of_accepted = owner != edge_owner_.end() && owner->second == j;
      const bool edge_of_candidate =
          std::find(candidate.edges.begin(), candidate.edges.end(), common) != candidate.edges.end();
      if (edge_of_accepted || edge_of_candidate) {
        return Conflict{ConflictReason::EdgeInIntersection, {j}, 0, common};
      }
    }
  }
  // (c) ℓ⁻-configurations grown from the candidate through intersecting copies
  if (e_ < 2 || copies_.empty() || near.empty()) return std::nullopt;
  const auto root = static_cast<std::uint32_t>(copies_.size());
  adj_.resize(copies_.size() + 1);
  adj_[root] = near;
  std::uint64_t nodes_left = node_cap_;
  std::optional<Conflict> found;
  const auto set_of = [&](std::uint32_t i) -> const VertexSet& {
    return i == root ? candidate.vertices : copies_[i].vertices;
  };
  for (std::uint32_t ell = 2; ell <= e_ && ell <= copies_.size() + 1 && !found; ++ell) {
    const UnionCap cap{set_of, ell_minus_threshold(m_, k_, ell)};
    const bool finished = for_each_connected_containing(
        adj_, root, ell,
        [&](std::span<const std::uint32_t> idx) {
          Conflict c{ConflictReason::EllMinus, {}, ell, std::nullopt};
          for (std::uint32_t i : idx) {
            if (i != root) c.copies.push_back(i);
          }
          std::sort(c.copies.begin(), c.copies.end());
          found = std::move(c);
          return false;
        },
        &nodes_left, &cap);
    if (!finished && !found) return Conflict{ConflictReason::SearchBudget, {}, ell, std::nullopt};
  }
  return found;
}

void PackingIndex::add(PackedCopy copy) {
  const auto idx = static_cast<std::uint32_t>(copies_.size());
  std::vector<std::uint32_t> near = neighbours(copy.vertices);
  adj_.resize(idx + 1);
  adj_[idx] = near;
  for (std::uint32_t j : near) adj_[j].push_back(idx);
  for (const VertexSet& e : copy.edges) edge_owner_.emplace(e, idx);
  copy.vertices.for_each([&](Vertex v) { by_vertex_[v].push_back(idx); });
  copies_.push_back(std::move(copy));
}

std::optional<Conflict> conflicts_with(const PackedCopy& candidate, const PackingRecord& accepted, std::uint32_t e,
                                       std::uint32_t m, std::uint32_t k) {
  PackingIndex index(accepted.n, k, m, e, std::numeric_limits<std::uint64_t>::max());
  for (const PackedCopy& c : accepted.copies) index.add(c);
  return index.check(candidate);
}

Rational default_packing_epsilon(std::uint32_t m, std::uint32_t k) {
  if (m <= k) return Rational(1, 4);
  return Rational(1, 4 * static_cast<std::int64_t>(m - k));
}

PackingResult greedy_conflict_free_packing(const Hypergraph& templ, const PackingOptions& options) {
  require(options.k >= 1, ErrorKind::BadParameters, "k must be at least 1");
  require(templ.r() == options.k, ErrorKind::UniformityMismatch, "template uniformity differs from k");
  require(options.e >= 2, ErrorKind::BadParameters, "e must be at least 2");
  PackingResult out;
  out.record.n = options.n;
  out.record.k = options.k;
  out.record.template_id = options.template_id;
  const std::uint32_t m = templ.n();
  if (options.n < m) return out;

  const Coloring coloring(options.n, options.k, options.epsilon, substream_key(options.seed, {"packing", "coloring"}));
  PlacementSampler sampler(templ, options.n, seed_substream(options.seed, "packing", "placements"));
  PackingIndex index(options.n, options.k, m, options.e, options.search_node_cap);
  PackingStats& stats = out.stats;
  while (stats.samples < options.budget && (options.target_count == 0 || stats.accepted < options.target_count)) {
    ++stats.samples;
    PackedCopy c = sampler.next();
    if (options.strategy == PackingStrategy::FaithfulColoring && !matches_pattern(c, coloring)) {
      ++stats.rejected_pattern;
      continue;
    }
    if (auto conflict = index.check(c)) {
      ++stats.rejected[to_string(conflict->reason)];
      if (conflict->reason == ConflictReason::EllMinus) ++stats.rejected_ell[conflict->ell];
      continue;
    }
    index.add(std::move(c));
    ++stats.accepted;
  }
  if (options.target_count != 0 && stats.accepted < options.target_count) {
    stats.budget_exhausted = true;
    out.record.flags.push_back("budget-exhausted");
  }
  out.record.copies = index.release();
  return out;
}

Rational packing_density(const PackingRecord& p, std::uint32_t n, std::uint32_t k, std::size_t template_edges) {
  const BigInt total = binomial_big(n, k);
  if (total == 0 || p.copies.empty()) return 0;
  return Rational(BigInt(p.copies.size()) * template_edges, total);
}

namespace {

struct CopyKeyHash {
  std::size_t operator()(const std::vector<VertexSet>& edges) const noexcept {
    std::uint64_t h = 0x51ed27ULL;
    for (const VertexSet& e : edges) h = splitmix64(h ^ e.hash());
    return static_cast<std::size_t>(h);
  }
};

void summarize_degrees(DegreeDiagnostics& d, const std::vector<std::uint64_t>& degrees) {
  d.blue_ksets = degrees.size();
  if (degrees.empty()) return;
  d.min_degree = *std::min_element(degrees.begin(), degrees.end());
  d.max_degree = *std::max_element(degrees.begin(), degrees.end());
  long double sum = 0;
  for (std::uint64_t x : degrees) {
    sum += static_cast<long double>(x);
    ++d.histogram[x];
  }
  d.mean_degree = static_cast<double>(sum / static_cast<long double>(degrees.size()));
  d.max_over_mean = d.mean_degree > 0 ? static_cast<double>(d.max_degree) / d.mean_degree : 0;
}

}  // namespace

DegreeDiagnostics degree_diagnostics(const Hypergraph& templ, const Coloring& coloring,
                                     const DiagnosticsOptions& options) {
  DegreeDiagnostics d;
  const std::uint32_t n = coloring.n();
  const std::uint32_t k = coloring.k();
  const std::uint32_t m = templ.n();
  if (m > n) return d;

  // number of injections m -> n, saturating
  std::uint64_t injections = 1;
  for (std::uint32_t i = 0; i < m && injections <= options.exhaustive_limit; ++i) injections *= n - i;

  std::vector<VertexSet> placement_vertices;
  std::unordered_map<VertexSet, std::uint64_t, VertexSetHash> degree;
  if (injections <= options.exhaustive_limit) {
    d.exhaustive = true;
    std::unordered_set<std::vector<VertexSet>, CopyKeyHash> seen;
    std::vector<Vertex> image;
    std::vector<bool> used(n, false);
    std::function<void()> rec = [&]() {
      if (image.size() == m) {
        PackedCopy c = transport(templ, image, n);
        std::vector<VertexSet> key = c.edges;
        std::sort(key.begin(), key.end());
        if (!seen.insert(key).second) return;
        if (!matches_pattern(c, coloring)) return;
        for (const VertexSet& e : c.edges) ++degree[e];
        placement_vertices.push_back(c.vertices);
        return;
      }
      for (Vertex v = 0; v < n; ++v) {
        if (used[v]) continue;
        used[v] = true;
        image.push_back(v);
        rec();
        image.pop_back();
        used[v] = false;
      }
    };
    rec();
    std::vector<std::uint64_t> degrees;
    for_each_combination(n, k, [&](std::span<const std::size_t> idx) {
      VertexSet s(n);
      for (std::size_t i : idx) s.insert(static_cast<Vertex>(i));
      if (coloring.is_blue(s)) {
        const auto it = degree.find(s);
        degrees.push_back(it == degree.end() ? 0 : it->second);
      }
      return true;
    });
    summarize_degrees(d, degrees);
  } else {
    PlacementSampler sampler(templ, n, seed_substream(options.seed, "packing", "diagnostics"));
    for (std::uint64_t i = 0; i < options.samples; ++i) {
      PackedCopy c = sampler.next();
      if (!matches_pattern(c, coloring)) continue;
      for (const VertexSet& e : c.edges) ++degree[e];
      placement_vertices.push_back(c.vertices);
    }
    std::vector<std::uint64_t> degrees;
    for (const auto& [set, deg] : degree) degrees.push_back(deg);
    std::sort(degrees.begin(), degrees.end());
    summarize_degrees(d, degrees);
  }
  d.placements = placement_vertices.size();

  // 2-uniform conflict layer: pairs whose union has at most 2m - k - 1 vertices
  const std::size_t p = placement_vertices.size();
  if (p >= 2 && p <= 5000) {
    std::vector<std::uint64_t> pair_degree(p, 0);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = i + 1; j < p; ++j) {
        if (placement_vertices[i].intersection_count(placement_vertices[j]) >= k + 1) {
          ++pair_degree[i];
          ++pair_degree[j];
        }
      }
    }
    d.max_pair_conflict_degree = *std::max_element(pair_degree.begin(), pair_degree.end());
  }
  if (p >= 3) {
    Rng rng = seed_substream(options.seed, "packing", "diagnostics", "triples");
    std::uint64_t hits = 0;
    const std::uint64_t trials = std::min<std::uint64_t>(options.samples, 20000);
    for (std::uint64_t s = 0; s < trials; ++s) {
      std::size_t a = uniform_below(rng, p), b = uniform_below(rng, p), c = uniform_below(rng, p);
      if (a == b || b == c || a == c) continue;
      const std::size_t idx[3] = {a, b, c};
      if (is_minimal_ell_minus(placement_vertices, idx, m, k)) ++hits;
      ++d.sampled_triples;
    }
    d.sampled_triple_conflict_rate =
        d.sampled_triples == 0 ? 0 : static_cast<double>(hits) / static_cast<double>(d.sampled_triples);
  }
  return d;
}

nlohmann::ordered_json stats_to_json(const PackingStats& s) {
  nlohmann::ordered_json doc;
  doc["samples"] = s.samples;
  doc["accepted"] = s.accepted;
  doc["rejected_pattern"] = s.rejected_pattern;
  nlohmann::ordered_json rejected = nlohmann::ordered_json::object();
  for (const auto& [reason, count] : s.rejected) rejected[reason] = count;
  doc["rejected"] = std::move(rejected);
  nlohmann::ordered_json by_ell = nlohmann::ordered_json::object();
  for (const auto& [ell, count] : s.rejected_ell) by_ell[std::to_string(ell)] = count;
  doc["rejected_ell_minus_by_ell"] = std::move(by_ell);
  doc["budget_exhausted"] = s.budget_exhausted;
  return doc;
}

nlohmann::ordered_json diagnostics_to_json(const DegreeDiagnostics& d) {
  nlohmann::ordered_json doc;
  doc["mode"] = d.exhaustive ? "exhaustive" : "sampled";
  doc["placements"] = d.placements;
  doc["blue_ksets"] = d.blue_ksets;
  doc["min_degree"] = d.min_degree;
  doc["max_degree"] = d.max_degree;
  doc["mean_degree"] = d.mean_degree;
  doc["max_over_mean"] = d.max_over_mean;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [deg, count] : d.histogram) hist[std::to_string(deg)] = count;
  doc["degree_histogram"] = std::move(hist);
  doc["max_pair_conflict_degree"] = d.max_pair_conflict_degree;
  doc["sampled_triples"] = d.sampled_triples;
  doc["sampled_triple_conflict_rate"] = d.sampled_triple_conflict_rate;
  return doc;
}

}  // namespace hx
