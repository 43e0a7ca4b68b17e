#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hx/bigint.hpp"
#include "hx/configurations.hpp"
#include "hx/hypergraph.hpp"
#include "hx/packing_record.hpp"
#include "hx/rng.hpp"

namespace hx {

enum class PackingStrategy { FaithfulColoring, DirectGreedy };

std::string to_string(PackingStrategy s);
PackingStrategy parse_strategy(const std::string& name);

/// Lazy red/blue colouring of C([n], k): the colour of a k-set is a keyed
/// pseudorandom function of (seed, k-set), red with probability epsilon.
class Coloring {
 public:
  Coloring() = default;
  Coloring(std::uint32_t n, std::uint32_t k, const Rational& epsilon, std::uint64_t seed);

  bool is_red(const VertexSet& kset) const noexcept;
  bool is_blue(const VertexSet& kset) const noexcept { return !is_red(kset); }

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t k() const noexcept { return k_; }
  const Rational& epsilon() const noexcept { return epsilon_; }

 private:
  std::uint32_t n_ = 0;
  std::uint32_t k_ = 0;
  Rational epsilon_ = 0;
  std::uint64_t seed_ = 0;
  std::uint64_t threshold_ = 0;  // red iff hash < threshold_
  bool all_red_ = false;
};

Coloring color_ksets(std::uint32_t n, std::uint32_t k, const Rational& epsilon, std::uint64_t seed);

/// True iff every edge of the copy is blue and every other k-subset of its
/// vertex set is red.
bool matches_pattern(const PackedCopy& copy, const Coloring& coloring);

/// Uniform random injections V(J) -> [n] via a persistent partial Fisher-Yates.
class PlacementSampler {
 public:
  PlacementSampler(const Hypergraph& templ, std::uint32_t n, Rng rng);
  PackedCopy next();

 private:
  Hypergraph templ_;
  std::uint32_t n_;
  Rng rng_;
  std::vector<Vertex> perm_;
};

struct CandidateStream {
  std::vector<PackedCopy> placements;
  std::uint64_t samples = 0;
  bool budget_exhausted = false;
};

/// Draws up to `budget` injections; FaithfulColoring keeps those matching the
/// blue/red pattern, DirectGreedy keeps all. Stops after `max_yield` (0 = no cap).
CandidateStream find_placements_greedy(const Hypergraph& templ, const Coloring& coloring, std::uint32_t n,
                                       PackingStrategy strategy, std::uint64_t budget, std::uint64_t seed,
                                       std::uint64_t max_yield = 0);

enum class ConflictReason { EdgeOverlap, VertexOverlap, EdgeInIntersection, EllMinus, SearchBudget };

std::string to_string(ConflictReason r);

struct Conflict {
  ConflictReason reason = ConflictReason::EdgeOverlap;
  /// Indices of the accepted copies involved.
  std::vector<std::size_t> copies;
  std::uint32_t ell = 0;
  std::optional<VertexSet> kset;
};

/// Incremental index over an accepted packing; answers conflict queries for
/// candidates and grows as copies are accepted.
class PackingIndex {
 public:
  PackingIndex(std::uint32_t n, std::uint32_t k, std::uint32_t m, std::uint32_t e,
               std::uint64_t search_node_cap = 2'000'000);

  /// First violated constraint among: shared edge, induced-packing rule,
  /// ℓ⁻-configuration (2 <= ℓ <= e) with accepted copies.
  std::optional<Conflict> check(const PackedCopy& candidate);
  void add(PackedCopy copy);

  const std::vector<PackedCopy>& copies() const noexcept { return copies_; }
  std::vector<PackedCopy> release() { return std::move(copies_); }

 private:
  std::uint32_t n_, k_, m_, e_;
  std::uint64_t node_cap_;
  std::vector<PackedCopy> copies_;
  std::unordered_map<VertexSet, std::uint32_t, VertexSetHash> edge_owner_;
  std::vector<std::vector<std::uint32_t>> by_vertex_;
  Adjacency adj_;  // intersection graph of accepted copies, plus a scratch slot

  std::vector<std::uint32_t> neighbours(const VertexSet& vertices) const;
};

/// One-shot form of PackingIndex::check against an existing record.
std::optional<Conflict> conflicts_with(const PackedCopy& candidate, const PackingRecord& accepted, std::uint32_t e,
                                       std::uint32_t m, std::uint32_t k);

struct PackingOptions {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t e = 2;
  Rational epsilon = 0;
  PackingStrategy strategy = PackingStrategy::DirectGreedy;
  std::uint64_t seed = 0;
  std::uint64_t target_count = 0;  // 0: keep going until the budget is spent
  std::uint64_t budget = 10000;    // sampled injections
  std::uint64_t search_node_cap = 2'000'000;
  std::string template_id;
};

struct PackingStats {
  std::uint64_t samples = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected_pattern = 0;
  std::map<std::string, std::uint64_t> rejected;  // by conflict reason
  std::map<std::uint32_t, std::uint64_t> rejected_ell;  // ℓ of ℓ⁻-conflicts
  bool budget_exhausted = false;
};

struct PackingResult {
  PackingRecord record;
  PackingStats stats;
};

/// Epsilon default 1/(4(m-k)) for an m-vertex template.
Rational default_packing_epsilon(std::uint32_t m, std::uint32_t k);

PackingResult greedy_conflict_free_packing(const Hypergraph& templ, const PackingOptions& options);

/// |P| * |J| / C(n, k).
Rational packing_density(const PackingRecord& p, std::uint32_t n, std::uint32_t k, std::size_t template_edges);

struct DegreeDiagnostics {
  bool exhaustive = false;
  std::uint64_t placements = 0;  // distinct copies counted (or sampled hits)
  std::uint64_t blue_ksets = 0;
  std::uint64_t min_degree = 0;
  std::uint64_t max_degree = 0;
  double mean_degree = 0;
  double max_over_mean = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;  // degree -> number of blue k-sets
  std::uint64_t max_pair_conflict_degree = 0;       // Δ1 of the 2-uniform conflict layer
  double sampled_triple_conflict_rate = 0;
  std::uint64_t sampled_triples = 0;
};

struct DiagnosticsOptions {
  std::uint64_t exhaustive_limit = 2'000'000;  // max injections enumerated
  std::uint64_t samples = 20000;
  std::uint64_t seed = 0;
};

DegreeDiagnostics degree_diagnostics(const Hypergraph& templ, const Coloring& coloring,
                                     const DiagnosticsOptions& options = {});

nlohmann::ordered_json stats_to_json(const PackingStats& s);
nlohmann::ordered_json diagnostics_to_json(const DegreeDiagnostics& d);

}  // namespace hx
