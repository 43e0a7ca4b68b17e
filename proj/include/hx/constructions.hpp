#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hx/bigint.hpp"
#include "hx/error.hpp"
#include "hx/hypergraph.hpp"
#include "hx/packing.hpp"
#include "hx/packing_record.hpp"

namespace hx {

struct EllMinusOptions {
  std::uint32_t retries = 5;
  /// Retry when fewer edges survive the deletion step.
  std::uint64_t min_edges = 0;
  /// Refuse to scan more than this many r-subsets of [m].
  std::uint64_t max_candidates = 50'000'000;
};

struct EllMinusRun {
  Hypergraph graph;
  double probability = 0;
  std::uint64_t sampled = 0;
  std::uint64_t deleted = 0;
  std::uint32_t attempts = 0;
};

class RetriesExhaustedError : public Error {
 public:
  RetriesExhaustedError(const std::string& message, EllMinusRun best)
      : Error(ErrorKind::RetriesExhausted, message), best_(std::move(best)) {}
  const EllMinusRun& best() const noexcept { return best_; }

 private:
  EllMinusRun best_;
};

/// Sampling probability ½·m^{k + 1/(e−1) − r}, clamped to (0, 1].
double deletion_probability(std::uint32_t m, std::uint32_t r, std::uint32_t k, std::uint32_t e);

/// Deletion method: Bernoulli sample of C([m], r), then for ℓ = 2..e delete the
/// colex-largest edge of every surviving ℓ⁻-configuration.
EllMinusRun random_ell_minus_free_run(std::uint32_t m, std::uint32_t r, std::uint32_t k, std::uint32_t e,
                                      std::uint64_t seed, const EllMinusOptions& options = {});
Hypergraph random_ell_minus_free(std::uint32_t m, std::uint32_t r, std::uint32_t k, std::uint32_t e,
                                 std::uint64_t seed, const EllMinusOptions& options = {});

/// Relabels the non-isolated vertices to 0..|V|-1 keeping their order.
Hypergraph drop_isolated_vertices(const Hypergraph& g);

/// Edge i of G (canonical order) gains the fresh vertex n(G) + i.
Hypergraph lift_to_F(const Hypergraph& g, std::uint32_t t, std::uint32_t k);

/// All k-subsets of edges, on the same vertex set.
Hypergraph k_shadow(const Hypergraph& f, std::uint32_t k);

/// Smallest m0 >= tk with 1/(ĉ⁻¹·m0^{−1/(2t−1)} + B) >= (1 − ε/2)/B, B = C(tk−1, k−1).
std::int64_t choose_m0(std::uint32_t t, std::uint32_t k, const Rational& epsilon, const Rational& c_hat);

/// Empirical |G| / m^{k + 1/(e−1)} averaged over pilot deletion runs.
Rational estimate_c_hat(std::uint32_t r, std::uint32_t k, std::uint32_t e, std::uint32_t m, std::uint32_t pilots,
                        std::uint64_t seed);

/// ∪ F_i with F_i the image of F under copy i's bijection. Every copy's edge
/// list must equal the transported k-shadow of F.
Hypergraph assemble_HF(const Hypergraph& f, const PackingRecord& p, std::uint32_t k);

enum class PipelineKind { Cancellative, UnionFree };

struct ConstructionParams {
  std::uint32_t t = 2;
  std::uint32_t k = 2;
  std::optional<std::uint32_t> m0;
  std::optional<Rational> epsilon;  // used to derive m0 when m0 is absent
  std::uint32_t e = 0;              // 0: 2t (cancellative) or 2t+2 (union-free)
  std::optional<Rational> packing_epsilon;
  std::uint32_t n = 0;
  std::uint64_t seed = 0;
  PackingStrategy strategy = PackingStrategy::DirectGreedy;
  std::uint64_t packing_budget = 20000;
  std::uint64_t target_copies = 0;
  std::uint64_t search_node_cap = 2'000'000;
  std::uint32_t retries = 5;
  std::uint32_t pilot_runs = 5;
  /// Largest tuple count for which the target property is checked exhaustively.
  double exhaustive_budget = 1e10;
  std::uint64_t sampled_tuples = 1'000'000;
  std::uint64_t max_unions = 20'000'000;
  unsigned threads = 1;
};

struct Verdict {
  std::string name;
  bool holds = false;
  std::string method;
  std::string detail;
};

struct PipelineReport {
  PipelineKind kind = PipelineKind::Cancellative;
  ConstructionParams params;
  std::uint32_t e = 0;
  std::uint32_t m0 = 0;
  std::optional<Rational> c_hat;
  std::uint32_t template_vertices = 0;  // m = |V(F)|
  double probability = 0;
  std::uint64_t sampled_edges = 0;
  std::uint64_t deleted_edges = 0;
  std::size_t size_G = 0, size_F = 0, size_J = 0, size_P = 0, size_H = 0;
  Rational packing_epsilon = 0;
  Rational packing_density = 0;
  Rational density_ratio = 0;
  PackingStats packing_stats;
  std::vector<Verdict> verdicts;
  std::string verification;  // "verified-exhaustive" or "verified-sufficient-conditions+sampled"
  std::uint32_t attempts = 0;
  std::uint32_t ell_minus_attempts = 0;
  std::vector<std::string> notes;
};

struct PipelineArtifacts {
  Hypergraph G;
  Hypergraph F;
  Hypergraph shadow;
  PackingRecord packing;
  Hypergraph H;
  PipelineReport report;
};

PipelineArtifacts build_cancellative(const ConstructionParams& params);
PipelineArtifacts build_union_free(const ConstructionParams& params);
PipelineArtifacts build_pipeline(PipelineKind kind, const ConstructionParams& params);

nlohmann::ordered_json report_to_json(const PipelineReport& r);

}  // namespace hx
