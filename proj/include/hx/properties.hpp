#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "hx/bigint.hpp"
#include "hx/hypergraph.hpp"
#include "hx/packing_record.hpp"

namespace hx {

enum class PropertyKind { Cancellative, UnionFree, CoverFree, VEFree, InducedPacking, EllMinusFree };

std::string to_string(PropertyKind kind);

struct PropertySpec {
  PropertyKind kind = PropertyKind::Cancellative;
  std::uint32_t t = 0;
  std::uint32_t v = 0;
  std::uint32_t e = 0;
  std::uint32_t k = 0;
  std::uint32_t ell = 0;
};

/// Verdict of a checker. When holds == false the witness fields describe a
/// violation that replay_violation() reproduces:
///  Cancellative  edges = {B, C, A_1..A_t}
///  CoverFree     edges = {B, A_1..A_s}, s <= t
///  VEFree / EllMinusFree  edges = the violating tuple
///  UnionFree     family_a, family_b
///  InducedPacking edges = {i, i'} copy indices, kset = offending k-set if any
struct PropertyWitness {
  PropertySpec property;
  bool holds = true;
  std::vector<std::size_t> edges;
  std::vector<std::size_t> family_a;
  std::vector<std::size_t> family_b;
  std::optional<VertexSet> kset;
  std::string reason;
};

struct CheckOptions {
  unsigned threads = 1;
  /// Union-free: abort with ResourceLimit once the union map would exceed this.
  std::uint64_t max_unions = 20'000'000;
};

PropertyWitness is_t_cancellative(const Hypergraph& h, std::uint32_t t, const CheckOptions& options = {});
PropertyWitness is_t_union_free(const Hypergraph& h, std::uint32_t t, const CheckOptions& options = {});
/// "B inside the union of at most t other edges" (padded to exactly t when
/// the hypergraph has enough edges, which is then the literal definition).
PropertyWitness is_t_cover_free(const Hypergraph& h, std::uint32_t t, const CheckOptions& options = {});
/// Every e distinct edges span at least v+1 vertices.
PropertyWitness is_ve_free(const Hypergraph& h, std::uint32_t v, std::uint32_t e, const CheckOptions& options = {});
/// is_ve_free with v = ell*r - (ell-1)*k - 1.
PropertyWitness is_ell_minus_free(const Hypergraph& h, std::uint32_t k, std::uint32_t ell,
                                  const CheckOptions& options = {});
PropertyWitness is_induced_packing(const PackingRecord& p, std::uint32_t k);

/// ell*r - (ell-1)*k - 1 as a signed value (negative means no configuration can exist).
std::int64_t ell_minus_threshold(std::uint32_t r, std::uint32_t k, std::uint32_t ell);

/// Re-derives the violation from the witness alone; true iff it reproduces.
bool replay_violation(const Hypergraph& h, const PropertyWitness& w);
bool replay_violation(const PackingRecord& p, const PropertyWitness& w);

/// Exact matching number by branch and bound.
std::size_t matching_number(const Hypergraph& h);
std::size_t matching_number(std::span<const VertexSet> sets);

struct DegreeSpectrum {
  std::uint32_t k = 0;
  /// s -> number of k-sets of degree exactly s, for s >= 1.
  std::map<std::uint64_t, std::uint64_t> counts;
  /// Number of k-sets of degree 0, C(n,k) - sum of counts.
  BigInt zero_count;

  /// Σ_{s>=1} s * counts[s].
  BigInt weighted_sum() const;
  std::uint64_t count(std::uint64_t s) const;
};

/// Degree of every k-subset that lies in at least one edge.
std::unordered_map<VertexSet, std::uint32_t, VertexSetHash> kset_degrees(const Hypergraph& h, std::uint32_t k);

DegreeSpectrum degree_spectrum(const Hypergraph& h, std::uint32_t k);
/// {T in C(X, k) : deg_H(T) >= s_min}, in colex order.
std::vector<VertexSet> restricted_degree_sets(const Hypergraph& h, const VertexSet& x, std::uint32_t k,
                                              std::uint32_t s_min);

nlohmann::ordered_json witness_to_json(const PropertyWitness& w, std::span<const VertexSet> edges = {});

}  // namespace hx
