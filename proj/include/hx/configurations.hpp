#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hx/hypergraph.hpp"
#include "hx/properties.hpp"

namespace hx {

// ℓ⁻-configurations among equal-size sets: ℓ sets of size m whose union has
// at most ℓm − (ℓ−1)k − 1 elements. A violating family that splits into two
// vertex-disjoint parts always contains a smaller violating part, so scanning
// ℓ = 2, 3, ... over connected families of the intersection graph finds a
// violation whenever one of size ≤ e exists.

using Adjacency = std::vector<std::vector<std::uint32_t>>;
using SubsetVisitor = std::function<bool(std::span<const std::uint32_t>)>;

Adjacency intersection_graph(std::span<const VertexSet> sets);

/// Prunes the enumeration: a partial subset whose union of sets exceeds
/// `limit` is not extended.
struct UnionCap {
  std::function<const VertexSet&(std::uint32_t)> set_of;
  std::int64_t limit = 0;
};

/// Every connected vertex subset of the given size, exactly once.
/// Returns false when the visitor stopped the walk.
bool for_each_connected_subset(const Adjacency& adj, std::size_t size, const SubsetVisitor& visit,
                               const UnionCap* cap = nullptr);

/// Every connected subset of the given size that contains `root`, exactly once.
/// Neighbour lists of other vertices need not mention `root`. When
/// `nodes_left` is given, each extension step consumes one unit and the walk
/// stops (returning false) once it reaches zero.
bool for_each_connected_containing(const Adjacency& adj, std::uint32_t root, std::size_t size,
                                   const SubsetVisitor& visit, std::uint64_t* nodes_left = nullptr,
                                   const UnionCap* cap = nullptr);

/// Smallest-ℓ violating family (2 <= ℓ <= e) among `sets`, indices ascending.
std::optional<std::vector<std::size_t>> find_ell_minus_configuration(std::span<const VertexSet> sets,
                                                                      std::uint32_t m, std::uint32_t k,
                                                                      std::uint32_t e);

/// True iff the indexed family is an ℓ⁻-configuration and no proper
/// subfamily of size >= 2 is one.
bool is_minimal_ell_minus(std::span<const VertexSet> sets, std::span<const std::size_t> idx, std::uint32_t m,
                          std::uint32_t k);

/// ℓ⁻-freeness of h for every 2 <= ℓ <= e at once (r plays the role of m).
PropertyWitness ell_minus_free_upto(const Hypergraph& h, std::uint32_t k, std::uint32_t e);

}  // namespace hx
