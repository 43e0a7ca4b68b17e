#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hx/vertex_set.hpp"

namespace hx {

/// An r-uniform hypergraph on [0, n) with duplicate-free edges kept in colex
/// order. Isolated vertices exist only through n. Immutable once built.
class Hypergraph {
 public:
  Hypergraph() = default;
  /// Empty r-graph on n vertices.
  Hypergraph(std::uint32_t n, std::uint32_t r) : n_(n), r_(r) {}

  /// Validates and canonicalizes (dedup + colex sort). Each edge must have
  /// exactly r members, all < n.
  static Hypergraph from_edges(std::uint32_t n, std::uint32_t r, std::vector<VertexSet> edges);

  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t r() const noexcept { return r_; }
  std::size_t size() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return edges_.empty(); }

  std::span<const VertexSet> edges() const noexcept { return edges_; }
  const VertexSet& edge(std::size_t i) const { return edges_.at(i); }

  bool contains(const VertexSet& e) const;
  /// Position of e in canonical order, or size() when absent.
  std::size_t index_of(const VertexSet& e) const;

  std::vector<std::vector<Vertex>> edge_lists() const;

  /// Sub-hypergraph on the same vertex set keeping the listed edge indices.
  Hypergraph subgraph(std::span<const std::size_t> keep) const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::uint32_t n_ = 0;
  std::uint32_t r_ = 0;
  std::vector<VertexSet> edges_;
};

/// Validates raw vertex lists (EdgeSizeMismatch, VertexOutOfRange,
/// DuplicateVertexInEdge) and returns the canonical hypergraph. Idempotent.
Hypergraph canonicalize(const std::vector<std::vector<Vertex>>& raw_edges, std::uint32_t n,
                        std::uint32_t r);

/// A duplicate-free list of vertex sets of arbitrary sizes over [0, n).
class SubsetFamily {
 public:
  SubsetFamily() = default;
  explicit SubsetFamily(std::uint32_t n) : n_(n) {}
  SubsetFamily(std::uint32_t n, std::vector<VertexSet> sets);

  std::uint32_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return sets_.size(); }
  std::span<const VertexSet> sets() const noexcept { return sets_; }

 private:
  std::uint32_t n_ = 0;
  std::vector<VertexSet> sets_;
};

// ---------------------------------------------------------------------------
// Counting and enumeration helpers shared by every module.

/// C(n, k) in 64 bits; throws ResourceLimit on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Calls fn(indices) for every k-combination of [0, n) in lexicographic order.
/// fn returns false to stop early; the function then returns false.
template <class Fn>
bool for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(std::span<const std::size_t>(idx))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Calls fn(subset) for every k-subset of `members` (as a VertexSet over the
/// same universe), lexicographic in member positions. Stops when fn returns false.
template <class Fn>
bool for_each_k_subset(const VertexSet& members, std::size_t k, Fn&& fn) {
  const std::vector<Vertex> list = members.to_vector();
  VertexSet subset(members.universe());
  return for_each_combination(list.size(), k, [&](std::span<const std::size_t> idx) {
    subset.clear();
    for (std::size_t i : idx) subset.insert(list[i]);
    return fn(static_cast<const VertexSet&>(subset));
  });
}

/// All r-subsets of [0, n) in colex order.
std::vector<VertexSet> all_subsets_colex(std::uint32_t n, std::uint32_t r);

}  // namespace hx
