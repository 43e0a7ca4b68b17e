#include "hx/hypergraph.hpp"

#include <algorithm>
#include <string>

#include "hx/error.hpp"

namespace hx {

Hypergraph Hypergraph::from_edges(std::uint32_t n, std::uint32_t r, std::vector<VertexSet> edges) {
  for (VertexSet& e : edges) {
    if (e.count() != r) {
      fail(ErrorKind::EdgeSizeMismatch,
           "edge has " + std::to_string(e.count()) + " vertices, expected " + std::to_string(r));
    }
    if (!e.empty() && e.last() >= n) {
      fail(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(e.last()) + " >= n = " + std::to_string(n));
    }
    if (e.universe() != n) e = e.resized(n);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Hypergraph h(n, r);
  h.edges_ = std::move(edges);
  return h;
}

bool Hypergraph::contains(const VertexSet& e) const { return index_of(e) != edges_.size(); }

std::size_t Hypergraph::index_of(const VertexSet& e) const {
  const auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || !(*it == e)) return edges_.size();
  return static_cast<std::size_t>(it - edges_.begin());
}

std::vector<std::vector<Vertex>> Hypergraph::edge_lists() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(edges_.size());
  for (const VertexSet& e : edges_) out.push_back(e.to_vector());
  return out;
}

Hypergraph Hypergraph::subgraph(std::span<const std::size_t> keep) const {
  std::vector<VertexSet> kept;
  kept.reserve(keep.size());
  for (std::size_t i : keep) kept.push_back(edges_.at(i));
  return from_edges(n_, r_, std::move(kept));
}

Hypergraph canonicalize(const std::vector<std::vector<Vertex>>& raw_edges, std::uint32_t n,
                        std::uint32_t r) {
  std::vector<VertexSet> edges;
  edges.reserve(raw_edges.size());
  for (const auto& raw : raw_edges) {
    if (raw.size() != r) {
      fail(ErrorKind::EdgeSizeMismatch,
           "edge has " + std::to_string(raw.size()) + " vertices, expected " + std::to_string(r));
    }
    VertexSet e(n);
    for (Vertex v : raw) {
      if (v >= n) {
        fail(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(v) + " >= n = " + std::to_string(n));
      }
      if (e.contains(v)) fail(ErrorKind::DuplicateVertexInEdge, "vertex " + std::to_string(v) + " repeated in an edge");
      e.insert(v);
    }
    edges.push_back(std::move(e));
  }
  return Hypergraph::from_edges(n, r, std::move(edges));
}

SubsetFamily::SubsetFamily(std::uint32_t n, std::vector<VertexSet> sets) : n_(n) {
  for (VertexSet& s : sets) {
    if (!s.empty() && s.last() >= n) {
      fail(ErrorKind::VertexOutOfRange, "vertex " + std::to_string(s.last()) + " >= n = " + std::to_string(n));
    }
    if (s.universe() != n) s = s.resized(n);
  }
  std::vector<VertexSet> sorted = sets;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), ErrorKind::FormatViolation,
          "subset family contains a duplicate set");
  sets_ = std::move(sets);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > ~std::uint64_t{0}) fail(ErrorKind::ResourceLimit, "binomial coefficient overflows 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<VertexSet> all_subsets_colex(std::uint32_t n, std::uint32_t r) {
  std::vector<VertexSet> out;
  out.reserve(static_cast<std::size_t>(binomial(n, r)));
  for_each_combination(n, r, [&](std::span<const std::size_t> idx) {
    VertexSet s(n);
    for (std::size_t i : idx) s.insert(static_cast<Vertex>(i));
    out.push_back(std::move(s));
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hx
