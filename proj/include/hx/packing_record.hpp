#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hx/hypergraph.hpp"

namespace hx {

/// One placed copy 𝓙ᵢ of a template k-graph: its vertex set, the bijection
/// template vertex j -> bijection[j], and the transported edge list.
struct PackedCopy {
  VertexSet vertices;
  std::vector<Vertex> bijection;
  std::vector<VertexSet> edges;
};

/// A list of edge-disjoint copies of one template k-graph inside [n].
struct PackingRecord {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  std::string template_id;
  std::vector<PackedCopy> copies;
  std::vector<std::string> flags;

  std::size_t size() const noexcept { return copies.size(); }
  bool empty() const noexcept { return copies.empty(); }
  /// The vertex-set family {V(𝓙ᵢ)} as plain sets.
  std::vector<VertexSet> vertex_sets() const;
};

/// Builds the copy of `templ` (on m vertices) carried by `bijection`.
PackedCopy transport(const Hypergraph& templ, std::span<const Vertex> bijection, std::uint32_t n);

/// JSON form {n, k, template, copies:[{vertices, bijection, edges}], flags}.
/// `density` is attached by callers that know it.
nlohmann::ordered_json packing_to_json(const PackingRecord& p);
PackingRecord packing_from_json(const nlohmann::json& doc);

}  // namespace hx
