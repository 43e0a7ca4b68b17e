#include "hx/configurations.hpp"

#include <algorithm>

#include "hx/error.hpp"

namespace hx {

Adjacency intersection_graph(std::span<const VertexSet> sets) {
  Adjacency adj(sets.size());
  std::size_t universe = 0;
  for (const VertexSet& s : sets) universe = std::max(universe, s.universe());
  std::vector<std::vector<std::uint32_t>> by_vertex(universe);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    sets[i].for_each([&](Vertex v) { by_vertex[v].push_back(static_cast<std::uint32_t>(i)); });
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    sets[i].for_each([&](Vertex v) {
      for (std::uint32_t j : by_vertex[v]) {
        if (j != i) adj[i].push_back(j);
      }
    });
    std::sort(adj[i].begin(), adj[i].end());
    adj[i].erase(std::unique(adj[i].begin(), adj[i].end()), adj[i].end());
  }
  return adj;
}

namespace {

// ESU enumeration (Wernicke). `mark[u]` counts how many members of the
// current subset are u itself or adjacent to u; a vertex with mark 0 is an
// exclusive neighbour of the next member.
struct Esu {
  const Adjacency& adj;
  std::size_t size;
  const SubsetVisitor& visit;
  std::uint32_t root;
  bool ordered;  // only vertices > root may join
  std::uint64_t* nodes_left = nullptr;
  const UnionCap* cap = nullptr;
  std::vector<VertexSet> unions;  // unions[i]: union over sub[0..i]
  std::vector<std::uint32_t> mark;
  std::vector<std::uint32_t> sub;

  Esu(const Adjacency& a, std::size_t s, const SubsetVisitor& v)
      : adj(a), size(s), visit(v), root(0), ordered(true), mark(a.size(), 0) {}

  bool allowed(std::uint32_t u) const { return !ordered || u > root; }

  bool fits(std::uint32_t w) const {
    return cap == nullptr || sub.empty() ||
           static_cast<std::int64_t>(unions[sub.size() - 1].union_count(cap->set_of(w))) <= cap->limit;
  }

  void add(std::uint32_t w) {
    if (cap != nullptr) {
      if (unions.size() < size) unions.resize(size);
      const VertexSet& s = cap->set_of(w);
      VertexSet& u = unions[sub.size()];
      u = s;
      if (!sub.empty()) u |= unions[sub.size() - 1];
    }
    sub.push_back(w);
    ++mark[w];
    for (std::uint32_t u : adj[w]) ++mark[u];
  }
  void remove(std::uint32_t w) {
    sub.pop_back();
    --mark[w];
    for (std::uint32_t u : adj[w]) --mark[u];
  }

  bool extend(std::vector<std::uint32_t> ext) {
    if (sub.size() == size) return visit(std::span<const std::uint32_t>(sub));
    while (!ext.empty()) {
      if (nodes_left != nullptr) {
        if (*nodes_left == 0) return false;
        --*nodes_left;
      }
      const std::uint32_t w = ext.back();
      ext.pop_back();
      std::vector<std::uint32_t> next = ext;
      if (!fits(w)) continue;
      for (std::uint32_t u : adj[w]) {
        if (allowed(u) && mark[u] == 0) next.push_back(u);
      }
      add(w);
      const bool go_on = extend(std::move(next));
      remove(w);
      if (!go_on) return false;
    }
    return true;
  }

  bool run_from(std::uint32_t r) {
    root = r;
    add(r);
    std::vector<std::uint32_t> ext;
    for (std::uint32_t u : adj[r]) {
      if (allowed(u)) ext.push_back(u);
    }
    std::sort(ext.rbegin(), ext.rend());  // pop_back then takes the smallest first
    const bool go_on = extend(std::move(ext));
    remove(r);
    return go_on;
  }
};

}  // namespace

bool for_each_connected_subset(const Adjacency& adj, std::size_t size, const SubsetVisitor& visit,
                               const UnionCap* cap) {
  if (size == 0) return true;
  Esu esu(adj, size, visit);
  esu.cap = cap;
  for (std::uint32_t v = 0; v < adj.size(); ++v) {
    if (!esu.run_from(v)) return false;
  }
  return true;
}

bool for_each_connected_containing(const Adjacency& adj, std::uint32_t root, std::size_t size,
                                   const SubsetVisitor& visit, std::uint64_t* nodes_left,
                                   const UnionCap* cap) {
  if (size == 0) return true;
  require(root < adj.size(), ErrorKind::BadParameters, "root outside the graph");
  Esu esu(adj, size, visit);
  esu.ordered = false;
  esu.nodes_left = nodes_left;
  esu.cap = cap;
  return esu.run_from(root);
}

std::optional<std::vector<std::size_t>> find_ell_minus_configuration(std::span<const VertexSet> sets,
                                                                      std::uint32_t m, std::uint32_t k,
                                                                      std::uint32_t e) {
  require(m > k, ErrorKind::BadParameters, "ell-minus configurations need m > k");
  if (sets.size() < 2 || e < 2) return std::nullopt;
  const Adjacency adj = intersection_graph(sets);
  std::optional<std::vector<std::size_t>> found;
  for (std::uint32_t ell = 2; ell <= e && !found && ell <= sets.size(); ++ell) {
    const UnionCap cap{[&](std::uint32_t i) -> const VertexSet& { return sets[i]; }, ell_minus_threshold(m, k, ell)};
    for_each_connected_subset(
        adj, ell,
        [&](std::span<const std::uint32_t> idx) {
          found.emplace(idx.begin(), idx.end());
          std::sort(found->begin(), found->end());
          return false;
        },
        &cap);
  }
  return found;
}

bool is_minimal_ell_minus(std::span<const VertexSet> sets, std::span<const std::size_t> idx, std::uint32_t m,
                          std::uint32_t k) {
  const std::size_t ell = idx.size();
  if (ell < 2 || ell > 20) return false;
  const auto union_count = [&](std::uint32_t mask) {
    VertexSet u;
    bool first = true;
    for (std::size_t b = 0; b < ell; ++b) {
      if ((mask >> b & 1U) == 0) continue;
      if (first) {
        u = sets[idx[b]];
        first = false;
      } else {
        u |= sets[idx[b]];
      }
    }
    return static_cast<std::int64_t>(u.count());
  };
  const std::uint32_t full = (1U << ell) - 1;
  if (union_count(full) > ell_minus_threshold(m, k, static_cast<std::uint32_t>(ell))) return false;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    const auto s = static_cast<std::uint32_t>(std::popcount(mask));
    if (s < 2) continue;
    if (union_count(mask) < static_cast<std::int64_t>(s) * m - static_cast<std::int64_t>(s - 1) * k) return false;
  }
  return true;
}

PropertyWitness ell_minus_free_upto(const Hypergraph& h, std::uint32_t k, std::uint32_t e) {
  require(e >= 2, ErrorKind::BadParameters, "e must be at least 2");
  PropertyWitness out;
  out.property = {PropertyKind::EllMinusFree, 0, 0, e, k, e};
  if (auto found = find_ell_minus_configuration(h.edges(), h.r(), k, e)) {
    const auto ell = static_cast<std::uint32_t>(found->size());
    out.holds = false;
    out.property.ell = ell;
    out.property.e = ell;
    out.property.v = static_cast<std::uint32_t>(ell_minus_threshold(h.r(), k, ell));
    out.edges = std::move(*found);
    out.reason = "ell edges span at most ell*r-(ell-1)*k-1 vertices";
  }
  return out;
}

}  // namespace hx
