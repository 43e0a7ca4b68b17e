#include "hx/properties.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <unordered_set>

#include "hx/error.hpp"
#include "parallel.hpp"

namespace hx {

std::string to_string(PropertyKind kind) {
  switch (kind) {
    case PropertyKind::Cancellative: return "cancellative";
    case PropertyKind::UnionFree: return "union-free";
    case PropertyKind::CoverFree: return "cover-free";
    case PropertyKind::VEFree: return "ve-free";
    case PropertyKind::InducedPacking: return "induced-packing";
    case PropertyKind::EllMinusFree: return "ell-minus";
  }
  return "unknown";
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct CoverIndex {
  std::span<const VertexSet> edges;
  std::size_t r = 0;
  std::vector<std::vector<std::uint32_t>> by_vertex;

  explicit CoverIndex(const Hypergraph& h) : edges(h.edges()), r(h.r()), by_vertex(h.n()) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      edges[i].for_each([&](Vertex v) { by_vertex[v].push_back(static_cast<std::uint32_t>(i)); });
    }
  }
};

// Looks for at most `slots` edges (other than the banned ones) whose union
// contains `uncovered`. Branches on the lowest uncovered vertex.
bool find_cover(const CoverIndex& ix, const VertexSet& uncovered, std::size_t slots, std::size_t banned1,
                std::size_t banned2, std::vector<std::size_t>& chosen) {
  if (uncovered.empty()) return true;
  if (slots == 0) return false;
  const std::size_t need = uncovered.count();
  if (need > slots * ix.r) return false;
  if (slots >= 2) {
    std::vector<std::size_t> gains;
    for (std::size_t a = 0; a < ix.edges.size(); ++a) {
      if (a == banned1 || a == banned2) continue;
      const std::size_t g = ix.edges[a].intersection_count(uncovered);
      if (g > 0) gains.push_back(g);
    }
    const std::size_t top = std::min(slots, gains.size());
    std::partial_sort(gains.begin(), gains.begin() + static_cast<std::ptrdiff_t>(top), gains.end(),
                      std::greater<>());
    if (std::accumulate(gains.begin(), gains.begin() + static_cast<std::ptrdiff_t>(top), std::size_t{0}) < need) {
      return false;
    }
  }
  const Vertex x = uncovered.first();
  for (std::uint32_t a : ix.by_vertex[x]) {
    if (a == banned1 || a == banned2) continue;
    chosen.push_back(a);
    if (find_cover(ix, uncovered - ix.edges[a], slots - 1, banned1, banned2, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

// Fills `tuple` up to `want` entries with the smallest unused edge indices.
void pad_with_unused(std::vector<std::size_t>& tuple, std::size_t start, std::size_t want, std::size_t m) {
  for (std::size_t i = 0; i < m && tuple.size() < want; ++i) {
    if (std::find(tuple.begin(), tuple.end(), i) == tuple.end()) tuple.push_back(i);
  }
  std::sort(tuple.begin() + static_cast<std::ptrdiff_t>(start), tuple.end());
}

void require_t(std::uint32_t t) { require(t >= 1, ErrorKind::BadParameters, "t must be at least 1"); }

VertexSet union_of(std::span<const VertexSet> edges, std::span<const std::size_t> idx, std::size_t n) {
  VertexSet acc(n);
  for (std::size_t i : idx) acc |= edges[i];
  return acc;
}

bool distinct_indices(std::span<const std::size_t> idx, std::size_t m) {
  std::vector<std::size_t> sorted(idx.begin(), idx.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  return sorted.empty() || sorted.back() < m;
}

}  // namespace

std::int64_t ell_minus_threshold(std::uint32_t r, std::uint32_t k, std::uint32_t ell) {
  return static_cast<std::int64_t>(ell) * r - static_cast<std::int64_t>(ell - 1) * k - 1;
}

PropertyWitness is_t_cancellative(const Hypergraph& h, std::uint32_t t, const CheckOptions& options) {
  require_t(t);
  require(h.r() != 0, ErrorKind::UniformityZero, "cancellativity is undefined for r = 0");
  PropertyWitness out;
  out.property = {PropertyKind::Cancellative, t, 0, 0, 0, 0};
  const std::size_t m = h.size();
  if (m < static_cast<std::size_t>(t) + 2) return out;
  const CoverIndex ix(h);
  auto hit = detail::first_hit<std::vector<std::size_t>>(m, options.threads, [&](std::size_t b)
                                                         -> std::optional<std::vector<std::size_t>> {
    for (std::size_t c = b + 1; c < m; ++c) {
      const VertexSet target = h.edge(b) ^ h.edge(c);
      std::vector<std::size_t> chosen;
      if (find_cover(ix, target, t, b, c, chosen)) {
        std::vector<std::size_t> tuple{b, c};
        tuple.insert(tuple.end(), chosen.begin(), chosen.end());
        pad_with_unused(tuple, 2, t + 2, m);
        return tuple;
      }
    }
    return std::nullopt;
  });
  if (hit) {
    out.holds = false;
    out.edges = std::move(*hit);
    out.reason = "symmetric difference of edges B, C is covered by t other edges";
  }
  return out;
}

PropertyWitness is_t_cover_free(const Hypergraph& h, std::uint32_t t, const CheckOptions& options) {
  require_t(t);
  PropertyWitness out;
  out.property = {PropertyKind::CoverFree, t, 0, 0, 0, 0};
  const std::size_t m = h.size();
  if (m < 2) return out;
  const std::size_t slots = std::min<std::size_t>(t, m - 1);
  const CoverIndex ix(h);
  auto hit = detail::first_hit<std::vector<std::size_t>>(m, options.threads, [&](std::size_t b)
                                                         -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> chosen;
    if (h.r() == 0) return std::nullopt;  // a lone empty edge has no other edge to sit in
    if (!find_cover(ix, h.edge(b), slots, b, kNone, chosen)) return std::nullopt;
    std::vector<std::size_t> tuple{b};
    tuple.insert(tuple.end(), chosen.begin(), chosen.end());
    pad_with_unused(tuple, 1, slots + 1, m);
    return tuple;
  });
  if (hit) {
    out.holds = false;
    out.edges = std::move(*hit);
    out.reason = "edge B lies in the union of other edges";
  }
  return out;
}

PropertyWitness is_t_union_free(const Hypergraph& h, std::uint32_t t, const CheckOptions& options) {
  require_t(t);
  PropertyWitness out;
  out.property = {PropertyKind::UnionFree, t, 0, 0, 0, 0};
  const std::size_t m = h.size();
  // family id -> [offset, offset + size) in `pool`
  std::vector<std::uint32_t> pool;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> families;
  std::unordered_map<VertexSet, std::uint32_t, VertexSetHash> seen;
  const std::size_t top = std::min<std::size_t>(t, m);
  for (std::size_t j = 1; j <= top && out.holds; ++j) {
    for_each_combination(m, j, [&](std::span<const std::size_t> idx) {
      VertexSet u = union_of(h.edges(), idx, h.n());
      auto [it, inserted] = seen.try_emplace(std::move(u), static_cast<std::uint32_t>(families.size()));
      if (!inserted) {
        const auto [offset, size] = families[it->second];
        out.holds = false;
        out.family_a.assign(pool.begin() + offset, pool.begin() + offset + size);
        out.family_b.assign(idx.begin(), idx.end());
        out.reason = "two distinct subfamilies have the same union";
        return false;
      }
      if (seen.size() > options.max_unions) {
        fail(ErrorKind::ResourceLimit,
             "union map exceeded --max-unions = " + std::to_string(options.max_unions));
      }
      families.emplace_back(static_cast<std::uint32_t>(pool.size()), static_cast<std::uint32_t>(idx.size()));
      for (std::size_t i : idx) pool.push_back(static_cast<std::uint32_t>(i));
      return true;
    });
  }
  return out;
}

PropertyWitness is_ve_free(const Hypergraph& h, std::uint32_t v, std::uint32_t e, const CheckOptions& options) {
  require(e >= 2, ErrorKind::BadParameters, "e must be at least 2");
  require(v >= h.r(), ErrorKind::BadParameters, "v must be at least r");
  PropertyWitness out;
  out.property = {PropertyKind::VEFree, 0, v, e, 0, 0};
  const std::size_t m = h.size();
  if (m < e) return out;
  const auto edges = h.edges();
  auto hit = detail::first_hit<std::vector<std::size_t>>(m - e + 1, options.threads, [&](std::size_t first)
                                                         -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> stack{first};
    std::vector<VertexSet> unions{edges[first]};
    std::function<bool(std::size_t)> dfs = [&](std::size_t start) -> bool {
      if (stack.size() == e) return true;
      for (std::size_t i = start; i + (e - stack.size()) <= m; ++i) {
        VertexSet u = unions.back() | edges[i];
        if (u.count() > v) continue;
        stack.push_back(i);
        unions.push_back(std::move(u));
        if (dfs(i + 1)) return true;
        stack.pop_back();
        unions.pop_back();
      }
      return false;
    };
    if (edges[first].count() <= v && dfs(first + 1)) return stack;
    return std::nullopt;
  });
  if (hit) {
    out.holds = false;
    out.edges = std::move(*hit);
    out.reason = "e edges span at most v vertices";
  }
  return out;
}

PropertyWitness is_ell_minus_free(const Hypergraph& h, std::uint32_t k, std::uint32_t ell,
                                  const CheckOptions& options) {
  require(ell >= 2, ErrorKind::BadParameters, "ell must be at least 2");
  require(h.r() > k, ErrorKind::BadParameters, "ell-minus configurations need r > k");
  const auto v = static_cast<std::uint32_t>(ell_minus_threshold(h.r(), k, ell));
  PropertyWitness out = is_ve_free(h, v, ell, options);
  out.property = {PropertyKind::EllMinusFree, 0, v, ell, k, ell};
  if (!out.holds) out.reason = "ell edges span at most ell*r-(ell-1)*k-1 vertices";
  return out;
}

PropertyWitness is_induced_packing(const PackingRecord& p, std::uint32_t k) {
  PropertyWitness out;
  out.property = {PropertyKind::InducedPacking, 0, 0, 0, k, 0};
  require(p.k == k, ErrorKind::NonuniformPacking,
          "packing is recorded with k = " + std::to_string(p.k) + " but k = " + std::to_string(k) + " was requested");
  for (const PackedCopy& c : p.copies) {
    for (const VertexSet& e : c.edges) {
      require(e.count() == k, ErrorKind::NonuniformPacking, "a copy has an edge of size " + std::to_string(e.count()));
      require(e.is_subset_of(c.vertices), ErrorKind::FormatViolation, "a copy has an edge outside its vertex set");
    }
  }
  const std::size_t count = p.copies.size();
  // edge-disjointness
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> owner;
  std::optional<std::pair<std::size_t, std::size_t>> shared;
  std::optional<VertexSet> shared_set;
  for (std::size_t i = 0; i < count && !shared; ++i) {
    for (const VertexSet& e : p.copies[i].edges) {
      auto [it, inserted] = owner.try_emplace(e, i);
      if (!inserted && it->second != i) {
        shared = std::make_pair(it->second, i);
        shared_set = e;
        break;
      }
    }
  }
  if (shared) {
    out.holds = false;
    out.edges = {shared->first, shared->second};
    out.kset = shared_set;
    out.reason = "copies share an edge";
    return out;
  }
  // pairwise vertex intersections, via the vertex -> copies index
  std::vector<std::vector<std::uint32_t>> by_vertex(p.n);
  for (std::size_t i = 0; i < count; ++i) {
    p.copies[i].vertices.for_each([&](Vertex v) { by_vertex[v].push_back(static_cast<std::uint32_t>(i)); });
  }
  std::unordered_set<VertexSet, VertexSetHash> edge_set;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::uint32_t> partners;
    p.copies[i].vertices.for_each([&](Vertex v) {
      for (std::uint32_t j : by_vertex[v]) {
        if (j > i) partners.push_back(j);
      }
    });
    std::sort(partners.begin(), partners.end());
    partners.erase(std::unique(partners.begin(), partners.end()), partners.end());
    for (std::uint32_t j : partners) {
      const VertexSet common = p.copies[i].vertices & p.copies[j].vertices;
      const std::size_t size = common.count();
      if (size > k) {
        out.holds = false;
        out.edges = {i, j};
        out.reason = "vertex sets of two copies share more than k vertices";
        return out;
      }
      if (size == k) {
        const auto is_edge = [&](const PackedCopy& c) {
          return std::find(c.edges.begin(), c.edges.end(), common) != c.edges.end();
        };
        if (is_edge(p.copies[i]) || is_edge(p.copies[j])) {
          out.holds = false;
          out.edges = {i, j};
          out.kset = common;
          out.reason = "the shared k-set of two copies is an edge of one of them";
          return out;
        }
      }
    }
  }
  return out;
}

bool replay_violation(const Hypergraph& h, const PropertyWitness& w) {
  if (w.holds) return false;
  const auto edges = h.edges();
  const std::size_t m = edges.size();
  const PropertySpec& s = w.property;
  switch (s.kind) {
    case PropertyKind::Cancellative: {
      if (w.edges.size() != static_cast<std::size_t>(s.t) + 2 || !distinct_indices(w.edges, m)) return false;
      const VertexSet diff = edges[w.edges[0]] ^ edges[w.edges[1]];
      const VertexSet cover = union_of(edges, std::span(w.edges).subspan(2), h.n());
      return diff.is_subset_of(cover);
    }
    case PropertyKind::CoverFree: {
      if (w.edges.size() < 2 || w.edges.size() > static_cast<std::size_t>(s.t) + 1) return false;
      if (!distinct_indices(w.edges, m)) return false;
      // padding to exactly t is required whenever enough edges exist
      if (w.edges.size() != std::min<std::size_t>(s.t, m - 1) + 1) return false;
      const VertexSet cover = union_of(edges, std::span(w.edges).subspan(1), h.n());
      return edges[w.edges[0]].is_subset_of(cover);
    }
    case PropertyKind::VEFree:
    case PropertyKind::EllMinusFree: {
      if (w.edges.size() != s.e || !distinct_indices(w.edges, m)) return false;
      return union_of(edges, w.edges, h.n()).count() <= s.v;
    }
    case PropertyKind::UnionFree: {
      const auto& a = w.family_a;
      const auto& b = w.family_b;
      if (a.empty() || b.empty() || a.size() > s.t || b.size() > s.t) return false;
      if (!distinct_indices(a, m) || !distinct_indices(b, m)) return false;
      std::vector<std::size_t> sa(a), sb(b);
      std::sort(sa.begin(), sa.end());
      std::sort(sb.begin(), sb.end());
      if (sa == sb) return false;
      return union_of(edges, a, h.n()) == union_of(edges, b, h.n());
    }
    case PropertyKind::InducedPacking:
      return false;
  }
  return false;
}

bool replay_violation(const PackingRecord& p, const PropertyWitness& w) {
  if (w.holds || w.property.kind != PropertyKind::InducedPacking || w.edges.size() != 2) return false;
  const std::size_t i = w.edges[0];
  const std::size_t j = w.edges[1];
  if (i == j || i >= p.copies.size() || j >= p.copies.size()) return false;
  const PackedCopy& a = p.copies[i];
  const PackedCopy& b = p.copies[j];
  const auto has = [](const PackedCopy& c, const VertexSet& s) {
    return std::find(c.edges.begin(), c.edges.end(), s) != c.edges.end();
  };
  if (w.kset) {
    if (has(a, *w.kset) && has(b, *w.kset)) return true;
    const VertexSet common = a.vertices & b.vertices;
    return common == *w.kset && common.count() == w.property.k && (has(a, common) || has(b, common));
  }
  return (a.vertices & b.vertices).count() > w.property.k;
}

namespace {

struct MatchingSolver {
  std::span<const VertexSet> sets;
  std::size_t min_size = 1;
  std::size_t best = 0;

  std::size_t bound(const std::vector<std::uint32_t>& remaining) const {
    if (remaining.empty()) return 0;
    VertexSet u = sets[remaining.front()];
    for (std::uint32_t i : remaining) u |= sets[i];
    return std::min(remaining.size(), u.count() / min_size);
  }

  void solve(const std::vector<std::uint32_t>& remaining, std::size_t current) {
    if (current > best) best = current;
    if (remaining.empty()) return;
    if (current + bound(remaining) <= best) return;
    const VertexSet& head = sets[remaining.front()];
    std::vector<std::uint32_t> with;
    with.reserve(remaining.size());
    for (std::size_t x = 1; x < remaining.size(); ++x) {
      if (!sets[remaining[x]].intersects(head)) with.push_back(remaining[x]);
    }
    solve(with, current + 1);
    std::vector<std::uint32_t> without(remaining.begin() + 1, remaining.end());
    solve(without, current);
  }
};

}  // namespace

std::size_t matching_number(std::span<const VertexSet> sets) {
  std::size_t empties = 0;
  std::vector<std::uint32_t> remaining;
  std::size_t min_size = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) {
      empties = 1;  // an empty set is disjoint from everything, count it once
      continue;
    }
    remaining.push_back(static_cast<std::uint32_t>(i));
    min_size = std::min(min_size, sets[i].count());
  }
  if (remaining.empty()) return empties;
  MatchingSolver solver{sets, min_size, 0};
  // greedy start
  VertexSet used(sets[remaining.front()].universe());
  for (std::uint32_t i : remaining) {
    if (!sets[i].intersects(used)) {
      used |= sets[i];
      ++solver.best;
    }
  }
  solver.solve(remaining, 0);
  return solver.best + empties;
}

std::size_t matching_number(const Hypergraph& h) { return matching_number(h.edges()); }

BigInt DegreeSpectrum::weighted_sum() const {
  BigInt total = 0;
  for (const auto& [s, c] : counts) total += BigInt(s) * c;
  return total;
}

std::uint64_t DegreeSpectrum::count(std::uint64_t s) const {
  const auto it = counts.find(s);
  return it == counts.end() ? 0 : it->second;
}

std::unordered_map<VertexSet, std::uint32_t, VertexSetHash> kset_degrees(const Hypergraph& h, std::uint32_t k) {
  require(k >= 1 && k <= h.r(), ErrorKind::BadParameters, "degree spectrum needs 1 <= k <= r");
  std::unordered_map<VertexSet, std::uint32_t, VertexSetHash> deg;
  for (const VertexSet& e : h.edges()) {
    for_each_k_subset(e, k, [&](const VertexSet& s) {
      ++deg[s];
      return true;
    });
  }
  return deg;
}

DegreeSpectrum degree_spectrum(const Hypergraph& h, std::uint32_t k) {
  DegreeSpectrum out;
  out.k = k;
  for (const auto& [set, d] : kset_degrees(h, k)) ++out.counts[d];
  BigInt touched = 0;
  for (const auto& [s, c] : out.counts) touched += c;
  out.zero_count = binomial_big(h.n(), k) - touched;
  return out;
}

std::vector<VertexSet> restricted_degree_sets(const Hypergraph& h, const VertexSet& x, std::uint32_t k,
                                              std::uint32_t s_min) {
  const auto deg = kset_degrees(h, k);
  std::vector<VertexSet> out;
  for_each_k_subset(x.resized(h.n()), k, [&](const VertexSet& s) {
    const auto it = deg.find(s);
    const std::uint32_t d = it == deg.end() ? 0 : it->second;
    if (d >= s_min) out.push_back(s);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::ordered_json witness_to_json(const PropertyWitness& w, std::span<const VertexSet> edges) {
  nlohmann::ordered_json doc;
  doc["property"] = to_string(w.property.kind);
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  if (w.property.t != 0) params["t"] = w.property.t;
  if (w.property.v != 0) params["v"] = w.property.v;
  if (w.property.e != 0) params["e"] = w.property.e;
  if (w.property.k != 0) params["k"] = w.property.k;
  if (w.property.ell != 0) params["ell"] = w.property.ell;
  doc["params"] = std::move(params);
  doc["holds"] = w.holds;
  if (w.holds) {
    doc["witness"] = nullptr;
    return doc;
  }
  nlohmann::ordered_json wit;
  const auto lists = [&](const std::vector<std::size_t>& idx) {
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t i : idx) {
      if (i < edges.size()) arr.push_back(edges[i].to_vector());
    }
    return arr;
  };
  if (w.property.kind == PropertyKind::UnionFree) {
    wit["family_a"] = w.family_a;
    wit["family_b"] = w.family_b;
    if (!edges.empty()) {
      wit["family_a_edges"] = lists(w.family_a);
      wit["family_b_edges"] = lists(w.family_b);
    }
  } else {
    wit["indices"] = w.edges;
    if (!edges.empty()) wit["edges"] = lists(w.edges);
  }
  if (w.kset) wit["kset"] = w.kset->to_vector();
  wit["reason"] = w.reason;
  doc["witness"] = std::move(wit);
  return doc;
}

}  // namespace hx
