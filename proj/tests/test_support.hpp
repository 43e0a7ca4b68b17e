#pragma once

// Shared helpers for the test suites. The naive_* checkers work on 64-bit
// masks straight from the definitions and share no code with the library.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "hx/hypergraph.hpp"

namespace hxtest {

using Mask = std::uint64_t;

inline Mask to_mask(const hx::VertexSet& s) {
  Mask m = 0;
  s.for_each([&](hx::Vertex v) { m |= Mask{1} << v; });
  return m;
}

inline std::vector<Mask> masks(const hx::Hypergraph& h) {
  std::vector<Mask> out;
  for (const auto& e : h.edges()) out.push_back(to_mask(e));
  return out;
}

inline hx::VertexSet set_of(std::uint32_t n, std::initializer_list<hx::Vertex> vs) { return hx::VertexSet(n, vs); }

inline hx::Hypergraph graph(std::uint32_t n, std::uint32_t r, const std::vector<std::vector<hx::Vertex>>& edges) {
  return hx::canonicalize(edges, n, r);
}

// Calls fn(chosen) for every k-subset of `pool`; fn returns false to stop.
template <class Fn>
bool each_subset(const std::vector<std::size_t>& pool, std::size_t k, Fn&& fn) {
  std::vector<std::size_t> pick;
  std::vector<std::size_t> idx(k);
  if (k > pool.size()) return true;
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    pick.clear();
    for (std::size_t i : idx) pick.push_back(pool[i]);
    if (!fn(pick)) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == pool.size() - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline Mask union_of(const std::vector<Mask>& e, const std::vector<std::size_t>& pick) {
  Mask u = 0;
  for (std::size_t i : pick) u |= e[i];
  return u;
}

// t distinct other edges cover BΔC; vacuous with fewer than t+2 edges.
inline bool naive_cancellative(const std::vector<Mask>& e, std::uint32_t t) {
  if (e.size() < t + 2) return true;
  for (std::size_t b = 0; b < e.size(); ++b) {
    for (std::size_t c = b + 1; c < e.size(); ++c) {
      std::vector<std::size_t> others;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i != b && i != c) others.push_back(i);
      }
      const Mask diff = e[b] ^ e[c];
      bool bad = false;
      each_subset(others, t, [&](const std::vector<std::size_t>& pick) {
        bad = (diff & ~union_of(e, pick)) == 0;
        return !bad;
      });
      if (bad) return false;
    }
  }
  return true;
}

// B inside the union of at most t other edges.
inline bool naive_cover_free(const std::vector<Mask>& e, std::uint32_t t) {
  for (std::size_t b = 0; b < e.size(); ++b) {
    std::vector<std::size_t> others;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != b) others.push_back(i);
    }
    for (std::size_t s = 1; s <= t && s <= others.size(); ++s) {
      bool bad = false;
      each_subset(others, s, [&](const std::vector<std::size_t>& pick) {
        bad = (e[b] & ~union_of(e, pick)) == 0;
        return !bad;
      });
      if (bad) return false;
    }
  }
  return true;
}

// Two distinct nonempty subfamilies of at most t edges with equal unions.
inline bool naive_union_free(const std::vector<Mask>& e, std::uint32_t t) {
  std::vector<std::size_t> all(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) all[i] = i;
  std::vector<Mask> unions;
  for (std::size_t s = 1; s <= t && s <= e.size(); ++s) {
    each_subset(all, s, [&](const std::vector<std::size_t>& pick) {
      unions.push_back(union_of(e, pick));
      return true;
    });
  }
  std::sort(unions.begin(), unions.end());
  return std::adjacent_find(unions.begin(), unions.end()) == unions.end();
}

// Every e distinct edges span at least v+1 vertices.
inline bool naive_ve_free(const std::vector<Mask>& sets, std::uint32_t v, std::uint32_t e) {
  std::vector<std::size_t> all(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) all[i] = i;
  bool ok = true;
  each_subset(all, e, [&](const std::vector<std::size_t>& pick) {
    ok = std::popcount(union_of(sets, pick)) >= static_cast<int>(v) + 1;
    return ok;
  });
  return ok;
}

inline std::size_t naive_matching(const std::vector<Mask>& e) {
  std::size_t best = 0;
  const auto go = [&](auto&& self, std::size_t i, Mask used, std::size_t size) -> void {
    best = std::max(best, size);
    for (std::size_t j = i; j < e.size(); ++j) {
      if ((e[j] & used) == 0) self(self, j + 1, used | e[j], size + 1);
    }
  };
  go(go, 0, 0, 0);
  return best;
}

// m distinct uniformly random r-subsets of [n] (m is clamped to C(n, r)).
inline hx::Hypergraph random_hypergraph(std::mt19937_64& rng, std::uint32_t n, std::uint32_t r, std::size_t m) {
  const std::vector<hx::VertexSet> all = hx::all_subsets_colex(n, r);
  std::vector<std::size_t> idx(all.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(std::min(m, idx.size()));
  std::vector<hx::VertexSet> edges;
  for (std::size_t i : idx) edges.push_back(all[i]);
  return hx::Hypergraph::from_edges(n, r, std::move(edges));
}

inline std::uint32_t pick(std::mt19937_64& rng, std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng);
}

}  // namespace hxtest
