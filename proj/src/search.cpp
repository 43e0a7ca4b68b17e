#include "hx/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <functional>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "hx/bigint.hpp"
#include "hx/error.hpp"
#include "hx/properties.hpp"

namespace hx {

std::string to_string(SearchKind k) {
  switch (k) {
    case SearchKind::Cancellative: return "cancellative";
    case SearchKind::UnionFree: return "union-free";
    case SearchKind::CoverFree: return "cover-free";
    case SearchKind::MatchingBounded: return "matching";
  }
  return "?";
}

std::string to_string(ProofStatus s) { return s == ProofStatus::Proved ? "proved" : "budget-stopped"; }

SearchKind parse_search_kind(const std::string& name) {
  if (name == "cancellative") return SearchKind::Cancellative;
  if (name == "union-free") return SearchKind::UnionFree;
  if (name == "cover-free") return SearchKind::CoverFree;
  if (name == "matching") return SearchKind::MatchingBounded;
  fail(ErrorKind::UsageError, "unknown search kind '" + name + "'");
}

namespace {

using Mask = std::uint64_t;
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Can `target` be covered by at most `budget` edges of `edges`, skipping two indices?
bool coverable(Mask target, const std::vector<Mask>& edges, std::size_t skip_a, std::size_t skip_b, std::uint32_t budget,
               std::uint32_t r) {
  if (target == 0) return true;
  if (budget == 0 || static_cast<std::uint64_t>(std::popcount(target)) > static_cast<std::uint64_t>(budget) * r) {
    return false;
  }
  const Mask low = target & (~target + 1);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i == skip_a || i == skip_b || (edges[i] & low) == 0) continue;
    if (coverable(target & ~edges[i], edges, skip_a, skip_b, budget - 1, r)) return true;
  }
  return false;
}

bool has_matching(const std::vector<Mask>& edges, std::size_t start, Mask used, std::uint32_t need) {
  if (need == 0) return true;
  if (edges.size() - start < need) return false;
  for (std::size_t i = start; i < edges.size(); ++i) {
    if ((edges[i] & used) == 0 && has_matching(edges, i + 1, used | edges[i], need - 1)) return true;
  }
  return false;
}

void subset_unions(const std::vector<Mask>& edges, std::size_t start, std::uint32_t left, Mask acc, std::uint32_t size,
                   const std::function<void(Mask, std::uint32_t)>& emit) {
  emit(acc, size);
  if (left == 0) return;
  for (std::size_t i = start; i < edges.size(); ++i) subset_unions(edges, i + 1, left - 1, acc | edges[i], size + 1, emit);
}

// Incremental checks: h is valid, does h + e stay valid? These do not call
// into `properties`, so the oracle comparison is between two implementations.
class Checker {
 public:
  Checker(SearchKind kind, std::uint32_t t, std::uint32_t r) : kind_(kind), t_(t), r_(r) {}

  bool compatible(const std::vector<Mask>& h, Mask e) const {
    switch (kind_) {
      case SearchKind::Cancellative: return cancellative(h, e);
      case SearchKind::CoverFree: return cover_free(h, e);
      case SearchKind::UnionFree: return union_free(h, e);
      case SearchKind::MatchingBounded: return matching(h, e);
    }
    return false;
  }

 private:
  SearchKind kind_;
  std::uint32_t t_, r_;

  bool cancellative(const std::vector<Mask>& h, Mask e) const {
    const std::size_t size = h.size() + 1;
    if (size < t_ + 2) return true;  // too few edges for a violation
    if (size == t_ + 2) {
      std::vector<Mask> all = h;
      all.push_back(e);
      for (std::size_t b = 0; b < all.size(); ++b) {
        for (std::size_t c = b + 1; c < all.size(); ++c) {
          if (coverable(all[b] ^ all[c], all, b, c, t_, r_)) return false;
        }
      }
      return true;
    }
    for (std::size_t c = 0; c < h.size(); ++c) {
      if (coverable(e ^ h[c], h, c, kNone, t_, r_)) return false;
    }
    for (std::size_t b = 0; b < h.size(); ++b) {
      for (std::size_t c = b + 1; c < h.size(); ++c) {
        if (coverable((h[b] ^ h[c]) & ~e, h, b, c, t_ - 1, r_)) return false;
      }
    }
    return true;
  }

  bool cover_free(const std::vector<Mask>& h, Mask e) const {
    if (coverable(e, h, kNone, kNone, t_, r_)) return false;
    for (std::size_t b = 0; b < h.size(); ++b) {
      if (coverable(h[b] & ~e, h, b, kNone, t_ - 1, r_)) return false;
    }
    return true;
  }

  bool union_free(const std::vector<Mask>& h, Mask e) const {
    // unions of old families (size 1..t) and of families through e
    std::unordered_map<Mask, std::uint32_t> old_unions;
    subset_unions(h, 0, t_, 0, 0, [&](Mask u, std::uint32_t size) {
      if (size >= 1) ++old_unions[u];
    });
    std::unordered_map<Mask, std::uint32_t> with_e;
    bool clash = false;
    subset_unions(h, 0, t_ - 1, 0, 0, [&](Mask u, std::uint32_t) {
      if (clash) return;
      const Mask x = u | e;
      if (old_unions.count(x) != 0 || with_e[x]++ != 0) clash = true;
    });
    return !clash;
  }

  bool matching(const std::vector<Mask>& h, Mask e) const {
    std::vector<Mask> disjoint;
    for (Mask m : h) {
      if ((m & e) == 0) disjoint.push_back(m);
    }
    return !has_matching(disjoint, 0, 0, t_);
  }
};

Mask to_mask(const VertexSet& s) {
  Mask m = 0;
  s.for_each([&](Vertex v) { m |= Mask{1} << v; });
  return m;
}

Hypergraph from_masks(std::uint32_t n, std::uint32_t r, const std::vector<Mask>& masks) {
  std::vector<VertexSet> edges;
  for (Mask m : masks) {
    VertexSet s(n);
    while (m != 0) {
      s.insert(static_cast<Vertex>(std::countr_zero(m)));
      m &= m - 1;
    }
    edges.push_back(std::move(s));
  }
  return Hypergraph::from_edges(n, r, std::move(edges));
}

void validate(const SearchProblem& p) {
  require(p.r >= 1, ErrorKind::BadParameters, "search needs r >= 1");
  require(p.n <= 64, ErrorKind::TooManyCandidates, "search supports n <= 64");
  if (p.kind != SearchKind::MatchingBounded) {
    require(p.t >= 1, ErrorKind::BadParameters, "search needs t >= 1");
  }
}

struct Shared {
  std::atomic<std::uint64_t> best{0};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> capped{false};
  std::uint64_t cap = 0;  // 0: none
  std::uint64_t node_budget = 0;
  double time_budget_s = 0;
  std::chrono::steady_clock::time_point start;
};

class Branch {
 public:
  Branch(const std::vector<Mask>& cands, const Checker& checker, Shared& shared)
      : cands_(cands), checker_(checker), shared_(shared) {}

  void run(std::vector<Mask> h, const std::vector<std::uint32_t>& pool) {
    record(h);
    dfs(h, pool);
  }

  std::vector<Mask> best_edges;
  std::uint64_t best_size = 0;

 private:
  const std::vector<Mask>& cands_;
  const Checker& checker_;
  Shared& shared_;

  void record(const std::vector<Mask>& h) {
    if (h.size() > best_size) {
      best_size = h.size();
      best_edges = h;
    }
    std::uint64_t cur = shared_.best.load();
    while (h.size() > cur && !shared_.best.compare_exchange_weak(cur, h.size())) {
    }
    if (shared_.cap != 0 && h.size() >= shared_.cap) {
      shared_.capped = true;
      shared_.stop = true;
    }
  }

  bool out_of_budget() {
    const std::uint64_t n = ++shared_.nodes;
    if (shared_.node_budget != 0 && n > shared_.node_budget) return true;
    if (shared_.time_budget_s > 0 && (n & 1023) == 0) {
      const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - shared_.start;
      if (dt.count() > shared_.time_budget_s) return true;
    }
    return false;
  }

  std::uint64_t bound(std::size_t current, std::size_t remaining) const {
    std::uint64_t b = current + remaining;
    if (shared_.cap != 0) b = std::min<std::uint64_t>(b, shared_.cap);
    return b;
  }

  void dfs(std::vector<Mask>& h, const std::vector<std::uint32_t>& pool) {
    if (shared_.stop) return;
    if (out_of_budget()) {
      shared_.stop = true;
      return;
    }
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (shared_.stop) return;
      // strict: an equal-size set cannot improve on a best found earlier
      if (bound(h.size(), pool.size() - i) <= shared_.best.load()) return;
      const Mask c = cands_[pool[i]];
      h.push_back(c);
      std::vector<std::uint32_t> next;
      next.reserve(pool.size() - i);
      for (std::size_t j = i + 1; j < pool.size(); ++j) {
        if (checker_.compatible(h, cands_[pool[j]])) next.push_back(pool[j]);
      }
      record(h);
      dfs(h, next);
      h.pop_back();
    }
  }
};

std::uint64_t closed_form_cap(const SearchProblem& p) {
  // 2(t'-1)-cancellative t'k-graphs: |H| <= C(n,k)/C(t'k-1,k-1)
  if (p.kind != SearchKind::Cancellative || p.t % 2 != 0) return 0;
  const std::uint32_t tp = p.t / 2 + 1;
  if (p.r % tp != 0) return 0;
  const std::uint32_t k = p.r / tp;
  if (k < 1 || p.n < k) return 0;
  const BigInt q = binomial_big(p.n, k) / binomial_big(p.r - 1, k - 1);
  return static_cast<std::uint64_t>(q);
}

}  // namespace

bool satisfies(const SearchProblem& p, const Hypergraph& h) {
  switch (p.kind) {
    case SearchKind::Cancellative: return is_t_cancellative(h, p.t).holds;
    case SearchKind::UnionFree: return is_t_union_free(h, p.t).holds;
    case SearchKind::CoverFree: return is_t_cover_free(h, p.t).holds;
    case SearchKind::MatchingBounded: return matching_number(h) <= p.t;
  }
  return false;
}

SearchResult extremal_search(const SearchProblem& p) {
  validate(p);
  const auto start = std::chrono::steady_clock::now();
  SearchResult result;
  result.witness = Hypergraph(p.n, p.r);
  const auto finish = [&] {
    result.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return result;
  };
  if (p.n < p.r) return finish();
  const std::uint64_t count = binomial(p.n, p.r);
  if (p.mode == SearchMode::Exact) {
    require(count <= p.candidate_limit, ErrorKind::TooManyCandidates,
            "C(" + std::to_string(p.n) + "," + std::to_string(p.r) + ") = " + std::to_string(count) +
                " candidate edges exceed the limit " + std::to_string(p.candidate_limit));
  }
  std::vector<Mask> cands;
  cands.reserve(count);
  for (const VertexSet& s : all_subsets_colex(p.n, p.r)) cands.push_back(to_mask(s));
  const Checker checker(p.kind, p.t, p.r);

  const Mask e0 = cands.front();
  if (!checker.compatible({}, e0)) {
    result.nodes = 1;
    return finish();  // no single edge is allowed, and all edges are alike
  }

  Shared shared;
  shared.best = 1;
  shared.cap = p.packing_bound ? closed_form_cap(p) : 0;
  shared.node_budget = p.node_budget;
  shared.time_budget_s = p.time_budget_s;
  shared.start = start;
  if (shared.cap == 1) shared.capped = true;

  // Second edge up to symmetry: R_j meets E0 in {0..j-1} and is otherwise
  // fresh; every other edge meets E0 in at most j vertices.
  struct Root {
    Mask second;
    std::vector<std::uint32_t> pool;
  };
  std::vector<Root> roots;
  for (std::uint32_t jj = p.r; jj-- > 0;) {
    const std::uint32_t j = jj;
    if (2 * p.r - j > p.n) continue;
    Mask rj = 0;
    for (std::uint32_t v = 0; v < j; ++v) rj |= Mask{1} << v;
    for (std::uint32_t v = p.r; v < 2 * p.r - j; ++v) rj |= Mask{1} << v;
    if (!checker.compatible({e0}, rj)) continue;
    Root root{rj, {}};
    const std::vector<Mask> base{e0, rj};
    for (std::uint32_t i = 0; i < cands.size(); ++i) {
      const Mask c = cands[i];
      if (c == e0 || c == rj || static_cast<std::uint32_t>(std::popcount(c & e0)) > j) continue;
      if (checker.compatible(base, c)) root.pool.push_back(i);
    }
    roots.push_back(std::move(root));
  }

  std::vector<Branch> branches;
  branches.reserve(roots.size());
  for (std::size_t i = 0; i < roots.size(); ++i) branches.emplace_back(cands, checker, shared);
  const auto run_branch = [&](std::size_t i) {
    if (shared.capped) return;
    branches[i].run({e0, roots[i].second}, roots[i].pool);
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(p.threads, static_cast<unsigned>(roots.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < roots.size(); ++i) run_branch(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned id = 0; id < threads; ++id) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < roots.size(); i = next++) run_branch(i);
      });
    }
    for (std::thread& th : pool) th.join();
  }

  std::vector<Mask> best_edges{e0};
  for (const Branch& b : branches) {
    if (b.best_size > best_edges.size()) best_edges = b.best_edges;
  }
  result.optimum = best_edges.size();
  result.witness = from_masks(p.n, p.r, best_edges);
  result.nodes = shared.nodes.load() + 1;
  const bool stopped_early = shared.stop && !shared.capped;
  result.status = stopped_early ? ProofStatus::BudgetStopped : ProofStatus::Proved;
  return finish();
}

std::uint64_t brute_force_oracle(const SearchProblem& p) {
  validate(p);
  if (p.n < p.r) return 0;
  const std::uint64_t count = binomial(p.n, p.r);
  require(count <= 24, ErrorKind::TooManyCandidates,
          "brute force needs C(n,r) <= 24, got " + std::to_string(count));
  const std::vector<VertexSet> cands = all_subsets_colex(p.n, p.r);
  std::uint64_t best = 0;
  std::vector<VertexSet> chosen;
  // extensions of a violating set are skipped: all four properties are hereditary
  const std::function<void(std::size_t)> walk = [&](std::size_t start) {
    best = std::max<std::uint64_t>(best, chosen.size());
    for (std::size_t i = start; i < cands.size(); ++i) {
      chosen.push_back(cands[i]);
      if (satisfies(p, Hypergraph::from_edges(p.n, p.r, chosen))) walk(i + 1);
      chosen.pop_back();
    }
  };
  walk(0);
  return best;
}

std::vector<MatchingRow> erdos_matching_table(std::uint32_t k, std::uint32_t t_max, const SearchProblem& scope) {
  require(k >= 2 && t_max >= 2, ErrorKind::BadParameters, "table needs k >= 2 and t_max >= 2");
  std::vector<MatchingRow> rows;
  for (std::uint32_t t = 2; t <= t_max; ++t) {
    MatchingRow row;
    row.t = t;
    row.k = k;
    row.n = (t - 1) * k;
    row.nu = t - 2;
    row.formula = binomial(row.n - 1, k);
    SearchProblem p = scope;
    p.kind = SearchKind::MatchingBounded;
    p.t = row.nu;
    p.n = row.n;
    p.r = k;
    const SearchResult r = extremal_search(p);
    row.searched = r.optimum;
    row.status = r.status;
    rows.push_back(row);
  }
  return rows;
}

nlohmann::ordered_json search_result_to_json(const SearchProblem& p, const SearchResult& r,
                                             const std::string& witness_file) {
  nlohmann::ordered_json doc;
  doc["kind"] = to_string(p.kind);
  nlohmann::ordered_json params;
  params[p.kind == SearchKind::MatchingBounded ? "nu_max" : "t"] = p.t;
  params["n"] = p.n;
  params["r"] = p.r;
  params["mode"] = p.mode == SearchMode::Exact ? "exact" : "lower-bound-only";
  params["node_budget"] = p.node_budget;
  params["packing_bound"] = p.packing_bound;
  doc["params"] = std::move(params);
  doc["optimum"] = r.optimum;
  doc["status"] = to_string(r.status);
  if (!witness_file.empty()) doc["witness_file"] = witness_file;
  doc["nodes"] = r.nodes;
  doc["elapsed_ms"] = r.elapsed_ms;
  return doc;
}

}  // namespace hx
