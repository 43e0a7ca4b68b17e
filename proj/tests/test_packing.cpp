#include <gtest/gtest.h>

#include <random>

#include "hx/configurations.hpp"
#include "hx/error.hpp"
#include "hx/packing.hpp"
#include "hx/properties.hpp"
#include "test_support.hpp"

using namespace hx;
using hxtest::graph;
using hxtest::set_of;

namespace {

// Template used throughout: the 4-vertex matching {0,2},{1,3}.
Hypergraph two_edges() { return graph(4, 2, {{0, 2}, {1, 3}}); }

Hypergraph complete(std::uint32_t m, std::uint32_t k) { return Hypergraph::from_edges(m, k, all_subsets_colex(m, k)); }

// Every edge blue, every other k-subset of the vertex set red; checked from scratch.
bool audit_pattern(const PackedCopy& c, const Coloring& col, std::uint32_t k) {
  bool ok = true;
  for_each_k_subset(c.vertices, k, [&](const VertexSet& s) {
    const bool edge = std::find(c.edges.begin(), c.edges.end(), s) != c.edges.end();
    ok = edge ? col.is_blue(s) : col.is_red(s);
    return ok;
  });
  return ok;
}

// Independent ℓ⁻ scan over {candidate} plus every (ℓ−1)-subset of accepted vertex sets.
std::optional<std::uint32_t> brute_conflict_ell(const PackedCopy& cand, const PackingRecord& rec, std::uint32_t e,
                                                std::uint32_t m, std::uint32_t k) {
  std::vector<std::size_t> all(rec.copies.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  const auto base = hxtest::to_mask(cand.vertices);
  for (std::uint32_t ell = 2; ell <= e; ++ell) {
    bool found = false;
    hxtest::each_subset(all, ell - 1, [&](const std::vector<std::size_t>& pick) {
      hxtest::Mask u = base;
      for (std::size_t i : pick) u |= hxtest::to_mask(rec.copies[i].vertices);
      found = std::popcount(u) <= ell_minus_threshold(m, k, ell);
      return !found;
    });
    if (found) return ell;
  }
  return std::nullopt;
}

PackingOptions options(std::uint32_t n, std::uint32_t k, std::uint32_t e, std::uint64_t seed) {
  PackingOptions o;
  o.n = n;
  o.k = k;
  o.e = e;
  o.seed = seed;
  o.budget = 3000;
  return o;
}

}  // namespace

TEST(Coloring, ExtremeEpsilons) {
  const Coloring blue(12, 2, Rational(0), 1);
  const Coloring red(12, 2, Rational(1), 1);
  for (const VertexSet& s : all_subsets_colex(12, 2)) {
    EXPECT_TRUE(blue.is_blue(s));
    EXPECT_TRUE(red.is_red(s));
  }
  EXPECT_THROW(Coloring(5, 2, Rational(3, 2), 1), Error);
  EXPECT_THROW(Coloring(5, 2, Rational(-1, 2), 1), Error);
}

TEST(Coloring, RepeatableAndSeedDependent) {
  const Coloring a = color_ksets(200, 2, Rational(1, 2), 1);
  const Coloring b = color_ksets(200, 2, Rational(1, 2), 2);
  int differ = 0, red = 0, queried = 0;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10000; ++i) {
    const Vertex x = static_cast<Vertex>(rng() % 200);
    const Vertex y = static_cast<Vertex>(rng() % 200);
    if (x == y) continue;
    const VertexSet s = set_of(200, {x, y});
    ++queried;
    EXPECT_EQ(a.is_red(s), a.is_red(s));
    differ += a.is_red(s) != b.is_red(s) ? 1 : 0;
    red += a.is_red(s) ? 1 : 0;
  }
  EXPECT_GT(differ, queried / 4);
  EXPECT_NEAR(static_cast<double>(red) / queried, 0.5, 0.05);
}

TEST(Placements, HostSmallerThanTemplate) {
  const Coloring col(3, 2, Rational(0), 1);
  const CandidateStream s = find_placements_greedy(two_edges(), col, 3, PackingStrategy::DirectGreedy, 100, 1);
  EXPECT_TRUE(s.placements.empty());
  PackingOptions o = options(3, 2, 2, 1);
  EXPECT_TRUE(greedy_conflict_free_packing(two_edges(), o).record.empty());
}

TEST(Placements, CompleteTemplateWithoutRedAlwaysQualifies) {
  const Coloring col(9, 2, Rational(0), 5);
  const CandidateStream s = find_placements_greedy(complete(4, 2), col, 9, PackingStrategy::FaithfulColoring, 500, 3);
  EXPECT_EQ(s.samples, 500U);
  EXPECT_EQ(s.placements.size(), 500U);
}

TEST(Placements, FaithfulYieldsMatchThePattern) {
  // four red non-edges and two blue edges: about 1 in 64 placements at epsilon 1/2
  const Coloring col(15, 2, Rational(1, 2), 7);
  const CandidateStream s = find_placements_greedy(two_edges(), col, 15, PackingStrategy::FaithfulColoring, 20000, 4, 100);
  ASSERT_EQ(s.placements.size(), 100U);
  for (const auto& c : s.placements) {
    EXPECT_TRUE(audit_pattern(c, col, 2));
    EXPECT_TRUE(matches_pattern(c, col));
  }
}

TEST(Placements, TransportFollowsTheBijection) {
  const std::vector<Vertex> b{7, 3, 5, 1};
  const PackedCopy c = transport(two_edges(), b, 10);
  EXPECT_EQ(c.vertices, set_of(10, {1, 3, 5, 7}));
  std::vector<VertexSet> edges = c.edges;
  std::sort(edges.begin(), edges.end());
  const std::vector<VertexSet> expected{set_of(10, {1, 3}), set_of(10, {5, 7})};
  EXPECT_EQ(edges, expected);
}

TEST(Conflicts, DisjointCandidateIsFree) {
  PackingRecord rec{12, 2, "J", {}, {}};
  rec.copies.push_back(transport(two_edges(), std::vector<Vertex>{0, 1, 2, 3}, 12));
  const PackedCopy cand = transport(two_edges(), std::vector<Vertex>{4, 5, 6, 7}, 12);
  EXPECT_FALSE(conflicts_with(cand, rec, 4, 4, 2).has_value());
}

TEST(Conflicts, SharingKPlusOneVertices) {
  PackingRecord rec{12, 2, "J", {}, {}};
  rec.copies.push_back(transport(two_edges(), std::vector<Vertex>{0, 1, 2, 3}, 12));
  // shares {0,1,3} but no edge: union of 5 vertices is at most 2m-k-1 = 5
  const PackedCopy cand = transport(two_edges(), std::vector<Vertex>{0, 3, 1, 8}, 12);
  const auto c = conflicts_with(cand, rec, 2, 4, 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->reason, ConflictReason::VertexOverlap);
  EXPECT_EQ(c->copies, std::vector<std::size_t>{0});
}

TEST(Conflicts, SharedEdgeAndEdgeInIntersection) {
  PackingRecord rec{12, 2, "J", {}, {}};
  rec.copies.push_back(transport(two_edges(), std::vector<Vertex>{0, 1, 2, 3}, 12));
  const PackedCopy same_edge = transport(two_edges(), std::vector<Vertex>{0, 8, 2, 9}, 12);
  EXPECT_EQ(conflicts_with(same_edge, rec, 2, 4, 2)->reason, ConflictReason::EdgeOverlap);
  // meets copy 0 in {0,2}, an edge of copy 0, without reusing it
  const PackedCopy touching = transport(two_edges(), std::vector<Vertex>{0, 2, 8, 9}, 12);
  const auto c = conflicts_with(touching, rec, 2, 4, 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->reason, ConflictReason::EdgeInIntersection);
  EXPECT_EQ(*c->kset, set_of(12, {0, 2}));
}

TEST(Conflicts, ThreeCopyConfiguration) {
  PackingRecord rec{8, 2, "J", {}, {}};
  rec.copies.push_back(transport(two_edges(), std::vector<Vertex>{0, 1, 2, 3}, 8));
  rec.copies.push_back(transport(two_edges(), std::vector<Vertex>{2, 4, 5, 3}, 8));
  EXPECT_TRUE(is_induced_packing(rec, 2).holds);
  const PackedCopy cand = transport(two_edges(), std::vector<Vertex>{4, 0, 1, 5}, 8);
  EXPECT_FALSE(conflicts_with(cand, rec, 2, 4, 2).has_value());
  const auto c = conflicts_with(cand, rec, 3, 4, 2);
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->reason, ConflictReason::EllMinus);
  EXPECT_EQ(c->ell, 3U);
  EXPECT_EQ(c->copies, (std::vector<std::size_t>{0, 1}));
  const std::vector<VertexSet> sets{rec.copies[0].vertices, rec.copies[1].vertices, cand.vertices};
  EXPECT_EQ(union_size(sets), 6U);
  EXPECT_LE(6, ell_minus_threshold(4, 2, 3));
  const std::vector<std::size_t> idx{0, 1, 2};
  EXPECT_TRUE(is_minimal_ell_minus(sets, idx, 4, 2));
  EXPECT_EQ(brute_conflict_ell(cand, rec, 3, 4, 2), std::optional<std::uint32_t>(3));
}

TEST(Conflicts, LocalSearchAgreesWithExhaustiveScan) {
  // Random accepted packings; random candidates that pass (a) and (b). The
  // ℓ⁻ verdict of the local search must match an exhaustive tuple scan.
  int compared = 0, conflicts = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    PackingOptions o = options(11, 2, 4, seed);
    o.budget = 400;
    o.search_node_cap = std::numeric_limits<std::uint64_t>::max();
    const PackingRecord rec = greedy_conflict_free_packing(two_edges(), o).record;
    PlacementSampler sampler(two_edges(), 11, seed_substream(seed, "test", "candidates"));
    for (int i = 0; i < 300; ++i) {
      const PackedCopy cand = sampler.next();
      const auto c = conflicts_with(cand, rec, 4, 4, 2);
      if (c && c->reason != ConflictReason::EllMinus) continue;
      const auto brute = brute_conflict_ell(cand, rec, 4, 4, 2);
      ++compared;
      ASSERT_EQ(c.has_value(), brute.has_value());
      if (c) {
        ++conflicts;
        EXPECT_EQ(c->ell, *brute);
        std::vector<VertexSet> sets;
        for (std::size_t j : c->copies) sets.push_back(rec.copies[j].vertices);
        sets.push_back(cand.vertices);
        std::vector<std::size_t> idx(sets.size());
        std::iota(idx.begin(), idx.end(), std::size_t{0});
        EXPECT_TRUE(is_minimal_ell_minus(sets, idx, 4, 2));
      }
    }
  }
  EXPECT_GT(compared, 100);
  EXPECT_GT(conflicts, 10);
}

TEST(Packing, OutputsAreInducedAndEllMinusFree) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    for (PackingStrategy strategy : {PackingStrategy::DirectGreedy, PackingStrategy::FaithfulColoring}) {
      PackingOptions o = options(20, 2, 4, seed);
      o.strategy = strategy;
      // the faithful pattern needs four red pairs, too rare at the default epsilon
      o.epsilon = strategy == PackingStrategy::FaithfulColoring ? Rational(1, 2) : default_packing_epsilon(4, 2);
      const PackingResult res = greedy_conflict_free_packing(two_edges(), o);
      ASSERT_FALSE(res.record.empty());
      EXPECT_TRUE(is_induced_packing(res.record, 2).holds);
      const auto sets = res.record.vertex_sets();
      const auto masks = [&] {
        std::vector<hxtest::Mask> out;
        for (const auto& s : sets) out.push_back(hxtest::to_mask(s));
        return out;
      }();
      for (std::uint32_t ell = 2; ell <= 4; ++ell) {
        EXPECT_TRUE(hxtest::naive_ve_free(masks, static_cast<std::uint32_t>(ell_minus_threshold(4, 2, ell)), ell));
      }
      if (strategy == PackingStrategy::FaithfulColoring) {
        EXPECT_EQ(res.stats.rejected.count(to_string(ConflictReason::EdgeInIntersection)), 0U);
        const Coloring col(20, 2, o.epsilon, substream_key(seed, {"packing", "coloring"}));
        for (const auto& c : res.record.copies) EXPECT_TRUE(audit_pattern(c, col, 2));
      }
    }
  }
}

TEST(Packing, SingleEdgeTemplateGivesDistinctKSets) {
  PackingOptions o = options(10, 2, 3, 9);
  o.budget = 2000;
  const PackingResult res = greedy_conflict_free_packing(graph(2, 2, {{0, 1}}), o);
  std::set<VertexSet> seen;
  for (const auto& c : res.record.copies) {
    ASSERT_EQ(c.edges.size(), 1U);
    EXPECT_EQ(c.edges[0], c.vertices);
    EXPECT_TRUE(seen.insert(c.vertices).second);
  }
  EXPECT_EQ(res.record.size(), 45U);
}

TEST(Packing, DensityIsNondecreasingInBudget) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Rational last = 0;
    for (std::uint64_t budget : {250, 500, 1000, 2000, 4000}) {
      PackingOptions o = options(30, 2, 4, seed);
      o.budget = budget;
      const PackingResult res = greedy_conflict_free_packing(two_edges(), o);
      const Rational d = packing_density(res.record, 30, 2, 2);
      EXPECT_GE(d, last);
      last = d;
    }
  }
}

TEST(Packing, DensityExamples) {
  PackingRecord empty{10, 2, "J", {}, {}};
  EXPECT_EQ(packing_density(empty, 10, 2, 2), 0);
  // K4 decomposes into three perfect matchings.
  PackingRecord full{4, 2, "J", {}, {}};
  full.copies.push_back(transport(two_edges(), std::vector<Vertex>{0, 1, 2, 3}, 4));
  full.copies.push_back(transport(two_edges(), std::vector<Vertex>{0, 2, 1, 3}, 4));
  full.copies.push_back(transport(two_edges(), std::vector<Vertex>{0, 1, 3, 2}, 4));
  EXPECT_EQ(packing_density(full, 4, 2, 2), 1);
}

TEST(Packing, Deterministic) {
  PackingOptions o = options(25, 2, 4, 77);
  const PackingResult a = greedy_conflict_free_packing(two_edges(), o);
  const PackingResult b = greedy_conflict_free_packing(two_edges(), o);
  EXPECT_EQ(packing_to_json(a.record).dump(), packing_to_json(b.record).dump());
}

TEST(Packing, TargetCountAndBudgetFlag) {
  PackingOptions o = options(25, 2, 4, 3);
  o.target_count = 5;
  const PackingResult a = greedy_conflict_free_packing(two_edges(), o);
  EXPECT_EQ(a.record.size(), 5U);
  EXPECT_TRUE(a.record.flags.empty());
  o.target_count = 100000;
  o.budget = 50;
  const PackingResult b = greedy_conflict_free_packing(two_edges(), o);
  EXPECT_TRUE(b.stats.budget_exhausted);
  EXPECT_EQ(b.record.flags, std::vector<std::string>{"budget-exhausted"});
}

TEST(Packing, JsonRoundTrip) {
  const PackingResult a = greedy_conflict_free_packing(two_edges(), options(20, 2, 4, 5));
  const PackingRecord back = packing_from_json(nlohmann::json::parse(packing_to_json(a.record).dump()));
  EXPECT_EQ(packing_to_json(back).dump(), packing_to_json(a.record).dump());
}

TEST(Packing, DefaultEpsilon) { EXPECT_EQ(default_packing_epsilon(6, 2), Rational(1, 16)); }

TEST(Diagnostics, CompleteTemplateDegrees) {
  const std::uint32_t n = 7, m = 4, k = 2;
  const Coloring col(n, k, Rational(0), 1);
  const DegreeDiagnostics d = degree_diagnostics(complete(m, k), col);
  EXPECT_TRUE(d.exhaustive);
  EXPECT_EQ(d.placements, binomial(n, m));
  EXPECT_EQ(d.blue_ksets, binomial(n, k));
  EXPECT_EQ(d.min_degree, binomial(n - k, m - k));
  EXPECT_EQ(d.max_degree, binomial(n - k, m - k));
  EXPECT_DOUBLE_EQ(d.max_over_mean, 1.0);
}

TEST(Diagnostics, AllRedHasNoPlacements) {
  const Coloring col(7, 2, Rational(1), 1);
  const DegreeDiagnostics d = degree_diagnostics(two_edges(), col);
  EXPECT_EQ(d.placements, 0U);
  EXPECT_EQ(d.blue_ksets, 0U);
  EXPECT_EQ(d.max_degree, 0U);
  const auto j = diagnostics_to_json(d);
  EXPECT_TRUE(j.contains("mean_degree"));
  EXPECT_TRUE(j.contains("max_over_mean"));
}
