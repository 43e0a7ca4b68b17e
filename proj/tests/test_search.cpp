#include <gtest/gtest.h>

#include "hx/error.hpp"
#include "hx/properties.hpp"
#include "hx/search.hpp"
#include "test_support.hpp"

using namespace hx;
using hxtest::masks;

namespace {

SearchProblem problem(SearchKind kind, std::uint32_t t, std::uint32_t n, std::uint32_t r) {
  SearchProblem p;
  p.kind = kind;
  p.t = t;
  p.n = n;
  p.r = r;
  p.candidate_limit = 80;
  return p;
}

// Property of the witness, decided by the naive mask checkers.
bool naive_holds(const SearchProblem& p, const Hypergraph& h) {
  const auto e = masks(h);
  switch (p.kind) {
    case SearchKind::Cancellative:
      return hxtest::naive_cancellative(e, p.t);
    case SearchKind::UnionFree:
      return hxtest::naive_union_free(e, p.t);
    case SearchKind::CoverFree:
      return hxtest::naive_cover_free(e, p.t);
    case SearchKind::MatchingBounded:
      return hxtest::naive_matching(e) <= p.t;
  }
  return false;
}

std::uint64_t p_partite(std::uint64_t n, std::uint64_t r) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 0; i < r; ++i) out *= (n + i) / r;
  return out;
}

}  // namespace

TEST(Search, MantelAndBollobasValues) {
  for (std::uint32_t n : {4U, 5U, 6U, 7U}) {
    const SearchResult r = extremal_search(problem(SearchKind::Cancellative, 1, n, 2));
    EXPECT_EQ(r.status, ProofStatus::Proved);
    EXPECT_EQ(r.optimum, p_partite(n, 2)) << n;
    EXPECT_EQ(r.witness.size(), r.optimum);
    EXPECT_TRUE(naive_holds(problem(SearchKind::Cancellative, 1, n, 2), r.witness));
  }
  const SearchResult r = extremal_search(problem(SearchKind::Cancellative, 1, 6, 3));
  EXPECT_EQ(r.optimum, 8U);
  EXPECT_EQ(r.status, ProofStatus::Proved);
}

TEST(Search, MatchingExamples) {
  EXPECT_EQ(extremal_search(problem(SearchKind::MatchingBounded, 1, 4, 2)).optimum, 3U);
  EXPECT_EQ(extremal_search(problem(SearchKind::MatchingBounded, 2, 6, 2)).optimum, 10U);
  EXPECT_EQ(brute_force_oracle(problem(SearchKind::MatchingBounded, 2, 6, 2)), 10U);
  EXPECT_EQ(brute_force_oracle(problem(SearchKind::Cancellative, 1, 4, 2)), 4U);
  EXPECT_EQ(extremal_search(problem(SearchKind::MatchingBounded, 0, 5, 2)).optimum, 0U);
}

TEST(Search, SingleCandidate) {
  for (SearchKind kind :
       {SearchKind::Cancellative, SearchKind::UnionFree, SearchKind::CoverFree, SearchKind::MatchingBounded}) {
    EXPECT_EQ(brute_force_oracle(problem(kind, 1, 3, 3)), 1U);
    EXPECT_EQ(extremal_search(problem(kind, 1, 3, 3)).optimum, 1U);
  }
}

TEST(Search, AgreesWithOracle) {
  int instances = 0;
  for (SearchKind kind :
       {SearchKind::Cancellative, SearchKind::UnionFree, SearchKind::CoverFree, SearchKind::MatchingBounded}) {
    for (std::uint32_t r = 1; r <= 4; ++r) {
      for (std::uint32_t n = r; n <= 8; ++n) {
        if (binomial(n, r) > 20) continue;
        for (std::uint32_t t = 1; t <= 2; ++t) {
          const SearchProblem p = problem(kind, t, n, r);
          const SearchResult s = extremal_search(p);
          ASSERT_EQ(s.status, ProofStatus::Proved);
          ASSERT_EQ(s.optimum, brute_force_oracle(p)) << to_string(kind) << " t=" << t << " n=" << n << " r=" << r;
          ASSERT_EQ(s.witness.size(), s.optimum);
          EXPECT_TRUE(satisfies(p, s.witness));
          EXPECT_TRUE(naive_holds(p, s.witness));
          ++instances;
        }
      }
    }
  }
  EXPECT_GE(instances, 30);
}

TEST(Search, WitnessesPassCheckers) {
  for (std::uint32_t n = 5; n <= 7; ++n) {
    for (std::uint32_t t = 1; t <= 3; ++t) {
      const SearchResult c = extremal_search(problem(SearchKind::Cancellative, t, n, 3));
      EXPECT_TRUE(is_t_cancellative(c.witness, t).holds);
      const SearchResult u = extremal_search(problem(SearchKind::UnionFree, t, n, 3));
      EXPECT_TRUE(is_t_union_free(u.witness, t).holds);
      const SearchResult f = extremal_search(problem(SearchKind::CoverFree, t, n, 3));
      EXPECT_TRUE(is_t_cover_free(f.witness, t).holds);
      const SearchResult m = extremal_search(problem(SearchKind::MatchingBounded, t, n, 3));
      EXPECT_LE(matching_number(m.witness), t);
    }
  }
}

TEST(Search, CoverUnionSandwich) {
  for (std::uint32_t r = 2; r <= 3; ++r) {
    for (std::uint32_t n = r + 1; n <= 7; ++n) {
      for (std::uint32_t t = 2; t <= 3; ++t) {
        const auto f_t = extremal_search(problem(SearchKind::CoverFree, t, n, r)).optimum;
        const auto u_t = extremal_search(problem(SearchKind::UnionFree, t, n, r)).optimum;
        const auto f_prev = extremal_search(problem(SearchKind::CoverFree, t - 1, n, r)).optimum;
        EXPECT_LE(f_t, u_t);
        EXPECT_LE(u_t, f_prev);
      }
    }
  }
}

TEST(Search, MonotoneInN) {
  for (SearchKind kind :
       {SearchKind::Cancellative, SearchKind::UnionFree, SearchKind::CoverFree, SearchKind::MatchingBounded}) {
    std::uint64_t last = 0;
    for (std::uint32_t n = 3; n <= 7; ++n) {
      const auto v = extremal_search(problem(kind, 2, n, 3)).optimum;
      EXPECT_GE(v, last);
      last = v;
    }
  }
}

TEST(Search, CancellativeUpperBound) {
  const std::vector<std::uint64_t> expected{1, 3, 3, 4, 5};
  for (std::uint32_t n = 4; n <= 8; ++n) {
    const SearchResult r = extremal_search(problem(SearchKind::Cancellative, 2, n, 4));
    EXPECT_EQ(r.status, ProofStatus::Proved);
    EXPECT_EQ(r.optimum, expected[n - 4]);
    EXPECT_LE(Rational(r.optimum), Rational(binomial(n, 2), 3));
  }
  for (std::uint32_t n = 6; n <= 8; ++n) {
    const SearchResult r = extremal_search(problem(SearchKind::Cancellative, 2, n, 6));
    EXPECT_LE(Rational(r.optimum), Rational(binomial(n, 3), 10));
  }
}

TEST(Search, PackingBoundKeepsTheOptimum) {
  for (std::uint32_t n = 4; n <= 8; ++n) {
    SearchProblem p = problem(SearchKind::Cancellative, 2, n, 4);
    const auto plain = extremal_search(p);
    p.packing_bound = true;
    const auto bounded = extremal_search(p);
    EXPECT_EQ(plain.optimum, bounded.optimum);
    EXPECT_LE(bounded.nodes, plain.nodes);
  }
}

TEST(Search, ThreadsDoNotChangeTheOptimum) {
  SearchProblem p = problem(SearchKind::Cancellative, 1, 7, 2);
  const auto one = extremal_search(p);
  p.threads = 3;
  const auto three = extremal_search(p);
  EXPECT_EQ(one.optimum, three.optimum);
  EXPECT_TRUE(satisfies(p, three.witness));
}

TEST(Search, BudgetStop) {
  SearchProblem p = problem(SearchKind::Cancellative, 1, 7, 2);
  p.node_budget = 5;
  const SearchResult r = extremal_search(p);
  EXPECT_EQ(r.status, ProofStatus::BudgetStopped);
  EXPECT_LE(r.optimum, 12U);
  EXPECT_EQ(r.witness.size(), r.optimum);
  EXPECT_TRUE(satisfies(p, r.witness));
}

TEST(Search, CandidateLimit) {
  SearchProblem p = problem(SearchKind::Cancellative, 1, 10, 4);
  try {
    extremal_search(p);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::TooManyCandidates);
  }
  p.mode = SearchMode::LowerBoundOnly;
  p.node_budget = 2000;
  const SearchResult r = extremal_search(p);
  EXPECT_EQ(r.status, ProofStatus::BudgetStopped);
  EXPECT_GT(r.optimum, 0U);
  EXPECT_TRUE(is_t_cancellative(r.witness, 1).holds);
  EXPECT_THROW(brute_force_oracle(problem(SearchKind::Cancellative, 1, 8, 2)), Error);
}

TEST(Search, ErdosMatchingTable) {
  const auto rows = erdos_matching_table(2, 4);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0].n, 2U);
  EXPECT_EQ(rows[0].formula, 0U);
  EXPECT_EQ(rows[0].searched, 0U);
  EXPECT_EQ(rows[1].n, 4U);
  EXPECT_EQ(rows[1].nu, 1U);
  EXPECT_EQ(rows[1].formula, 3U);
  EXPECT_EQ(rows[1].searched, 3U);
  EXPECT_EQ(rows[2].n, 6U);
  EXPECT_EQ(rows[2].formula, 10U);
  EXPECT_EQ(rows[2].searched, 10U);
  for (const auto& row : rows) EXPECT_EQ(row.status, ProofStatus::Proved);
  const auto k3 = erdos_matching_table(3, 3);
  EXPECT_EQ(k3[0].formula, 0U);
  EXPECT_EQ(k3[0].searched, 0U);
  EXPECT_EQ(k3[1].formula, 10U);
  EXPECT_EQ(k3[1].searched, 10U);
}

TEST(Search, JsonShape) {
  const SearchProblem p = problem(SearchKind::Cancellative, 1, 5, 2);
  const auto doc = search_result_to_json(p, extremal_search(p), "w.hg");
  EXPECT_EQ(doc["kind"], "cancellative");
  EXPECT_EQ(doc["optimum"], 6);
  EXPECT_EQ(doc["status"], "proved");
  EXPECT_EQ(doc["witness_file"], "w.hg");
  EXPECT_TRUE(doc.contains("nodes"));
  EXPECT_TRUE(doc.contains("elapsed_ms"));
  EXPECT_EQ(parse_search_kind("matching"), SearchKind::MatchingBounded);
  EXPECT_THROW(parse_search_kind("nonsense"), Error);
}
