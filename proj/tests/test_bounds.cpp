#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hx/bounds.hpp"
#include "hx/constructions.hpp"
#include "hx/error.hpp"
#include "hx/search.hpp"
#include "test_support.hpp"

using namespace hx;
using hxtest::graph;

namespace {

void expect_certificate_passes(const CertificateReport& c) {
  EXPECT_TRUE(c.identity_holds);
  EXPECT_EQ(c.identity_lhs, c.identity_rhs);
  EXPECT_EQ(c.claim_premise, c.edges >= 2 * static_cast<std::size_t>(c.t));
  if (c.claim_premise) {
    EXPECT_EQ(c.claim_counterexamples, 0U);
    EXPECT_TRUE(c.lower_holds);
  }
  EXPECT_TRUE(c.counts_agree);
  EXPECT_TRUE(c.upper_holds);
  EXPECT_TRUE(c.excess_holds);
  EXPECT_TRUE(c.final_bound_holds);
  EXPECT_LE(c.density_ratio, 1);
}

}  // namespace

TEST(Bounds, BalancedPartite) {
  EXPECT_EQ(balanced_partite_count(5, 2), 6);
  EXPECT_EQ(balanced_partite_count(6, 3), 8);
  for (std::uint64_t r = 1; r <= 6; ++r) EXPECT_EQ(balanced_partite_count(r, r), 1);
  EXPECT_THROW(balanced_partite_count(2, 3), Error);
}

TEST(Bounds, LimitValues) {
  EXPECT_EQ(limit_value(2, 2), Rational(1, 6));
  EXPECT_EQ(limit_value(3, 2), Rational(1, 10));
  EXPECT_EQ(limit_value(2, 3), Rational(1, 60));
  EXPECT_THROW(limit_value(1, 2), Error);
  EXPECT_THROW(limit_value(2, 1), Error);
}

TEST(Bounds, BinomialIdentity) {
  for (std::uint64_t t = 2; t <= 12; ++t) {
    for (std::uint64_t k = 2; k <= 12; ++k) {
      EXPECT_EQ(binomial_big(t * k, k), t * binomial_big(t * k - 1, k - 1)) << t << "," << k;
    }
  }
}

TEST(Bounds, TableForTwoCancellativeFourGraphs) {
  const BoundsTable table = closed_form_bounds(2, 4, 100);
  ASSERT_TRUE(table.k.has_value());
  EXPECT_EQ(*table.k, 2U);
  EXPECT_EQ(table.find("c2_upper")->value, Rational(1650));
  EXPECT_EQ(table.find("cancellative_upper")->value, Rational(1650));
  EXPECT_EQ(table.find("cancellative_limit")->value, Rational(1, 6));
  EXPECT_EQ(table.find("union_free_limit")->value, Rational(1, 6));
  EXPECT_EQ(table.find("gamma")->value, Rational(1, 6));
  const BoundsRow* chain = table.find("union_free_upper_main");
  EXPECT_EQ(chain->value, Rational(10000, 6));
  EXPECT_NE(chain->note.find("o-term"), std::string::npos);
  EXPECT_EQ(table.find("c1_lower_random")->value, Rational(7, 25) / 16 * Rational(binomial(100, 4)));
  EXPECT_EQ(table.find("c1_lower_partite")->value, Rational(25 * 25 * 25 * 25));
  EXPECT_EQ(table.find("nonexistent"), nullptr);
}

TEST(Bounds, OutOfRangeRowsAreOmittedWithoutValue) {
  const BoundsTable table = closed_form_bounds(2, 5, 50);
  EXPECT_FALSE(table.k.has_value());
  const BoundsRow* gamma = table.find("gamma");
  ASSERT_NE(gamma, nullptr);
  EXPECT_FALSE(gamma->value.has_value());
  EXPECT_NE(gamma->note.find("unknown"), std::string::npos);
  const BoundsRow* c2 = table.find("c2_upper");
  ASSERT_NE(c2, nullptr);
  EXPECT_FALSE(c2->value.has_value());
  EXPECT_EQ(c2->note.rfind("omitted", 0), 0U);
}

TEST(Bounds, LowerRowsNeverExceedUpperRows) {
  for (std::uint32_t t = 1; t <= 6; ++t) {
    for (std::uint32_t r = 1; r <= 12; ++r) {
      for (std::uint64_t n : {12ULL, 40ULL, 1000ULL}) {
        const BoundsTable table = closed_form_bounds(t, r, n);
        const auto pair = [&](const char* lo, const char* hi) {
          const BoundsRow* a = table.find(lo);
          const BoundsRow* b = table.find(hi);
          if (a && b && a->value && b->value) {
            EXPECT_LE(*a->value, *b->value) << lo << " t=" << t << " r=" << r;
          }
        };
        pair("ft_exponent", "ft_minus1_exponent");
        pair("ct_exponent_lower", "ct_exponent_upper");
        pair("c1_lower_random", "c1_upper");
        pair("cancellative_lower_target", "cancellative_upper");
      }
    }
  }
}

TEST(Bounds, Csv) {
  const BoundsTable table = closed_form_bounds(2, 4, 100);
  const std::string csv = bounds_to_csv(table, {"hx 0.1.0 seed=0"});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# hx 0.1.0 seed=0");
  std::getline(in, line);
  EXPECT_EQ(line, "name,anchor,numerator,denominator,note");
  EXPECT_NE(csv.find("\nc2_upper,two-cancellative-upper,1650,1,"), std::string::npos);
  EXPECT_NE(csv.find("\ncancellative_limit,cancellative-limit,1,6,"), std::string::npos);
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, table.rows.size());
  const std::string omitted = bounds_to_csv(closed_form_bounds(2, 5, 10));
  EXPECT_NE(omitted.find("\nc2_upper,two-cancellative-upper,,,omitted"), std::string::npos);
}

TEST(Bounds, DensityRatio) {
  EXPECT_EQ(density_ratio(Hypergraph(10, 4), 10, 2, 2), 0);
  // C(6,2)/3 = 5 edges on 6 vertices
  std::mt19937_64 rng(1);
  const Hypergraph five = hxtest::random_hypergraph(rng, 6, 4, 5);
  EXPECT_EQ(density_ratio(five, 6, 2, 2), 1);
  EXPECT_THROW(density_ratio(five, 6, 3, 2), Error);
}

TEST(Certificate, PerfectMatching) {
  const Hypergraph f = graph(12, 4, {{0, 1, 2, 3}, {4, 5, 6, 7}, {8, 9, 10, 11}});
  const CertificateReport c = upper_bound_certificate(f, 2, 2);
  expect_certificate_passes(c);
  EXPECT_TRUE(c.audits.empty());
  EXPECT_EQ(c.excess, 0);
  EXPECT_EQ(c.excess_bound, binomial(12, 2));
  EXPECT_EQ(c.cancellative, std::optional<bool>(true));
}

TEST(Certificate, TwoEdgesSharingAPair) {
  const Hypergraph f = graph(6, 4, {{0, 1, 2, 3}, {0, 1, 4, 5}});
  const CertificateReport c = upper_bound_certificate(f, 2, 2);
  EXPECT_EQ(c.spectrum.counts, (std::map<std::uint64_t, std::uint64_t>{{1, 10}, {2, 1}}));
  EXPECT_EQ(c.identity_lhs, 12);
  EXPECT_EQ(c.identity_rhs, 12);
  ASSERT_EQ(c.audits.size(), 1U);
  EXPECT_EQ(c.audits[0].kset, hxtest::set_of(6, {0, 1}));
  EXPECT_EQ(c.audits[0].containing_edges.size(), 2U);
  EXPECT_TRUE(c.audits[0].failing_edges.empty());
  EXPECT_EQ(c.excess, 1);
  expect_certificate_passes(c);
}

TEST(Certificate, IdentityOnRandomTkGraphs) {
  std::mt19937_64 rng(2);
  for (auto [t, k] : {std::pair{2U, 2U}, std::pair{2U, 3U}, std::pair{3U, 2U}}) {
    for (int trial = 0; trial < 30; ++trial) {
      const std::uint32_t n = hxtest::pick(rng, t * k, t * k + 6);
      const Hypergraph f = hxtest::random_hypergraph(rng, n, t * k, hxtest::pick(rng, 1, 25));
      CertificateOptions o;
      o.assume_cancellative = true;
      const CertificateReport c = upper_bound_certificate(f, t, k, o);
      EXPECT_TRUE(c.identity_holds);
      EXPECT_EQ(c.identity_lhs, binomial_big(t * k, k) * f.size());
      EXPECT_EQ(c.cancellative_status, "assumed");
    }
  }
}

TEST(Certificate, SearchWitnessesPass) {
  for (std::uint32_t n = 4; n <= 8; ++n) {
    SearchProblem p;
    p.kind = SearchKind::Cancellative;
    p.t = 2;
    p.n = n;
    p.r = 4;
    p.candidate_limit = 80;
    const SearchResult r = extremal_search(p);
    const CertificateReport c = upper_bound_certificate(r.witness, 2, 2);
    EXPECT_EQ(c.cancellative, std::optional<bool>(true));
    EXPECT_EQ(c.claim_premise, n >= 7) << n;
    expect_certificate_passes(c);
    EXPECT_LE(density_ratio(r.witness, n, 2, 2), 1);
  }
}

TEST(Certificate, PipelineOutputPasses) {
  ConstructionParams p;
  p.t = 2;
  p.k = 2;
  p.m0 = 8;
  p.n = 30;
  p.seed = 4;
  p.packing_budget = 4000;
  const PipelineArtifacts a = build_cancellative(p);
  const CertificateReport c = upper_bound_certificate(a.H, 2, 2);
  EXPECT_EQ(c.cancellative, std::optional<bool>(true));
  expect_certificate_passes(c);
}

TEST(Certificate, FullSigmaListsMatchCounts) {
  const Hypergraph f = graph(8, 4, {{0, 1, 2, 3}, {0, 1, 4, 5}, {2, 3, 6, 7}});
  CertificateOptions o;
  o.full_sigma = true;
  const CertificateReport c = upper_bound_certificate(f, 2, 2, o);
  ASSERT_EQ(c.sigma_lists.size(), c.audits.size());
  BigInt total = 0;
  for (std::size_t i = 0; i < c.audits.size(); ++i) {
    EXPECT_EQ(c.sigma_lists[i].size(), c.audits[i].sigma_size);
    total += c.audits[i].sigma_size;
  }
  EXPECT_EQ(total, c.n_from_t);
  const auto doc = certificate_to_json(c);
  EXPECT_TRUE(doc.contains("degree_spectrum"));
}

TEST(Certificate, Errors) {
  EXPECT_THROW(upper_bound_certificate(graph(4, 3, {{0, 1, 2}}), 2, 2), Error);
}
