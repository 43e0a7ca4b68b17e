#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hx/hypergraph.hpp"

namespace hx {

enum class SearchKind { Cancellative, UnionFree, CoverFree, MatchingBounded };
enum class SearchMode { Exact, LowerBoundOnly };
enum class ProofStatus { Proved, BudgetStopped };

std::string to_string(SearchKind k);
std::string to_string(ProofStatus s);
SearchKind parse_search_kind(const std::string& name);

struct SearchProblem {
  SearchKind kind = SearchKind::Cancellative;
  std::uint32_t t = 1;  // ν_max for MatchingBounded
  std::uint32_t n = 0;
  std::uint32_t r = 0;
  SearchMode mode = SearchMode::Exact;
  std::uint64_t node_budget = 0;  // 0: unlimited
  double time_budget_s = 0;       // 0: unlimited
  std::uint64_t candidate_limit = 64;
  /// Caps the optimum by the closed-form upper bound where one is proved
  /// (2(t'-1)-cancellative t'k-graphs).
  bool packing_bound = false;
  unsigned threads = 1;
};

struct SearchResult {
  std::uint64_t optimum = 0;
  Hypergraph witness;
  std::uint64_t nodes = 0;
  ProofStatus status = ProofStatus::Proved;
  double elapsed_ms = 0;
};

SearchResult extremal_search(const SearchProblem& p);

/// Exhaustive maximum over all edge subsets, using the `properties` checkers.
std::uint64_t brute_force_oracle(const SearchProblem& p);

/// True iff h has the property of the problem's kind (via `properties`).
bool satisfies(const SearchProblem& p, const Hypergraph& h);

struct MatchingRow {
  std::uint32_t n = 0, k = 0, nu = 0, t = 0;
  std::uint64_t formula = 0;
  std::uint64_t searched = 0;
  ProofStatus status = ProofStatus::Proved;
};

/// m((t-1)k, k, t-2) by search next to C((t-1)k-1, k), for 2 <= t <= t_max.
std::vector<MatchingRow> erdos_matching_table(std::uint32_t k, std::uint32_t t_max, const SearchProblem& scope = {});

/// {kind, params, optimum, status, witness_file, nodes, elapsed_ms}; witness_file is
/// omitted when empty.
nlohmann::ordered_json search_result_to_json(const SearchProblem& p, const SearchResult& r,
                                             const std::string& witness_file = {});

}  // namespace hx
