#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hx/bigint.hpp"
#include "hx/hypergraph.hpp"
#include "hx/properties.hpp"

namespace hx {

/// ∏_{i<r} ⌊(n+i)/r⌋, the size of the balanced complete r-partite r-graph.
BigInt balanced_partite_count(std::uint64_t n, std::uint64_t r);

/// 1 / (k! · C(tk−1, k−1)).
Rational limit_value(std::uint32_t t, std::uint32_t k);

struct BoundsRow {
  std::string name;
  std::string anchor;            // formula identifier
  std::optional<Rational> value;  // absent for asymptotic-only rows
  std::string note;
};

struct BoundsTable {
  std::uint32_t t = 0;
  std::uint32_t r = 0;
  std::optional<std::uint32_t> k;  // set when t divides r
  std::uint64_t n = 0;
  std::vector<BoundsRow> rows;

  const BoundsRow* find(const std::string& name) const;
};

BoundsTable closed_form_bounds(std::uint32_t t, std::uint32_t r, std::uint64_t n);

/// CSV with columns name,anchor,numerator,denominator,note. Lines in
/// `comments` are emitted first, each prefixed with "# ".
std::string bounds_to_csv(const BoundsTable& table, const std::vector<std::string>& comments = {});

/// |H| · C(tk−1, k−1) / C(n, k).
Rational density_ratio(const Hypergraph& h, std::uint32_t n, std::uint32_t t, std::uint32_t k);

struct ClaimAudit {
  VertexSet kset;
  std::uint32_t degree = 0;
  std::vector<std::size_t> containing_edges;
  /// Edges F_i ⊇ T for which ν(𝓓(F, F_i∖T, ≥2)) > t−2.
  std::vector<std::size_t> failing_edges;
  std::uint64_t sigma_size = 0;
};

struct CertificateOptions {
  bool full_sigma = false;
  /// Record the hypothesis instead of checking it when true.
  bool assume_cancellative = false;
  std::uint64_t cancellative_check_limit = 2000;  // max |F| for the built-in check
};

struct CertificateReport {
  std::uint32_t n = 0, t = 0, k = 0;
  std::size_t edges = 0;
  DegreeSpectrum spectrum;
  std::optional<bool> cancellative;  // absent when assumed or skipped
  std::string cancellative_status;
  BigInt identity_lhs, identity_rhs;  // C(tk,k)|F| and Σ s·|D(F,s)|
  bool identity_holds = false;
  std::vector<ClaimAudit> audits;
  // The claim needs 2t-2 distinct other edges to cover F1 Δ F2; with fewer than
  // 2t edges cancellativity is vacuous and neither the claim nor lower_holds is implied.
  bool claim_premise = false;
  std::size_t claim_counterexamples = 0;
  BigInt n_from_t;       // Σ_T |σ(T)|
  BigInt n_from_tprime;  // Σ_{T'} #{T : T' ∈ σ(T)}
  BigInt n_lower;        // Σ_{s≥2} (s−1)|D(F,s)| · C((t−1)k−1, k−1)
  BigInt n_upper;        // |D(F,1)| · C((t−1)k, k)
  BigInt excess;         // Σ_{s≥2} (s−1)|D(F,s)|
  BigInt excess_bound;   // (t−1) C(n,k)
  bool lower_holds = false;
  bool upper_holds = false;
  bool counts_agree = false;
  bool excess_holds = false;
  bool final_bound_holds = false;  // C(tk,k)|F| <= t C(n,k)
  Rational density_ratio = 0;
  std::vector<std::vector<std::vector<Vertex>>> sigma_lists;  // only with full_sigma
};

CertificateReport upper_bound_certificate(const Hypergraph& f, std::uint32_t t, std::uint32_t k,
                                          const CertificateOptions& options = {});

nlohmann::ordered_json certificate_to_json(const CertificateReport& r);

}  // namespace hx
