#include "hx/bounds.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "hx/error.hpp"

namespace hx {

namespace {

Rational ceil_div(std::uint64_t a, std::uint64_t b) { return Rational((a + b - 1) / b); }

Rational big(const BigInt& v) { return Rational(v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

BigInt balanced_partite_count(std::uint64_t n, std::uint64_t r) {
  require(r >= 1 && n >= r, ErrorKind::BadParameters, "balanced partite count needs n >= r >= 1");
  BigInt out = 1;
  for (std::uint64_t i = 0; i < r; ++i) out *= (n + i) / r;
  return out;
}

Rational limit_value(std::uint32_t t, std::uint32_t k) {
  require(t >= 2 && k >= 2, ErrorKind::BadParameters, "limit needs t >= 2 and k >= 2");
  return Rational(1) / Rational(factorial_big(k) * binomial_big(static_cast<std::uint64_t>(t) * k - 1, k - 1));
}

const BoundsRow* BoundsTable::find(const std::string& name) const {
  for (const BoundsRow& row : rows) {
    if (row.name == name) return &row;
  }
  return nullptr;
}

BoundsTable closed_form_bounds(std::uint32_t t, std::uint32_t r, std::uint64_t n) {
  BoundsTable table;
  table.t = t;
  table.r = r;
  table.n = n;
  if (t >= 1 && r % t == 0) table.k = r / t;
  auto& rows = table.rows;
  const auto omit = [&](const std::string& name, const std::string& anchor, const std::string& why) {
    rows.push_back({name, anchor, std::nullopt, "omitted: " + why});
  };

  // 1-cancellative
  if (r >= 1 && n >= r) {
    const Rational cnr = big(binomial_big(n, r));
    rows.push_back({"c1_lower_partite", "balanced-partite", big(balanced_partite_count(n, r)),
                    "p(n,r); exact for r in {2,3,4} and for n <= 2r"});
    rows.push_back({"c1_lower_random", "one-cancellative-band-lower", Rational(7, 25) / big(pow_big(2, r)) * cnr,
                    "strict lower bound (0.28/2^r) C(n,r)"});
    rows.push_back({"c1_upper", "one-cancellative-band-upper", big(pow_big(2, r)) / big(binomial_big(2ULL * r, r)) * cnr,
                    "2^r / C(2r,r) * C(n,r)"});
  } else {
    omit("c1_lower_partite", "balanced-partite", "needs n >= r >= 1");
  }

  // 2-cancellative, r = 2k'
  if (r >= 2 && r % 2 == 0) {
    const std::uint32_t h = r / 2;
    rows.push_back({"c2_upper", "two-cancellative-upper", big(binomial_big(n, h)) / big(binomial_big(2ULL * h - 1, h - 1)),
                    "C(n,k)/C(2k-1,k-1) with k = r/2"});
    rows.push_back({"c2_lower_main", "two-cancellative-lower", big(pow_big(n, h)) / big(pow_big(2ULL * h, h)),
                    "n^k/(2k)^k - o(n^k); the o-term is not evaluated"});
  } else {
    omit("c2_upper", "two-cancellative-upper", "needs even r");
  }

  // exponent band for C_t(n,r)
  if (t >= 2 && r >= 3) {
    const std::uint64_t modulus = t + 2;
    const Rational lower = Rational((2ULL * r) / modulus) + Rational((2ULL * r) % modulus, t + 1);
    rows.push_back({"ct_exponent_lower", "cancellative-exponent-band", lower, "exponent of n in Omega(.)"});
    rows.push_back({"ct_exponent_upper", "cancellative-exponent-band", ceil_div(r, t / 2 + 1), "exponent of n in O(.)"});
  } else {
    omit("ct_exponent_lower", "cancellative-exponent-band", "needs t >= 2 and r >= 3");
  }

  // cover-free / union-free sandwich F_t <= U_t <= F_{t-1}
  if (t >= 2 && r >= 1) {
    rows.push_back({"ft_exponent", "cover-free-sandwich-lower", ceil_div(r, t), "F_t(n,r) = Omega(n^e)"});
    rows.push_back({"ft_minus1_exponent", "cover-free-sandwich-upper", ceil_div(r, t - 1), "F_{t-1}(n,r) = O(n^e)"});
  } else {
    omit("ft_exponent", "cover-free-sandwich", "needs t >= 2");
  }
  if (t >= 3 && r >= 3) {
    rows.push_back({"ut_exponent_lower", "union-free-exponent-lower", Rational(r, t - 1), "U_t(n,r) = Omega(n^e)"});
  } else {
    omit("ut_exponent_lower", "union-free-exponent-lower", "needs t >= 3 and r >= 3");
  }

  // gamma(r, t)
  if (table.k && *table.k >= 2 && t >= 2) {
    rows.push_back({"gamma", "cover-free-limit", limit_value(t, *table.k), "lim F_t(n,tk)/n^k"});
  } else {
    rows.push_back({"gamma", "cover-free-limit", std::nullopt, "unknown: no closed form unless r = tk"});
  }

  // r = tk rows
  if (table.k && *table.k >= 2 && t >= 2) {
    const std::uint32_t k = *table.k;
    const Rational lim = limit_value(t, k);
    const Rational target = big(binomial_big(n, k)) / big(binomial_big(static_cast<std::uint64_t>(t) * k - 1, k - 1));
    rows.push_back({"cancellative_limit", "cancellative-limit", lim, "lim C_{2(t-1)}(n,tk)/n^k"});
    rows.push_back({"cancellative_upper", "cancellative-upper", target, "C_{2(t-1)}(n,tk) <= C(n,k)/C(tk-1,k-1)"});
    rows.push_back({"cancellative_lower_target", "cancellative-lower", target,
                    "(1-o(1)) times this value; the o-term is not evaluated"});
    rows.push_back({"union_free_limit", "union-free-limit", lim, "lim U_{t+1}(n,tk)/n^k"});
    rows.push_back({"union_free_exponent_lower", "union-free-chain-lower", Rational(k), "U_{t+1}(n,tk) = Omega(n^e)"});
    rows.push_back({"union_free_upper_main", "union-free-chain-upper", lim * big(pow_big(n, k)),
                    "F_t(n,tk) <= this + o(n^k); the o-term is a flag, not a number"});
    if (n >= k) {
      rows.push_back({"limit_in_ratio_units", "cancellative-limit", lim * big(pow_big(n, k)) / target,
                      "limit times n^k divided by C(n,k)/C(tk-1,k-1); tends to 1"});
    }
  } else {
    omit("cancellative_limit", "cancellative-limit", "needs r = tk with t >= 2 and k >= 2");
  }
  return table;
}

std::string bounds_to_csv(const BoundsTable& table, const std::vector<std::string>& comments) {
  std::ostringstream out;
  for (const std::string& c : comments) out << "# " << c << '\n';
  out << "name,anchor,numerator,denominator,note\n";
  for (const BoundsRow& row : table.rows) {
    out << csv_field(row.name) << ',' << csv_field(row.anchor) << ',';
    if (row.value) {
      out << boost::multiprecision::numerator(*row.value) << ',' << boost::multiprecision::denominator(*row.value);
    } else {
      out << ',';
    }
    out << ',' << csv_field(row.note) << '\n';
  }
  return out.str();
}

Rational density_ratio(const Hypergraph& h, std::uint32_t n, std::uint32_t t, std::uint32_t k) {
  require(h.r() == t * k, ErrorKind::UniformityMismatch, "density ratio needs a tk-uniform hypergraph");
  require(k >= 1 && n >= k, ErrorKind::BadParameters, "density ratio needs n >= k >= 1");
  return Rational(BigInt(h.size()) * binomial_big(static_cast<std::uint64_t>(t) * k - 1, k - 1)) /
         Rational(binomial_big(n, k));
}

CertificateReport upper_bound_certificate(const Hypergraph& f, std::uint32_t t, std::uint32_t k,
                                          const CertificateOptions& options) {
  require(t >= 2 && k >= 1, ErrorKind::BadParameters, "certificate needs t >= 2 and k >= 1");
  require(f.r() == t * k, ErrorKind::UniformityMismatch,
          "certificate needs a " + std::to_string(t * k) + "-uniform hypergraph, got r = " + std::to_string(f.r()));
  CertificateReport rep;
  rep.n = f.n();
  rep.t = t;
  rep.k = k;
  rep.edges = f.size();
  rep.claim_premise = f.size() >= 2 * static_cast<std::size_t>(t);

  if (options.assume_cancellative) {
    rep.cancellative_status = "assumed";
  } else if (f.size() <= options.cancellative_check_limit) {
    const PropertyWitness w = is_t_cancellative(f, 2 * (t - 1));
    rep.cancellative = w.holds;
    rep.cancellative_status = w.holds ? "verified" : "violated";
  } else {
    rep.cancellative_status = "unchecked: too many edges";
  }

  const auto deg = kset_degrees(f, k);
  rep.spectrum = degree_spectrum(f, k);
  rep.identity_lhs = binomial_big(static_cast<std::uint64_t>(t) * k, k) * f.size();
  rep.identity_rhs = rep.spectrum.weighted_sum();
  rep.identity_holds = rep.identity_lhs == rep.identity_rhs;

  const auto degree_of = [&](const VertexSet& s) -> std::uint32_t {
    const auto it = deg.find(s);
    return it == deg.end() ? 0 : it->second;
  };

  // edges containing each k-set of degree >= 2, in colex order of T
  std::vector<VertexSet> heavy;
  for (const auto& [s, d] : deg) {
    if (d >= 2) heavy.push_back(s);
  }
  std::sort(heavy.begin(), heavy.end());
  std::unordered_map<VertexSet, std::size_t, VertexSetHash> heavy_index;
  for (std::size_t i = 0; i < heavy.size(); ++i) heavy_index.emplace(heavy[i], i);
  std::vector<std::vector<std::size_t>> containing(heavy.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    for_each_k_subset(f.edge(i), k, [&](const VertexSet& s) {
      const auto it = heavy_index.find(s);
      if (it != heavy_index.end()) containing[it->second].push_back(i);
      return true;
    });
  }

  for (std::size_t h = 0; h < heavy.size(); ++h) {
    const VertexSet& tset = heavy[h];
    ClaimAudit audit;
    audit.kset = tset;
    audit.degree = degree_of(tset);
    audit.containing_edges = containing[h];
    std::vector<std::vector<Vertex>> sigma;
    for (std::size_t i : audit.containing_edges) {
      const VertexSet rest = f.edge(i) - tset;
      std::vector<VertexSet> heavy_inside;
      for_each_k_subset(rest, k, [&](const VertexSet& s) {
        const std::uint32_t d = degree_of(s);
        if (d >= 2) heavy_inside.push_back(s);
        if (d == 1) {
          ++audit.sigma_size;
          if (options.full_sigma) sigma.push_back(s.to_vector());
        }
        return true;
      });
      if (matching_number(std::span<const VertexSet>(heavy_inside)) > t - 2) audit.failing_edges.push_back(i);
    }
    if (audit.failing_edges.size() >= 2) ++rep.claim_counterexamples;
    rep.n_from_t += audit.sigma_size;
    if (options.full_sigma) {
      std::sort(sigma.begin(), sigma.end());
      rep.sigma_lists.push_back(std::move(sigma));
    }
    rep.audits.push_back(std::move(audit));
  }

  // other side of the double count: for every degree-1 T' in edge F, the
  // heavy T inside F \ T'
  for (std::size_t i = 0; i < f.size(); ++i) {
    for_each_k_subset(f.edge(i), k, [&](const VertexSet& tp) {
      if (degree_of(tp) != 1) return true;
      const VertexSet rest = f.edge(i) - tp;
      for_each_k_subset(rest, k, [&](const VertexSet& s) {
        if (degree_of(s) >= 2) rep.n_from_tprime += 1;
        return true;
      });
      return true;
    });
  }

  BigInt excess = 0;
  for (const auto& [s, c] : rep.spectrum.counts) {
    if (s >= 2) excess += BigInt(s - 1) * c;
  }
  rep.excess = excess;
  rep.n_lower = excess * binomial_big(static_cast<std::uint64_t>(t - 1) * k - 1, k - 1);
  rep.n_upper = BigInt(rep.spectrum.count(1)) * binomial_big(static_cast<std::uint64_t>(t - 1) * k, k);
  const BigInt cnk = binomial_big(f.n(), k);
  rep.excess_bound = BigInt(t - 1) * cnk;
  rep.counts_agree = rep.n_from_t == rep.n_from_tprime;
  rep.lower_holds = rep.n_from_t >= rep.n_lower;
  rep.upper_holds = rep.n_from_tprime <= rep.n_upper;
  rep.excess_holds = rep.excess <= rep.excess_bound;
  rep.final_bound_holds = rep.identity_lhs <= BigInt(t) * cnk;
  if (f.n() >= k) rep.density_ratio = density_ratio(f, f.n(), t, k);
  return rep;
}

nlohmann::ordered_json certificate_to_json(const CertificateReport& r) {
  const auto s = [](const BigInt& v) { return v.str(); };
  nlohmann::ordered_json doc;
  doc["n"] = r.n;
  doc["t"] = r.t;
  doc["k"] = r.k;
  doc["edges"] = r.edges;
  doc["cancellative"] = r.cancellative_status;
  nlohmann::ordered_json spectrum = nlohmann::ordered_json::object();
  spectrum["0"] = s(r.spectrum.zero_count);
  for (const auto& [deg, count] : r.spectrum.counts) spectrum[std::to_string(deg)] = count;
  doc["degree_spectrum"] = std::move(spectrum);
  doc["identity"] = {{"lhs", s(r.identity_lhs)}, {"rhs", s(r.identity_rhs)}, {"holds", r.identity_holds}};
  auto audits = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < r.audits.size(); ++i) {
    const ClaimAudit& a = r.audits[i];
    nlohmann::ordered_json entry;
    entry["kset"] = a.kset.to_vector();
    entry["degree"] = a.degree;
    entry["containing_edges"] = a.containing_edges;
    entry["failing_edges"] = a.failing_edges;
    entry["sigma_size"] = a.sigma_size;
    if (i < r.sigma_lists.size()) entry["sigma"] = r.sigma_lists[i];
    audits.push_back(std::move(entry));
  }
  doc["claim_audits"] = std::move(audits);
  doc["claim_premise"] = r.claim_premise ? "holds" : "vacuous: fewer than 2t edges";
  doc["claim_counterexamples"] = r.claim_counterexamples;
  nlohmann::ordered_json count;
  count["from_t"] = s(r.n_from_t);
  count["from_t_prime"] = s(r.n_from_tprime);
  count["agree"] = r.counts_agree;
  count["lower"] = s(r.n_lower);
  count["lower_holds"] = r.lower_holds;
  count["upper"] = s(r.n_upper);
  count["upper_holds"] = r.upper_holds;
  doc["pair_count"] = std::move(count);
  doc["excess"] = {{"value", s(r.excess)}, {"bound", s(r.excess_bound)}, {"holds", r.excess_holds}};
  doc["final_bound_holds"] = r.final_bound_holds;
  doc["density_ratio"] = to_fraction_string(r.density_ratio);
  return doc;
}

}  // namespace hx
