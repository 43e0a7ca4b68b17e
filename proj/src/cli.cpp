#include "hx/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "hx/bigint.hpp"
#include "hx/bounds.hpp"
#include "hx/configurations.hpp"
#include "hx/constructions.hpp"
#include "hx/error.hpp"
#include "hx/hg_io.hpp"
#include "hx/packing.hpp"
#include "hx/properties.hpp"
#include "hx/rng.hpp"
#include "hx/search.hpp"

namespace hx {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct Common {
  std::uint64_t seed = 0;
  bool deterministic = false;
  unsigned threads = 0;  // 0: not given
  std::string format = "hg";
  std::string out;
};

// Everything a subcommand needs once the command line has been parsed.
struct Context {
  std::string command;
  Common common;
  std::string digest;
  unsigned threads = 1;
  std::ostream* out = nullptr;
  Clock::time_point start = Clock::now();

  std::string stamp() const {
    return "hx " + std::string(kToolVersion) + " seed=" + std::to_string(common.seed) + " config=" + digest;
  }
  json meta() const {
    json m;
    m["tool"] = "hx";
    m["version"] = kToolVersion;
    m["seed"] = common.seed;
    m["config_digest"] = digest;
    return m;
  }
  double elapsed_ms() const {
    if (common.deterministic) return 0;
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
  }
  GraphFormat graph_format() const {
    if (common.format == "json") return GraphFormat::Json;
    if (common.format == "hg" || common.format == "text") return GraphFormat::Hg;
    fail(ErrorKind::UsageError, "unsupported --format '" + common.format + "' for hypergraph output");
  }
  HgWriteOptions write_options() const {
    HgWriteOptions o;
    o.format = graph_format();
    o.comments = {stamp()};
    return o;
  }
  // Writes to --out when given, else to stdout.
  void emit(const std::string& text) const {
    if (common.out.empty()) {
      *out << text;
    } else {
      write_text_file(common.out, text);
    }
  }
};

// CLI11 only reads --config on the root app, so a subcommand's config file is
// expanded into flags here. Flags given on the command line win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.size() < 2) return args;
  std::string path;
  std::set<std::string> given;
  for (std::size_t i = 2; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (a.rfind("--config=", 0) == 0) {
      path = a.substr(9);
    } else if (a.rfind("--", 0) == 0) {
      given.insert(a.substr(0, a.find('=')));
    }
  }
  if (path.empty()) return args;
  std::vector<CLI::ConfigItem> items;
  try {
    items = CLI::ConfigTOML().from_file(path);
  } catch (const CLI::FileError& e) {
    fail(ErrorKind::IoError, e.what());
  }
  std::vector<std::string> extra;
  for (const auto& item : items) {
    const bool ours = item.parents.empty() || (item.parents.size() == 1 && item.parents[0] == args[1]);
    if (!ours || item.name.empty()) continue;
    const std::string flag = "--" + item.name;
    if (flag == "--config" || given.count(flag) != 0) continue;
    if (item.inputs.size() == 1 && item.inputs[0] == "true") {
      extra.push_back(flag);
    } else if (item.inputs.size() == 1 && item.inputs[0] == "false") {
      continue;
    } else {
      for (const auto& v : item.inputs) {
        extra.push_back(flag);
        extra.push_back(v);
      }
    }
  }
  std::vector<std::string> out(args.begin(), args.begin() + 2);
  out.insert(out.end(), extra.begin(), extra.end());
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void add_common(CLI::App* sub, Common& c, bool with_format) {
  sub->set_config("--config", "", "TOML-style key=value file with option values");
  sub->add_option("--seed", c.seed, "64-bit seed");
  sub->add_flag("--deterministic", c.deterministic, "Sequential execution and zeroed timings");
  sub->add_option("--threads", c.threads, "Worker threads (overrides HX_THREADS)");
  if (with_format) {
    sub->add_option("--format", c.format, "Hypergraph output format: hg or json")
        ->check(CLI::IsMember({"hg", "text", "json"}));
  }
}

unsigned resolve_threads(const Common& c) {
  if (c.deterministic) return 1;
  if (c.threads != 0) return c.threads;
  if (const char* env = std::getenv("HX_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
    fail(ErrorKind::UsageError, "HX_THREADS must be a positive integer");
  }
  return 1;
}

// FNV-1a over sorted name=value pairs of the given options; output paths,
// the config path and thread counts do not enter.
std::string config_digest(const CLI::App* sub) {
  std::map<std::string, std::string> items;
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_name();
    if (opt->count() == 0 || name == "--out" || name == "--config" || name == "--help" || name == "--threads") continue;
    std::string joined;
    for (const std::string& r : opt->results()) joined += r + ";";
    items[name] = joined;
  }
  std::string text = sub->get_name() + "\n";
  for (const auto& [k, v] : items) text += k + "=" + v + "\n";
  return hex64(fnv1a64(text));
}

std::string file_digest(const fs::path& p) { return hex64(fnv1a64(read_text_file(p))); }

Rational rational_option(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const Error&) {
    fail(ErrorKind::UsageError, flag + " expects a rational like 1/4 or 0.25, got '" + text + "'");
  }
}

// ---- construct ----------------------------------------------------------

struct ConstructArgs {
  std::string kind;
  std::uint32_t t = 2, k = 2, n = 0, e = 0;
  std::optional<std::uint32_t> m0;
  std::string epsilon, packing_epsilon;
  std::string strategy = "direct";
  std::uint64_t budget = 20000, target = 0, node_cap = 2'000'000, samples = 1'000'000;
  std::uint32_t retries = 5, pilots = 5;
};

int run_construct(Context& ctx, const ConstructArgs& a) {
  require(!ctx.common.out.empty(), ErrorKind::UsageError, "construct needs --out DIR");
  require(a.m0.has_value() != !a.epsilon.empty(), ErrorKind::UsageError, "give exactly one of --m0 and --epsilon");
  ConstructionParams params;
  params.t = a.t;
  params.k = a.k;
  params.n = a.n;
  params.e = a.e;
  params.m0 = a.m0;
  if (!a.epsilon.empty()) params.epsilon = rational_option(a.epsilon, "--epsilon");
  if (!a.packing_epsilon.empty()) params.packing_epsilon = rational_option(a.packing_epsilon, "--packing-epsilon");
  params.seed = ctx.common.seed;
  params.strategy = parse_strategy(a.strategy);
  params.packing_budget = a.budget;
  params.target_copies = a.target;
  params.search_node_cap = a.node_cap;
  params.sampled_tuples = a.samples;
  params.retries = a.retries;
  params.pilot_runs = a.pilots;
  params.threads = ctx.threads;
  const PipelineKind kind = a.kind == "cancellative" ? PipelineKind::Cancellative : PipelineKind::UnionFree;
  const PipelineArtifacts art = build_pipeline(kind, params);

  const fs::path dir = ctx.common.out;
  std::error_code ec;
  fs::create_directories(dir, ec);
  require(!ec, ErrorKind::IoError, "cannot create " + dir.string() + ": " + ec.message());
  const HgWriteOptions wo = ctx.write_options();
  const std::string ext = wo.format == GraphFormat::Json ? ".json" : ".hg";
  std::vector<std::string> files;
  const auto put_graph = [&](const std::string& stem, const Hypergraph& h) {
    write_hypergraph(h, dir / (stem + ext), wo);
    files.push_back(stem + ext);
  };
  put_graph("G", art.G);
  put_graph("F", art.F);
  put_graph("shadow", art.shadow);
  json packing = packing_to_json(art.packing);
  packing["density"] = to_fraction_string(art.report.packing_density);
  packing["hx"] = ctx.meta();
  write_text_file(dir / "packing.json", dump(packing));
  files.emplace_back("packing.json");
  put_graph("H", art.H);
  json report = report_to_json(art.report);
  report["elapsed_ms"] = ctx.elapsed_ms();
  report["hx"] = ctx.meta();
  write_text_file(dir / "report.json", dump(report));
  files.emplace_back("report.json");

  json manifest;
  manifest["tool"] = "hx";
  manifest["version"] = kToolVersion;
  manifest["command"] = "construct";
  manifest["seed"] = ctx.common.seed;
  manifest["config_digest"] = ctx.digest;
  json config;
  config["kind"] = a.kind;
  config["t"] = a.t;
  config["k"] = a.k;
  config["n"] = a.n;
  if (a.m0) config["m0"] = *a.m0;
  if (!a.epsilon.empty()) config["epsilon"] = a.epsilon;
  if (a.e != 0) config["e"] = a.e;
  if (!a.packing_epsilon.empty()) config["packing_epsilon"] = a.packing_epsilon;
  config["strategy"] = a.strategy;
  config["budget"] = a.budget;
  config["target"] = a.target;
  config["node_cap"] = a.node_cap;
  config["samples"] = a.samples;
  config["retries"] = a.retries;
  config["pilots"] = a.pilots;
  config["format"] = ctx.common.format;
  config["deterministic"] = ctx.common.deterministic;
  manifest["config"] = std::move(config);
  manifest["inputs"] = json::object();
  json outputs = json::object();
  for (const std::string& f : files) outputs[f] = file_digest(dir / f);
  manifest["outputs"] = std::move(outputs);
  manifest["timings"] = {{"total_ms", ctx.elapsed_ms()}};
  write_text_file(dir / "manifest.json", dump(manifest));

  json summary;
  summary["out"] = dir.string();
  summary["H_edges"] = art.report.size_H;
  summary["density_ratio"] = to_fraction_string(art.report.density_ratio);
  summary["verification"] = art.report.verification;
  *ctx.out << summary.dump() << "\n";
  return 0;
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
  std::string property;
  std::uint32_t t = 0, v = 0, e = 0, k = 0, ell = 0;
  std::uint64_t max_unions = 20'000'000;
  std::string file;
};

int run_verify(Context& ctx, const VerifyArgs& a) {
  const CheckOptions opts{ctx.threads, a.max_unions};
  PropertyWitness w;
  std::vector<VertexSet> edges;
  json input;
  input["file"] = fs::path(a.file).filename().string();
  input["digest"] = file_digest(a.file);
  if (a.property == "induced-packing") {
    require(a.k >= 1, ErrorKind::UsageError, "induced-packing needs --k");
    const PackingRecord p = packing_from_json(nlohmann::json::parse(read_text_file(a.file), nullptr, false));
    w = is_induced_packing(p, a.k);
  } else {
    const Hypergraph h = read_hypergraph(a.file);
    edges.assign(h.edges().begin(), h.edges().end());
    if (a.property == "cancellative") {
      w = is_t_cancellative(h, a.t, opts);
    } else if (a.property == "union-free") {
      w = is_t_union_free(h, a.t, opts);
    } else if (a.property == "cover-free") {
      w = is_t_cover_free(h, a.t, opts);
    } else if (a.property == "ve-free") {
      w = is_ve_free(h, a.v, a.e, opts);
    } else {
      require(a.k >= 1, ErrorKind::UsageError, "ell-minus needs --k");
      require((a.ell != 0) != (a.e != 0), ErrorKind::UsageError, "ell-minus needs exactly one of --ell and --e");
      w = a.ell != 0 ? is_ell_minus_free(h, a.k, a.ell, opts) : ell_minus_free_upto(h, a.k, a.e);
    }
  }
  json doc;
  doc["holds"] = w.holds;
  doc["witness"] = witness_to_json(w, edges);
  doc["input"] = std::move(input);
  doc["elapsed_ms"] = ctx.elapsed_ms();
  doc["hx"] = ctx.meta();
  ctx.emit(dump(doc));
  return w.holds ? 0 : 1;
}

// ---- search -------------------------------------------------------------

struct SearchArgs {
  std::string kind;
  std::uint32_t t = 1, n = 0, r = 0;
  bool oracle = false, lower_bound = false, packing_bound = false;
  std::uint64_t budget = 0, candidate_limit = 64;
  double time_budget = 0;
};

int run_search(Context& ctx, const SearchArgs& a) {
  SearchProblem p;
  p.kind = parse_search_kind(a.kind);
  p.t = a.t;
  p.n = a.n;
  p.r = a.r;
  p.mode = a.lower_bound ? SearchMode::LowerBoundOnly : SearchMode::Exact;
  p.node_budget = a.budget;
  p.time_budget_s = ctx.common.deterministic ? 0 : a.time_budget;
  p.candidate_limit = a.candidate_limit;
  p.packing_bound = a.packing_bound;
  p.threads = ctx.threads;
  SearchResult r = extremal_search(p);
  if (ctx.common.deterministic) r.elapsed_ms = 0;
  std::string witness_name;
  if (!ctx.common.out.empty()) {
    const fs::path out = ctx.common.out;
    const HgWriteOptions wo = ctx.write_options();
    witness_name = out.stem().string() + ".witness" + (wo.format == GraphFormat::Json ? ".json" : ".hg");
    write_hypergraph(r.witness, out.parent_path() / witness_name, wo);
  }
  json doc = search_result_to_json(p, r, witness_name);
  if (a.oracle) {
    const std::uint64_t o = brute_force_oracle(p);
    doc["oracle"] = o;
    doc["oracle_agrees"] = o == r.optimum;
  }
  if (witness_name.empty()) {
    auto edges = json::array();
    for (const VertexSet& e : r.witness.edges()) edges.push_back(e.to_vector());
    doc["witness"] = std::move(edges);
  }
  doc["hx"] = ctx.meta();
  ctx.emit(dump(doc));
  return 0;
}

// ---- pack ---------------------------------------------------------------

struct PackArgs {
  std::string templ;
  std::uint32_t n = 0, k = 0, e = 2;
  std::string strategy = "direct";
  std::string epsilon;
  std::uint64_t budget = 10000, target = 0, node_cap = 2'000'000;
  bool diagnostics = false;
};

int run_pack(Context& ctx, const PackArgs& a) {
  const Hypergraph j = read_hypergraph(a.templ);
  require(j.r() == a.k, ErrorKind::UniformityMismatch, "template must be k-uniform");
  PackingOptions o;
  o.n = a.n;
  o.k = a.k;
  o.e = a.e;
  o.epsilon = a.epsilon.empty() ? default_packing_epsilon(j.n(), a.k) : rational_option(a.epsilon, "--epsilon");
  o.strategy = parse_strategy(a.strategy);
  o.seed = ctx.common.seed;
  o.target_count = a.target;
  o.budget = a.budget;
  o.search_node_cap = a.node_cap;
  o.template_id = fs::path(a.templ).filename().string() + "#" + file_digest(a.templ);
  const PackingResult res = greedy_conflict_free_packing(j, o);
  json doc = packing_to_json(res.record);
  doc["density"] = to_fraction_string(packing_density(res.record, a.n, a.k, j.size()));
  doc["epsilon"] = to_fraction_string(o.epsilon);
  doc["strategy"] = a.strategy;
  doc["stats"] = stats_to_json(res.stats);
  if (a.diagnostics) {
    const Coloring coloring = color_ksets(a.n, a.k, o.epsilon, substream_key(ctx.common.seed, {"packing", "coloring"}));
    DiagnosticsOptions d;
    d.seed = substream_key(ctx.common.seed, {"packing", "diagnostics"});
    doc["diagnostics"] = diagnostics_to_json(degree_diagnostics(j, coloring, d));
  }
  doc["elapsed_ms"] = ctx.elapsed_ms();
  doc["hx"] = ctx.meta();
  ctx.emit(dump(doc));
  return 0;
}

// ---- bounds / certify ---------------------------------------------------

struct BoundsArgs {
  std::uint32_t t = 2;
  std::optional<std::uint32_t> k, r;
  std::uint64_t n = 0;
};

int run_bounds(Context& ctx, const BoundsArgs& a) {
  require(a.k || a.r, ErrorKind::UsageError, "bounds needs --k or --r");
  const std::uint32_t r = a.r ? *a.r : a.t * *a.k;
  require(!a.k || !a.r || *a.r == a.t * *a.k, ErrorKind::UsageError, "--r must equal t*k when both are given");
  const BoundsTable table = closed_form_bounds(a.t, r, a.n);
  ctx.emit(bounds_to_csv(table, {ctx.stamp()}));
  return 0;
}

struct CertifyArgs {
  std::uint32_t t = 2, k = 2;
  std::string file;
  bool full_sigma = false, assume = false;
  std::uint64_t check_limit = 2000;
};

int run_certify(Context& ctx, const CertifyArgs& a) {
  const Hypergraph f = read_hypergraph(a.file);
  CertificateOptions o;
  o.full_sigma = a.full_sigma;
  o.assume_cancellative = a.assume;
  o.cancellative_check_limit = a.check_limit;
  const CertificateReport rep = upper_bound_certificate(f, a.t, a.k, o);
  json doc = certificate_to_json(rep);
  doc["input"] = {{"file", fs::path(a.file).filename().string()}, {"digest", file_digest(a.file)}};
  doc["elapsed_ms"] = ctx.elapsed_ms();
  doc["hx"] = ctx.meta();
  ctx.emit(dump(doc));
  return 0;
}

void write_error(std::ostream& err, std::string_view kind, const std::string& message) {
  json e;
  e["error"] = {{"kind", std::string(kind)}, {"message", message}};
  err << e.dump() << "\n";
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hx: extremal uniform hypergraphs (construct, verify, search, pack, bounds, certify)", "hx"};
  app.set_version_flag("--version", std::string("hx ") + kToolVersion);
  app.require_subcommand(1, 1);
  Common common;

  ConstructArgs ca;
  CLI::App* construct = app.add_subcommand("construct", "Build a cancellative or union-free hypergraph");
  construct->add_option("kind", ca.kind, "cancellative or union-free")
      ->required()
      ->check(CLI::IsMember({"cancellative", "union-free"}));
  construct->add_option("--t", ca.t, "t")->required();
  construct->add_option("--k", ca.k, "k")->required();
  construct->add_option("--n", ca.n, "Ground set size")->required();
  construct->add_option("--m0", ca.m0, "Vertices of the sampled (tk-1)-graph");
  construct->add_option("--epsilon", ca.epsilon, "Derive m0 from this accuracy (rational)");
  construct->add_option("--e", ca.e, "Configuration bound (default 2t or 2t+2)");
  construct->add_option("--packing-epsilon", ca.packing_epsilon, "Colouring probability (rational)");
  construct->add_option("--strategy", ca.strategy, "faithful or direct")->check(CLI::IsMember({"faithful", "direct"}));
  construct->add_option("--budget", ca.budget, "Sampled placements");
  construct->add_option("--target", ca.target, "Stop after this many copies (0: budget only)");
  construct->add_option("--node-cap", ca.node_cap, "Per-candidate conflict search node cap");
  construct->add_option("--samples", ca.samples, "Sampled tuples when exhaustive checking is too large");
  construct->add_option("--retries", ca.retries, "Attempts before giving up");
  construct->add_option("--pilots", ca.pilots, "Pilot runs for the m0 estimate");
  construct->add_option("--out", common.out, "Output directory");
  add_common(construct, common, true);

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Check a property of a hypergraph or packing");
  verify->add_option("--property", va.property, "Property")
      ->required()
      ->check(CLI::IsMember({"cancellative", "union-free", "cover-free", "ve-free", "ell-minus", "induced-packing"}));
  verify->add_option("--t", va.t, "t");
  verify->add_option("--v", va.v, "v");
  verify->add_option("--e", va.e, "e (for ell-minus: check every 2 <= l <= e)");
  verify->add_option("--k", va.k, "k");
  verify->add_option("--ell", va.ell, "Single l for ell-minus");
  verify->add_option("--max-unions", va.max_unions, "Union map cap for union-free");
  verify->add_option("file", va.file, "Input .hg (or packing.json)")->required()->check(CLI::ExistingFile);
  verify->add_option("--out", common.out, "Write the verdict here instead of stdout");
  add_common(verify, common, false);

  SearchArgs sa;
  CLI::App* search = app.add_subcommand("search", "Exact extremal search at small n");
  search->add_option("--kind", sa.kind, "cancellative, union-free, cover-free or matching")
      ->required()
      ->check(CLI::IsMember({"cancellative", "union-free", "cover-free", "matching"}));
  search->add_option("--t", sa.t, "t (matching: largest allowed matching number)")->required();
  search->add_option("--n", sa.n, "n")->required();
  search->add_option("--r", sa.r, "r")->required();
  search->add_flag("--oracle", sa.oracle, "Also run the brute-force oracle");
  search->add_option("--budget", sa.budget, "Node budget (0: none)");
  search->add_option("--time-budget", sa.time_budget, "Seconds (0: none; ignored with --deterministic)");
  search->add_flag("--lower-bound-only", sa.lower_bound, "Best found within the budget, no candidate limit");
  search->add_flag("--packing-bound", sa.packing_bound, "Cap by the proved closed-form bound where available");
  search->add_option("--candidate-limit", sa.candidate_limit, "Largest C(n,r) for exact mode");
  search->add_option("--out", common.out, "result.json path");
  add_common(search, common, true);

  PackArgs pa;
  CLI::App* pack = app.add_subcommand("pack", "Greedy conflict-free packing of a template");
  pack->add_option("--template", pa.templ, "Template k-graph")->required()->check(CLI::ExistingFile);
  pack->add_option("--n", pa.n, "n")->required();
  pack->add_option("--k", pa.k, "k")->required();
  pack->add_option("--e", pa.e, "Configuration bound");
  pack->add_option("--strategy", pa.strategy, "faithful or direct")->check(CLI::IsMember({"faithful", "direct"}));
  pack->add_option("--epsilon", pa.epsilon, "Colouring probability (rational)");
  pack->add_option("--budget", pa.budget, "Sampled placements");
  pack->add_option("--target", pa.target, "Stop after this many copies");
  pack->add_option("--node-cap", pa.node_cap, "Per-candidate conflict search node cap");
  pack->add_flag("--diagnostics", pa.diagnostics, "Add the placement-degree diagnostics");
  pack->add_option("--out", common.out, "packing.json path");
  add_common(pack, common, false);

  BoundsArgs ba;
  CLI::App* bounds = app.add_subcommand("bounds", "Closed-form bounds as exact rationals (CSV)");
  bounds->add_option("--t", ba.t, "t")->required();
  bounds->add_option("--k", ba.k, "k");
  bounds->add_option("--r", ba.r, "r (default tk)");
  bounds->add_option("--n", ba.n, "n")->required();
  bounds->add_option("--out", common.out, "CSV path");
  add_common(bounds, common, false);

  CertifyArgs xa;
  CLI::App* certify = app.add_subcommand("certify", "Replay the counting upper-bound argument on a hypergraph");
  certify->add_option("--t", xa.t, "t")->required();
  certify->add_option("--k", xa.k, "k")->required();
  certify->add_option("file", xa.file, "Input .hg")->required()->check(CLI::ExistingFile);
  certify->add_flag("--full-sigma", xa.full_sigma, "List every sigma(T)");
  certify->add_flag("--assume-cancellative", xa.assume, "Skip the cancellativity check");
  certify->add_option("--check-limit", xa.check_limit, "Largest |F| for the built-in cancellativity check");
  certify->add_option("--out", common.out, "cert.json path");
  add_common(certify, common, false);

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const Error& e) {
    write_error(err, to_string(e.kind()), e.what());
    return 2;
  }
  std::vector<std::string> rev(expanded.size() > 1 ? expanded.begin() + 1 : expanded.end(), expanded.end());
  std::reverse(rev.begin(), rev.end());
  try {
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << "hx " << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    write_error(err, "UsageError", e.what());
    err << app.help();
    return 2;
  }

  try {
    Context ctx;
    ctx.common = common;
    ctx.out = &out;
    CLI::App* chosen = app.get_subcommands().front();
    ctx.command = chosen->get_name();
    ctx.digest = config_digest(chosen);
    ctx.threads = resolve_threads(common);
    if (chosen == construct) return run_construct(ctx, ca);
    if (chosen == verify) return run_verify(ctx, va);
    if (chosen == search) return run_search(ctx, sa);
    if (chosen == pack) return run_pack(ctx, pa);
    if (chosen == bounds) return run_bounds(ctx, ba);
    return run_certify(ctx, xa);
  } catch (const Error& e) {
    write_error(err, to_string(e.kind()), e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    write_error(err, "FormatViolation", e.what());
    return 2;
  } catch (const std::exception& e) {
    write_error(err, "InternalError", e.what());
    return 2;
  }
}

int dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dispatch(args, std::cout, std::cerr);
}

}  // namespace hx
