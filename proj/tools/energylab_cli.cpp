#include <charconv>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "energylab/constructors.hpp"
#include "energylab/energy.hpp"
#include "energylab/error.hpp"
#include "energylab/gowers.hpp"
#include "energylab/io.hpp"
#include "energylab/structure.hpp"
#include "energylab/verify.hpp"

using namespace energylab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, ptr) : "nan";
}

std::string num(const Int& v) { return v.str(); }
std::string num(std::size_t v) { return std::to_string(v); }

json elements_json(const GSet& a) {
  json arr = json::array();
  a.for_each([&](Element x) { arr.push_back(x); });
  return arr;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

json family_json(const DisjointFamily& f) {
  json j;
  j["algorithm"] = f.algorithm;
  j["count"] = num(f.count());
  j["min_size"] = num(f.min_size);
  j["bound"] = num(f.bound);
  j["bound_met"] = f.bound_met;
  j["disjoint"] = f.disjoint;
  j["contained"] = f.contained;
  j["attempts"] = std::to_string(f.attempts);
  j["audit_passed"] = f.audit_passed();
  json params = json::object();
  for (const auto& [k, v] : f.parameters) params[k] = v;
  j["parameters"] = params;
  json members = json::array();
  for (const FamilyMember& m : f.members) members.push_back({{"tag", m.tag}, {"elements", elements_json(m.set)}});
  j["members"] = members;
  return j;
}

struct Options {
  std::string set;
  std::string set2;
  std::string out;
  std::string csv;
  std::uint64_t seed = 1;

  // construct
  std::string kind = "subspace";
  int n = 4;
  int dim = 2;
  int k = 3;
  std::uint32_t modulus = 101;
  std::int64_t start = 0;
  std::int64_t step = 1;
  std::int64_t len = 8;
  std::string group = "101";
  double density = 0.2;
  std::vector<int> dims;

  // energy
  std::string energy_kind = "E";
  double order = 2;
  std::string restrict_to;

  // gowers
  int degree = 3;
  bool normalized = false;

  // extract
  std::string algo = "translates";
  double beta = 0.5;
  double alpha = 2;
  double min_frac = 0.5;

  // verify and corpus
  std::string suite = "identity";
  std::size_t per_shape = 100;
  std::vector<std::string> suites = {"identity", "inequality", "ratio"};
  std::size_t exhaustive_cap = 16;
};

int run_construct(const Options& o) {
  GSet a = [&]() -> GSet {
    if (o.kind == "subspace") return subspace(o.n, o.dim);
    if (o.kind == "ap") return arithmetic_progression(o.modulus, o.start, o.step, o.len);
    if (o.kind == "h-plus-lambda") return h_plus_lambda(o.n, o.dim, o.k);
    if (o.kind == "dissociated") return h_plus_lambda(o.n, 0, o.k);
    if (o.kind == "random") return random_set(Group::parse(o.group), o.density, o.seed);
    if (o.kind == "coset-union") return coset_union(o.n, o.dims);
    throw Error("unknown construct kind '" + o.kind + "'");
  }();
  emit(o.out, set_to_json(a));
  return kExitOk;
}

int run_energy(const Options& o) {
  const GSet a = load_set(o.set);
  json j;
  j["kind"] = o.energy_kind;
  j["k"] = num(o.order);
  auto integral = [&]() {
    if (o.order != std::floor(o.order) || o.order < 1) throw Error("--k must be a positive integer for this kind");
    return static_cast<int>(o.order);
  };
  EnergyValue v;
  if (o.energy_kind == "E") {
    v = energy_k(a, o.order);
  } else if (o.energy_kind == "pair") {
    if (o.set2.empty()) throw Error("--kind pair needs --set2");
    v = energy_pair_k(a, load_set(o.set2), o.order);
  } else if (o.energy_kind == "T") {
    v = t_energy(a, integral());
  } else if (o.energy_kind == "sigma") {
    v = EnergyValue::of(EnergyKind::Sigma, o.order, sigma_k(a, integral()));
  } else if (o.energy_kind == "restricted") {
    if (o.restrict_to.empty()) throw Error("--kind restricted needs --restrict");
    v = restricted_energy(a, load_set(o.restrict_to), o.order);
  } else if (o.energy_kind == "starred") {
    v = starred_energy(a, o.order);
  } else if (o.energy_kind == "wiener") {
    v = EnergyValue::real(EnergyKind::Wiener, 1, wiener_norm(a));
  } else {
    throw Error("unknown energy kind '" + o.energy_kind + "'");
  }
  j["exact"] = v.exact;
  j["value"] = v.str();
  emit(o.out, j.dump(2) + "\n");
  return kExitOk;
}

int run_gowers(const Options& o) {
  const GSet a = load_set(o.set);
  const GowersValue v = gowers_u(a, o.degree);
  json j;
  j["d"] = std::to_string(v.d);
  j["count"] = num(v.count);
  if (o.normalized) j["normalized"] = num(v.normalized);
  emit(o.out, j.dump(2) + "\n");
  return kExitOk;
}

int run_extract(const Options& o) {
  const GSet a = load_set(o.set);
  const std::optional<GSet> b = o.set2.empty() ? std::nullopt : std::optional<GSet>(load_set(o.set2));
  json j;
  j["algo"] = o.algo;
  bool ok = true;
  if (o.algo == "translates") {
    const DisjointFamily f = greedy_disjoint_translates(a, b ? *b : a);
    j["family"] = family_json(f);
    ok = f.audit_passed();
  } else if (o.algo == "slices") {
    const DisjointFamily f = greedy_disjoint_slices(a, b ? *b : difference_set(a, a));
    j["family"] = family_json(f);
    ok = f.audit_passed();
  } else if (o.algo == "random-family") {
    const SlicePipelineReport r = disjoint_slices_pipeline(a, o.seed);
    j["ran"] = r.ran;
    j["skip_reason"] = r.skip_reason;
    j["regular_size"] = num(r.regular_size);
    j["delta"] = std::to_string(r.delta);
    j["popular_count"] = num(r.popular_count);
    j["sigma"] = num(r.sigma);
    if (r.ran) {
      j["family"] = family_json(r.family);
      ok = r.family.audit_passed();
    }
  } else if (o.algo == "connected") {
    const ExtractionResult r = extract_connected_k(a, o.k, o.beta);
    j["subset"] = elements_json(r.subset);
    j["steps"] = std::to_string(r.steps);
    j["energy_before"] = num(r.energy_before);
    j["energy_after"] = num(r.energy_after);
    j["c"] = num(r.c);
    j["step_bound"] = num(r.step_bound);
    j["gamma_bound"] = num(connected_k_gamma(o.k, o.beta, r.steps));
    j["energy_bound_holds"] = r.energy_bound_holds;
    j["step_bound_holds"] = r.step_bound_holds;
    ok = r.energy_bound_holds && r.step_bound_holds;
  } else if (o.algo == "regular-part") {
    const GSet r = regular_part(a);
    j["subset"] = elements_json(r);
    j["size"] = num(r.size());
  } else if (o.algo == "oracle") {
    const DoublingResult r = small_doubling_subset_oracle(a, o.min_frac);
    j["subset"] = elements_json(r.subset);
    j["doubling"] = num(r.doubling);
  } else if (o.algo == "gamma") {
    const GammaResult r = connectedness_gamma(a, o.alpha, o.beta);
    j["gamma"] = num(r.gamma);
    j["witness"] = elements_json(r.witness);
  } else if (o.algo == "scan") {
    const SliceScan r = min_slice_energy_ratio(a);
    j["found"] = r.found;
    if (r.found) {
      j["s"] = r.s;
      j["ratio"] = num(r.ratio);
    }
  } else {
    throw Error("unknown algorithm '" + o.algo + "'");
  }
  j["audit_passed"] = ok;
  emit(o.out, j.dump(2) + "\n");
  return ok ? kExitOk : kExitFailure;
}

SuiteOptions suite_options(const Options& o) {
  SuiteOptions s;
  s.seed = o.seed;
  s.exhaustive_cap = o.exhaustive_cap;
  return s;
}

int run_verify(const Options& o) {
  const GSet a = load_set(o.set);
  const std::optional<GSet> b = o.set2.empty() ? std::nullopt : std::optional<GSet>(load_set(o.set2));
  const SuiteOptions opt = suite_options(o);
  std::vector<CheckResult> results;
  if (o.suite == "identity") {
    results = run_identity_suite(a, b, opt);
  } else if (o.suite == "inequality") {
    results = run_inequality_suite(a, b, opt);
  } else if (o.suite == "ratio") {
    results = run_ratio_report(a, opt);
  } else {
    throw Error("unknown suite '" + o.suite + "'");
  }
  emit(o.out, report_to_json(results));
  if (!o.csv.empty()) write_file(o.csv, report_to_csv(results));
  return any_failed(results) ? kExitFailure : kExitOk;
}

int run_corpus_cmd(const Options& o) {
  CorpusSuites suites{false, false, false};
  for (const std::string& s : o.suites) {
    if (s == "identity") suites.identity = true;
    else if (s == "inequality") suites.inequality = true;
    else if (s == "ratio") suites.ratio = true;
    else throw Error("unknown suite '" + s + "'");
  }
  const auto corpus = build_corpus(o.per_shape, o.seed);
  const CorpusSummary summary = run_corpus(corpus, suites, suite_options(o));
  json j;
  j["instances"] = num(summary.instances);
  j["passed"] = num(summary.passed);
  j["failed"] = num(summary.failed);
  j["skipped"] = num(summary.skipped);
  j["reports"] = num(summary.reports);
  json failures = json::array();
  for (const auto& [label, r] : summary.failures) {
    failures.push_back({{"instance", label}, {"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"note", r.note}});
  }
  j["failures"] = failures;
  emit(o.out, j.dump(2) + "\n");
  return summary.failed ? kExitFailure : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Additive-energy laboratory: exact energies, Gowers norms, extraction procedures and checks"};
  app.require_subcommand(1);
  Options o;

  auto* construct = app.add_subcommand("construct", "Build a structured or random set and write it as JSON");
  construct->add_option("--kind", o.kind, "subspace | ap | h-plus-lambda | dissociated | random | coset-union")
      ->check(CLI::IsMember({"subspace", "ap", "h-plus-lambda", "dissociated", "random", "coset-union"}));
  construct->add_option("--n", o.n, "Dimension of F_2^n");
  construct->add_option("--dim", o.dim, "Subspace dimension");
  construct->add_option("--k", o.k, "Size of Λ (h-plus-lambda, dissociated)");
  construct->add_option("--modulus", o.modulus, "Z_N for ap");
  construct->add_option("--start", o.start);
  construct->add_option("--step", o.step);
  construct->add_option("--len", o.len);
  construct->add_option("--group", o.group, "Comma-separated cyclic factors for random");
  construct->add_option("--density", o.density)->check(CLI::Range(0.0, 1.0));
  construct->add_option("--dims", o.dims, "Block dimensions for coset-union")->delimiter(',');
  construct->add_option("--seed", o.seed);
  construct->add_option("--out", o.out, "Output file (stdout when omitted)");

  auto* energy = app.add_subcommand("energy", "Compute an energy functional of a set");
  energy->add_option("--set", o.set)->required();
  energy->add_option("--set2", o.set2, "Second set for --kind pair");
  energy->add_option("--kind", o.energy_kind, "E | pair | T | sigma | restricted | starred | wiener")
      ->check(CLI::IsMember({"E", "pair", "T", "sigma", "restricted", "starred", "wiener"}));
  energy->add_option("--k", o.order, "Order k");
  energy->add_option("--restrict", o.restrict_to, "Set P for --kind restricted");
  energy->add_option("--out", o.out);

  auto* gowers = app.add_subcommand("gowers", "Unnormalized projected Gowers norm");
  gowers->add_option("--set", o.set)->required();
  gowers->add_option("--d", o.degree)->check(CLI::Range(1, kMaxGowersDegree));
  gowers->add_flag("--normalized", o.normalized, "Also print (count / N^{d+1})^{1/2^d}");
  gowers->add_option("--out", o.out);

  auto* extract = app.add_subcommand("extract", "Run an extraction procedure and audit its guarantee");
  extract->add_option("--set", o.set)->required();
  extract->add_option("--set2", o.set2, "B for translates, D for slices");
  extract->add_option("--algo", o.algo, "translates | slices | random-family | connected | regular-part | oracle | gamma | scan")
      ->check(CLI::IsMember({"translates", "slices", "random-family", "connected", "regular-part", "oracle", "gamma", "scan"}));
  extract->add_option("--k", o.k, "Energy order for connected");
  extract->add_option("--beta", o.beta)->check(CLI::Range(0.0, 1.0));
  extract->add_option("--alpha", o.alpha, "Energy order for gamma");
  extract->add_option("--min-frac", o.min_frac)->check(CLI::Range(0.0, 1.0));
  extract->add_option("--seed", o.seed);
  extract->add_option("--out", o.out);

  auto* verify = app.add_subcommand("verify", "Run a check suite on one set");
  verify->add_option("--set", o.set)->required();
  verify->add_option("--set2", o.set2);
  verify->add_option("--suite", o.suite)->check(CLI::IsMember({"identity", "inequality", "ratio"}));
  verify->add_option("--seed", o.seed);
  verify->add_option("--exhaustive-cap", o.exhaustive_cap)->check(CLI::Range(1, 22));
  verify->add_option("--out", o.out, "JSON report (stdout when omitted)");
  verify->add_option("--csv", o.csv, "Also write the report as CSV");

  auto* corpus = app.add_subcommand("corpus", "Run the suites over the frozen corpus and write a summary");
  corpus->add_option("--per-shape", o.per_shape, "Random sets per group shape");
  corpus->add_option("--suites", o.suites)->delimiter(',');
  corpus->add_option("--seed", o.seed);
  corpus->add_option("--exhaustive-cap", o.exhaustive_cap)->check(CLI::Range(1, 22));
  corpus->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*construct) return run_construct(o);
    if (*energy) return run_energy(o);
    if (*gowers) return run_gowers(o);
    if (*extract) return run_extract(o);
    if (*verify) return run_verify(o);
    if (*corpus) return run_corpus_cmd(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
