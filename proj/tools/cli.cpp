#include "cli.hpp"

#include "ramcalc/belyi.hpp"
#include "ramcalc/certificate.hpp"
#include "ramcalc/chain.hpp"
#include "ramcalc/contract.hpp"
#include "ramcalc/cover.hpp"
#include "ramcalc/manifest.hpp"
#include "ramcalc/relation.hpp"
#include "ramcalc/sunit.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>

namespace ramcalc::cli {

namespace {

// Thrown for malformed arguments discovered after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s) {
  std::vector<Rational> out;
  try {
    for (const auto& t : split(s, ',')) out.push_back(parse_rational(t));
  } catch (const std::exception& e) {
    throw UsageError("malformed list \"" + s + "\": " + e.what());
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<Integer> parse_integers(const std::string& s) {
  std::vector<Integer> out;
  try {
    for (const auto& t : split(s, ',')) out.push_back(parse_integer(t));
  } catch (const std::exception& e) {
    throw UsageError("malformed list \"" + s + "\": " + e.what());
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<std::uint64_t> parse_primes(const std::string& s) {
  std::vector<std::uint64_t> out;
  for (const auto& z : parse_integers(s)) {
    if (z < 2 || !z.fits_ulong_p()) throw UsageError("bad prime " + z.get_str());
    out.push_back(z.get_ui());
  }
  return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

template <class T>
std::string join_str(const std::vector<T>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.get_str());
  return join(s, ",");
}

// --- verify -------------------------------------------------------------

struct VerifyOpts {
  std::string path;
  std::vector<std::string> params;
  bool json = false;
};

std::vector<ParamValues> instances_for(const CertificateManifest& m, const std::vector<std::string>& specs) {
  std::map<std::string, std::vector<long>> lists;
  for (const auto& spec : specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects name=values, got \"" + spec + "\"");
    const std::string name = spec.substr(0, eq);
    if (std::find(m.parameters.begin(), m.parameters.end(), name) == m.parameters.end())
      throw UsageError("certificate " + m.name + " has no parameter " + name);
    for (const auto& z : parse_integers(spec.substr(eq + 1))) {
      if (z < 1 || !z.fits_slong_p()) throw UsageError("parameter values must be positive: " + spec);
      lists[name].push_back(z.get_si());
    }
  }
  std::vector<ParamValues> out{ParamValues{}};
  for (const auto& p : m.parameters) {
    const std::vector<long> vals = lists.count(p) ? lists[p] : std::vector<long>{1, 2, 3, 6};
    std::vector<ParamValues> next;
    for (const auto& base : out)
      for (long v : vals) {
        ParamValues x = base;
        x[p] = v;
        next.push_back(x);
      }
    out = std::move(next);
  }
  return out;
}

int verify_store(const VerifyOpts& o, std::ostream& out) {
  const RuleStore store = RuleStore::load(o.path);
  const auto failures = store.audit(std::filesystem::path(o.path).parent_path().string());
  if (o.json) {
    Json j;
    j["rules"] = store.size();
    j["failures"] = failures;
    j["pass"] = failures.empty();
    out << j.dump(2) << "\n";
  } else {
    for (const auto& f : failures) out << "FAIL " << f << "\n";
    out << (failures.empty() ? "PASS" : "FAIL") << " " << store.size() << " rules\n";
  }
  return failures.empty() ? kPass : kFail;
}

int cmd_verify(const VerifyOpts& o, std::ostream& out) {
  const std::string raw = read_text_file(o.path);
  if (raw.rfind("#ramcalc-store ", 0) == 0) return verify_store(o, out);
  const ManifestText text = parse_manifest_text(raw);
  if (text.kind == "chain") {
    if (!o.params.empty()) throw UsageError("chains take no parameters");
    const ChainReport r = verify_chain(parse_chain(text.body));
    if (o.json)
      out << r.to_json().dump(2) << "\n";
    else
      out << r.tree.render() << (r.passed() ? "PASS" : "FAIL") << " " << r.name << "\n";
    return r.passed() ? kPass : kFail;
  }
  if (text.kind == "cert") {
    const CertificateManifest m = load_certificate(o.path);
    const CertificateReport r = verify_certificate(m, instances_for(m, o.params));
    if (o.json)
      out << r.to_json().dump(2) << "\n";
    else
      out << r.tree.render() << (r.passed() ? "PASS" : "FAIL") << " " << r.name << "\n";
    return r.passed() ? kPass : kFail;
  }
  throw ManifestError("cannot verify manifests of kind \"" + text.kind + "\"");
}

// --- belyi --------------------------------------------------------------

int cmd_belyi_exponents(const std::string& tuple, std::ostream& out) {
  const auto support = parse_rationals(tuple);
  std::vector<Integer> e;
  try {
    e = vandermonde_exponents(support);
  } catch (const DegenerateSupport& ex) {
    throw UsageError(ex.what());
  }
  out << "exponents " << join_str(e) << "\n";
  for (std::size_t i = 0; i < e.size(); ++i) {
    Integer a = abs(e[i]);
    std::vector<Integer> small{2, 3, 5, 7, 11, 13};
    out << "  " << support[i].get_str() << ": " << e[i].get_str() << " = " << (sgn(e[i]) < 0 ? "-" : "")
        << render_factorization(factor_over_primes(a, small)) << "\n";
  }
  return kPass;
}

void print_verification(const BelyiVerification& v, std::ostream& out) {
  out << "distinct " << v.distinct << "\nsum_zero " << v.sum_zero << "\ndlog_numerator " << to_string(v.numerator)
      << "\nconstant_nonzero " << v.constant_nonzero << "\ndegree " << v.degree.get_str() << "\ninfinity_index "
      << v.infinity_index << "\nfibers_balanced " << v.fibers_balanced << "\nriemann_hurwitz " << v.riemann_hurwitz
      << "\n";
}

int cmd_belyi_verify(const std::string& file, const std::string& tuple, const std::string& exps, std::ostream& out) {
  if (!file.empty()) {
    const ChainManifest m = load_chain(file);
    bool ok = true;
    int seen = 0;
    for (const auto& s : m.steps) {
      if (!s.tuple) continue;
      ++seen;
      const BelyiVerification v = verify_belyi(*s.tuple);
      out << s.name << " [" << s.tag << "] " << (v.ok() ? "pass" : "FAIL") << "\n";
      print_verification(v, out);
      ok = ok && v.ok();
    }
    if (seen == 0) throw UsageError(file + " has no belyi-form steps");
    return ok ? kPass : kFail;
  }
  if (tuple.empty() || exps.empty()) throw UsageError("belyi verify needs a chain file or --tuple and --exponents");
  BelyiTuple t{parse_rationals(tuple), parse_integers(exps)};
  if (t.support.size() != t.exponents.size()) throw UsageError("tuple and exponents differ in length");
  const BelyiVerification v = verify_belyi(t);
  print_verification(v, out);
  out << (v.ok() ? "pass" : "FAIL") << "\n";
  return v.ok() ? kPass : kFail;
}

int cmd_belyi_search(int k, const std::string& primes, long box, std::size_t budget, bool serial, std::ostream& out) {
  SearchParams p;
  p.k = k;
  p.primes = parse_primes(primes);
  p.box = box;
  p.budget = budget;
  const auto found = serial ? search_smooth_tuples_serial(p) : search_smooth_tuples(p);
  for (const auto& t : found) out << join_str(t.support) << " : " << join_str(t.exponents) << "\n";
  out << "count " << found.size() << "\n";
  return kPass;
}

// --- contract -----------------------------------------------------------

std::string degrees(const std::vector<int>& d) {
  std::vector<std::string> s;
  for (int x : d) s.push_back(std::to_string(x));
  return "[" + join(s, ",") + "]";
}

ReportNode contract_report(const ContractionResult& r) {
  ReportNode root = info_node("contraction of " + r.initial.str());
  for (std::size_t i = 0; i < r.steps.size(); ++i) {
    const ReductionStep& s = r.steps[i];
    ReportNode n = info_node("step " + std::to_string(i + 1),
                             "f = " + to_string(s.f) + ", m = " + std::to_string(s.m) + ", k = " + std::to_string(s.k) +
                                 ", r = " + std::to_string(s.r));
    std::vector<std::string> ts;
    for (const auto& x : s.targets) ts.push_back(x.get_str());
    n.add(info_node("targets", join(ts, ", ") + " (attempt " + std::to_string(s.attempts) + ")"));
    n.add(info_node("g", to_string(s.g)));
    n.add(info_node("F", "degree " + std::to_string(s.F.degree()) + ", coefficients up to " +
                             std::to_string(s.max_coeff_bits) + " bits"));
    n.add(check_node(s.checks.derivative_vanishes, "F'(x_i) = 0"));
    n.add(check_node(s.checks.squarefree_derivative, "F' squarefree"));
    n.add(check_node(s.checks.degree_power_of_two, "deg F = 2^k", std::to_string(s.F.degree())));
    n.add(check_node(s.checks.finite_indices_two, "index 2 at every target"));
    n.add(check_node(s.checks.infinity_index, "index 2^k at infinity", std::to_string(1L << s.k)));
    n.add(check_node(s.checks.measure_drops, "degree measure drops",
                     degrees(s.degrees_before) + " -> " + degrees(s.degrees_after)));
    root.add(std::move(n));
  }
  root.add(check_node(r.final_set.all_rational(), "final set rational", r.final_set.str()));
  root.add(check_node(r.index_certificate, "composite indices are powers of 2",
                      "every index divides 2^" + std::to_string(r.index_exponent)));
  return root;
}

int cmd_contract(const std::vector<std::string>& polys, std::optional<std::size_t> cap, int attempts, bool carry,
                 bool json, std::ostream& out) {
  std::vector<QPoly> ps;
  for (const auto& s : polys) {
    QPoly p;
    try {
      p = parse_qpoly(s);
    } catch (const std::exception& e) {
      throw UsageError("cannot parse polynomial \"" + s + "\": " + e.what());
    }
    if (p.degree() < 1) throw UsageError("constant polynomial \"" + s + "\"");
    auto irr = is_irreducible(p);
    if (irr && !*irr) out << "note: " << s << " is reducible; its factors are contracted together\n";
    ps.push_back(p);
  }
  ContractOptions o;
  o.height_cap = cap;
  o.max_attempts = attempts;
  o.carry_ramification = carry;
  const AlgebraicPointSet s = AlgebraicPointSet::from_polynomials(ps, false);
  const ContractionResult r = contract_to_rational(s, o);
  const ReportNode tree = contract_report(r);
  if (json)
    out << tree.to_json().dump(2) << "\n";
  else
    out << tree.render() << (r.passed() ? "PASS" : "FAIL") << " " << r.steps.size() << " steps\n";
  return r.passed() ? kPass : kFail;
}

// --- relation -----------------------------------------------------------

RuleStore open_store(const std::string& path) { return path.empty() ? bundled_rules() : RuleStore::load(path); }

CurveNode node_arg(const std::string& s) {
  try {
    return CurveNode::parse(s);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

int cmd_relation_query(const std::string& store_path, const std::string& src, const std::string& dst, int bound,
                       bool full, std::ostream& out) {
  const RuleStore store = open_store(store_path);
  auto t = reachable(store, node_arg(src), node_arg(dst), bound);
  if (!t) {
    out << src << " => " << dst << ": not reachable within " << bound << " steps\n";
    return kFail;
  }
  if (full)
    out << t->str();
  else
    out << src << " => " << dst << ": " << t->steps.size() << " steps\n" << t->str();
  return kPass;
}

std::vector<CurveNode> smooth_nodes(const std::string& primes, const std::string& range) {
  const auto ps = parse_primes(primes);
  const auto r = parse_integers(range);
  if (r.size() != 2 || r[0] < 1 || r[1] < r[0]) throw UsageError("--range expects lo,hi");
  std::vector<CurveNode> out;
  for (long n = r[0].get_si(); n <= r[1].get_si(); ++n)
    if (is_smooth_value(n, ps)) out.push_back(CurveNode::c(n));
  return out;
}

int cmd_relation_classes(const std::string& store_path, const std::vector<std::string>& nodes,
                         const std::string& primes, const std::string& range, int bound, std::ostream& out) {
  const RuleStore store = open_store(store_path);
  std::vector<CurveNode> ns;
  for (const auto& s : nodes) ns.push_back(node_arg(s));
  if (!primes.empty()) {
    auto more = smooth_nodes(primes, range.empty() ? "1,60" : range);
    ns.insert(ns.end(), more.begin(), more.end());
  }
  if (ns.empty()) throw UsageError("no nodes given");
  const auto classes = equivalence_classes(store, ns, bound);
  for (const auto& c : classes) {
    std::vector<std::string> s;
    for (const auto& n : c) s.push_back(n.str());
    out << "{" << join(s, ", ") << "}\n";
  }
  out << "classes " << classes.size() << "\n";
  return kPass;
}

int cmd_relation_add(const std::string& store_path, const std::string& rule_text, const std::string& base_dir,
                     std::ostream& out) {
  if (store_path.empty()) throw UsageError("relation add needs --store");
  std::string text = rule_text;
  if (!text.empty() && text[0] == '@') text = read_text_file(text.substr(1));
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ManifestError(std::string("rule: ") + e.what());
  }
  const EdgeRule rule = EdgeRule::from_json(j);
  RuleStore store = std::filesystem::exists(store_path) ? RuleStore::load(store_path) : RuleStore{};
  try {
    const bool added = store.add_rule(rule, base_dir);
    store.save(store_path);
    out << (added ? "added " : "duplicate ") << rule.id << " " << rule.hash() << "\n";
  } catch (const UnverifiedProvenance& e) {
    out << "rejected: " << e.what() << "\n";
    return kFail;
  }
  return kPass;
}

// --- sunit --------------------------------------------------------------

int cmd_sunit(const std::string& what, const std::string& primes, std::uint64_t height, bool serial,
              std::ostream& out) {
  const auto ps = parse_primes(primes);
  std::size_t count = 0;
  try {
    if (what == "smooth") {
      const auto s = smooth_enum(ps, height);
      for (auto v : s.values) out << v << "\n";
      count = s.values.size();
    } else if (what == "units") {
      const auto v = serial ? unit_equation_solutions_serial(ps, height) : unit_equation_solutions(ps, height);
      for (const auto& t : v) out << to_string(t) << "\n";
      count = v.size();
    } else if (what == "prop24") {
      const auto v = serial ? prop24_pairs_serial(ps, height) : prop24_pairs(ps, height);
      for (const auto& p : v) out << to_string(p) << "\n";
      count = v.size();
    } else if (what == "thm26") {
      const auto v = thm26_family(ps, height);
      for (const auto& t : v) out << to_string(t) << "\n";
      count = v.size();
    } else {
      throw UsageError("unknown sunit listing \"" + what + "\"");
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  out << "count " << count << "\n";
  return kPass;
}

// --- genus --------------------------------------------------------------

int cmd_genus(long n, std::ostream& out) {
  if (n < 1) throw UsageError("genus needs n >= 1");
  out << rh_genus(x_projection_profile(n)) << "\n";
  return kPass;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification of ramification data for covers of the projective line", "ramcalc"};
  app.require_subcommand(1);
  bool deterministic = false;
  app.add_flag("--deterministic", deterministic, "Single-threaded run");

  VerifyOpts vo;
  auto* verify = app.add_subcommand("verify", "Verify a chain, certificate or rule store");
  verify->add_option("path", vo.path)->required();
  verify->add_option("--param", vo.params, "name=v1,v2,... (default 1,2,3,6)");
  verify->add_flag("--json", vo.json);
  verify->add_flag("--deterministic", deterministic);

  auto* belyi = app.add_subcommand("belyi", "Belyi maps of the form prod (z - n_i)^r_i");
  belyi->require_subcommand(1);
  std::string tuple, exps, bfile, bprimes = "2,3";
  int bk = 4;
  long bbox = 10;
  std::size_t bbudget = 1000000;
  bool bserial = false;
  auto* bexp = belyi->add_subcommand("exponents", "Normalised Vandermonde exponents of a support");
  bexp->add_option("tuple", tuple)->required();
  auto* bsearch = belyi->add_subcommand("search", "Supports in a box with smooth exponents");
  bsearch->add_option("--k", bk)->check(CLI::Range(2, 12));
  bsearch->add_option("--primes", bprimes);
  bsearch->add_option("--box", bbox)->check(CLI::Range(1L, 100000L));
  bsearch->add_option("--budget", bbudget);
  bsearch->add_flag("--serial", bserial);
  auto* bver = belyi->add_subcommand("verify", "Check a support with exponents, or the belyi-form steps of a chain");
  bver->add_option("file", bfile);
  bver->add_option("--tuple", tuple);
  bver->add_option("--exponents", exps);

  std::vector<std::string> polys;
  std::size_t cap = 0;
  int attempts = 1000;
  bool carry = false, cjson = false;
  auto* contract = app.add_subcommand("contract", "Contract algebraic points to rational ones by 2-power maps");
  contract->add_option("polys", polys, "Minimal polynomials in z")->required();
  contract->add_option("--height-cap", cap, "Abort when coefficients exceed this many bits");
  contract->add_option("--max-attempts", attempts)->check(CLI::Range(1, 1000000));
  contract->add_flag("--carry-ramification", carry, "Keep the critical points of each step in the set");
  contract->add_flag("--json", cjson);

  auto* relation = app.add_subcommand("relation", "The lies-over relation between curves");
  relation->require_subcommand(1);
  std::string store_path, src, dst, rule_text, base_dir, rprimes, rrange;
  std::vector<std::string> rnodes;
  int bound = 64;
  relation->add_option("--store", store_path, "Rule store (default: bundled)");
  relation->add_option("--bound", bound, "Maximum derivation length")->check(CLI::Range(1, 4096));
  auto* radd = relation->add_subcommand("add", "Add a rule after checking its provenance");
  radd->add_option("rule", rule_text, "Rule JSON, or @file")->required();
  radd->add_option("--base-dir", base_dir);
  auto* rquery = relation->add_subcommand("query", "Is there a derivation?");
  rquery->add_option("source", src)->required();
  rquery->add_option("target", dst)->required();
  auto* rtrace = relation->add_subcommand("trace", "Print a shortest derivation with rule tags");
  rtrace->add_option("source", src)->required();
  rtrace->add_option("target", dst)->required();
  auto* rclasses = relation->add_subcommand("classes", "Mutual reachability classes");
  rclasses->add_option("nodes", rnodes);
  rclasses->add_option("--smooth", rprimes, "Add C(n) for n smooth over these primes");
  rclasses->add_option("--range", rrange, "lo,hi for --smooth");
  for (auto* sc : {radd, rquery, rtrace, rclasses}) {
    sc->add_option("--store", store_path);
    sc->add_option("--bound", bound)->check(CLI::Range(1, 4096));
  }

  auto* sunit = app.add_subcommand("sunit", "Smooth numbers and unit equations");
  std::string swhat, sprimes = "2,3";
  std::uint64_t sheight = 100;
  bool sserial = false;
  sunit->add_option("listing", swhat, "smooth | units | prop24 | thm26")->required();
  sunit->add_option("--primes", sprimes);
  sunit->add_option("--height", sheight)->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 40));
  sunit->add_flag("--serial", sserial);

  long gn = 0;
  auto* genus = app.add_subcommand("genus", "Genus of C_n from its x-projection profile");
  genus->add_option("n", gn)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  if (deterministic) omp_set_num_threads(1);

  try {
    if (verify->parsed()) return cmd_verify(vo, out);
    if (bexp->parsed()) return cmd_belyi_exponents(tuple, out);
    if (bsearch->parsed()) return cmd_belyi_search(bk, bprimes, bbox, bbudget, bserial, out);
    if (bver->parsed()) return cmd_belyi_verify(bfile, tuple, exps, out);
    if (contract->parsed())
      return cmd_contract(polys, cap ? std::optional<std::size_t>(cap) : std::nullopt, attempts, carry, cjson, out);
    if (radd->parsed()) return cmd_relation_add(store_path, rule_text, base_dir, out);
    if (rquery->parsed()) return cmd_relation_query(store_path, src, dst, bound, false, out);
    if (rtrace->parsed()) return cmd_relation_query(store_path, src, dst, bound, true, out);
    if (rclasses->parsed()) return cmd_relation_classes(store_path, rnodes, rprimes, rrange, bound, out);
    if (sunit->parsed()) return cmd_sunit(swhat, sprimes, sheight, sserial, out);
    if (genus->parsed()) return cmd_genus(gn, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ManifestError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const StrategyExhausted& e) {
    err << "strategy exhausted: " << e.what() << "\n";
    return kFail;
  } catch (const HeightCapExceeded& e) {
    err << "height cap: " << e.what() << "\n";
    return kFail;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace ramcalc::cli
