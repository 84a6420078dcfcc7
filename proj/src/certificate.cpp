#include "ramcalc/certificate.hpp"

#include "ramcalc/chain.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <set>

namespace ramcalc {

std::string to_string(ArrowKind k) {
  switch (k) {
    case ArrowKind::Profile: return "profile";
    case ArrowKind::YProjection: return "y_projection";
    case ArrowKind::CurveMap: return "curve_map";
    case ArrowKind::Unramified: return "unramified";
    case ArrowKind::Compose: return "compose";
    case ArrowKind::Square: return "square";
    case ArrowKind::FromChain: return "from_chain";
  }
  return "?";
}

namespace {

ArrowKind arrow_kind(const std::string& s) {
  for (ArrowKind k : {ArrowKind::Profile, ArrowKind::YProjection, ArrowKind::CurveMap, ArrowKind::Unramified,
                      ArrowKind::Compose, ArrowKind::Square, ArrowKind::FromChain})
    if (to_string(k) == s) return k;
  throw ManifestError("unknown arrow kind \"" + s + "\"");
}

ParamIndex json_param(const Json& j, const std::string& what) {
  try {
    if (j.is_number_integer()) return ParamIndex::parse(std::to_string(j.get<long long>()));
    if (j.is_string()) return ParamIndex::parse(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw ManifestError(what + ": " + e.what());
  }
  throw ManifestError(what + ": expected an index such as \"8n\"");
}

std::optional<ParamIndex> opt_param(const Json& obj, const std::string& key, const std::string& what) {
  if (!obj.contains(key)) return std::nullopt;
  return json_param(obj.at(key), what + "." + key);
}

std::string opt_string(const Json& obj, const std::string& key) {
  if (!obj.contains(key)) return {};
  return json_string(obj.at(key), key);
}

std::vector<std::string> string_list(const Json& obj, const std::string& key) {
  std::vector<std::string> out;
  if (!obj.contains(key)) return out;
  const Json& a = obj.at(key);
  if (!a.is_array()) throw ManifestError(key + ": expected an array");
  for (const auto& x : a) out.push_back(json_string(x, key));
  return out;
}

std::vector<CertAssumption> assumption_list(const Json& body, const std::string& key) {
  std::vector<CertAssumption> out;
  if (!body.contains(key)) return out;
  for (const auto& a : body.at(key)) {
    CertAssumption x{json_string(require(a, "id"), key + ".id"), json_string(require(a, "tag"), key + ".tag"),
                     json_string(require(a, "text"), key + ".text")};
    if (x.tag.empty()) throw ManifestError(key + " " + x.id + ": empty tag");
    out.push_back(std::move(x));
  }
  return out;
}

Json param_json(const ParamIndex& p) { return p.str(); }

Json assumption_json(const std::vector<CertAssumption>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(Json{{"id", x.id}, {"tag", x.tag}, {"text", x.text}});
  return a;
}

}  // namespace

CertificateManifest parse_certificate(const Json& body) {
  CertificateManifest m;
  m.name = json_string(require(body, "name"), "name");
  m.tag = opt_string(body, "tag");
  m.statement = opt_string(body, "statement");
  m.parameters = string_list(body, "parameters");
  for (const auto& p : m.parameters)
    if (p.size() != 1 || !std::isalpha(static_cast<unsigned char>(p[0])))
      throw ManifestError("parameter names are single letters, got \"" + p + "\"");

  std::set<std::string> node_names;
  for (const auto& n : require(body, "nodes")) {
    CertNode node;
    node.name = json_string(require(n, "name"), "nodes.name");
    if (n.contains("curve")) {
      const std::string c = json_string(n.at("curve"), "nodes.curve");
      if (c.size() < 4 || c.rfind("C(", 0) != 0 || c.back() != ')')
        throw ManifestError("node " + node.name + ": curve must look like C(8n)");
      node.hyperelliptic = json_param(c.substr(2, c.size() - 3), "node " + node.name);
    }
    if (n.contains("genus")) node.genus = json_integer(n.at("genus"), "nodes.genus").get_si();
    node.text = opt_string(n, "text");
    if (!node_names.insert(node.name).second) throw ManifestError("node " + node.name + " listed twice");
    m.nodes.push_back(std::move(node));
  }

  std::set<std::string> arrow_names;
  auto define = [&](const std::string& name) {
    if (name.empty() || !arrow_names.insert(name).second) throw ManifestError("arrow \"" + name + "\" defined twice");
  };
  auto known_node = [&](const std::string& name, const std::string& arrow) {
    if (!node_names.count(name)) throw ManifestError("arrow " + arrow + ": unknown node \"" + name + "\"");
  };
  auto known_arrow = [&](const std::string& name, const std::string& arrow) {
    if (!arrow_names.count(name)) throw ManifestError("arrow " + arrow + ": \"" + name + "\" is not defined before use");
  };
  for (const auto& a : require(body, "arrows")) {
    ArrowSpec s;
    s.name = json_string(require(a, "name"), "arrows.name");
    s.kind = arrow_kind(json_string(require(a, "kind"), "arrow " + s.name + ".kind"));
    s.tag = opt_string(a, "tag");
    s.justify = string_list(a, "justify");
    s.corroborated_by = string_list(a, "corroborated_by");
    const std::string what = "arrow " + s.name;
    if (s.kind != ArrowKind::Square) {
      define(s.name);
      if (s.kind != ArrowKind::Compose) {
        s.source = json_string(require(a, "source"), what + ".source");
        s.target = json_string(require(a, "target"), what + ".target");
        known_node(s.source, s.name);
        known_node(s.target, s.name);
      }
    }
    switch (s.kind) {
      case ArrowKind::Profile:
      case ArrowKind::Unramified:
        s.degree = opt_param(a, "degree", what);
        if (a.contains("complete")) s.complete = a.at("complete").get<bool>();
        if (a.contains("fibers")) {
          if (s.kind == ArrowKind::Unramified) throw ManifestError(what + ": unramified arrows carry no fibers");
          for (const auto& [base, entries] : a.at("fibers").items()) {
            std::vector<EntrySpec> f;
            for (const auto& e : entries) {
              EntrySpec es;
              es.label = json_string(require(e, "label"), what + ".label");
              es.index = opt_param(e, "index", what);
              es.multiple_of = opt_param(e, "multiple_of", what);
              es.divides = opt_param(e, "divides", what);
              es.count = opt_param(e, "count", what);
              if (es.index && (es.multiple_of || es.divides))
                throw ManifestError(what + ": give either index or bounds for " + es.label);
              f.push_back(std::move(es));
            }
            s.fibers.emplace_back(base, std::move(f));
          }
        }
        break;
      case ArrowKind::YProjection:
        s.m = json_param(require(a, "m"), what + ".m");
        if (a.contains("relabel"))
          for (const auto& [k, v] : a.at("relabel").items()) s.relabel[k] = json_string(v, what + ".relabel");
        s.sheets = opt_string(a, "sheets");
        break;
      case ArrowKind::CurveMap:
        s.m = opt_param(a, "m", what);
        s.map = json_string(require(a, "map"), what + ".map");
        s.bases = string_list(a, "bases");
        if (s.bases.empty()) throw ManifestError(what + ": bases required");
        break;
      case ArrowKind::Compose:
        s.outer = json_string(require(a, "outer"), what + ".outer");
        s.inner = json_string(require(a, "inner"), what + ".inner");
        known_arrow(s.outer, s.name);
        known_arrow(s.inner, s.name);
        break;
      case ArrowKind::Square:
        s.left = json_string(require(a, "left"), what + ".left");
        s.right = json_string(require(a, "right"), what + ".right");
        s.source = json_string(require(a, "top"), what + ".top");
        known_arrow(s.left, s.name);
        known_arrow(s.right, s.name);
        known_node(s.source, s.name);
        s.left_proj = json_string(require(a, "left_proj"), what + ".left_proj");
        s.right_proj = json_string(require(a, "right_proj"), what + ".right_proj");
        define(s.left_proj);
        define(s.right_proj);
        break;
      case ArrowKind::FromChain:
        s.chain = json_string(require(a, "chain"), what + ".chain");
        break;
    }
    m.arrows.push_back(std::move(s));
  }

  if (body.contains("facts")) {
    for (const auto& f : body.at("facts")) {
      CertFact x;
      x.id = json_string(require(f, "id"), "facts.id");
      x.kind = json_string(require(f, "kind"), "fact " + x.id + ".kind");
      if (x.kind == "division_zeroset") {
        x.a = json_rational(require(f, "a"), "fact " + x.id + ".a");
        x.b = json_rational(require(f, "b"), "fact " + x.id + ".b");
        x.m = static_cast<int>(json_integer(require(f, "m"), "fact " + x.id + ".m").get_si());
        x.expect = opt_string(f, "expect");
        if (f.contains("contains"))
          for (const auto& r : f.at("contains")) x.contains.push_back(json_rational(r, "fact " + x.id + ".contains"));
      } else if (x.kind == "chain_trace") {
        x.chain = json_string(require(f, "chain"), "fact " + x.id + ".chain");
        x.start = json_string(require(f, "start"), "fact " + x.id + ".start");
        x.expect_in = string_list(f, "expect_in");
      } else {
        throw ManifestError("fact " + x.id + ": unknown kind \"" + x.kind + "\"");
      }
      m.facts.push_back(std::move(x));
    }
  }
  if (body.contains("claims")) {
    for (const auto& c : body.at("claims")) {
      CertClaim x;
      x.kind = json_string(require(c, "kind"), "claims.kind");
      x.arrow = json_string(require(c, "arrow"), "claims.arrow");
      if (!arrow_names.count(x.arrow)) throw ManifestError("claim on unknown arrow \"" + x.arrow + "\"");
      x.base = opt_string(c, "base");
      x.index = opt_param(c, "index", "claim");
      x.multiple_of = opt_param(c, "multiple_of", "claim");
      x.bases = string_list(c, "bases");
      x.tag = opt_string(c, "tag");
      if (x.kind != "unramified" && x.kind != "fiber" && x.kind != "branch")
        throw ManifestError("unknown claim kind \"" + x.kind + "\"");
      m.claims.push_back(std::move(x));
    }
  }
  m.assumptions = assumption_list(body, "assumptions");
  m.hypotheses = assumption_list(body, "hypotheses");

  const Json& c = require(body, "conclusion");
  m.conclusion.source = json_string(require(c, "source"), "conclusion.source");
  m.conclusion.target = json_string(require(c, "target"), "conclusion.target");
  m.conclusion.unramified = string_list(c, "unramified");
  m.conclusion.onto = json_string(require(c, "onto"), "conclusion.onto");
  m.conclusion.continues_with = opt_string(c, "continues_with");
  for (const auto& a : m.conclusion.unramified)
    if (!arrow_names.count(a)) throw ManifestError("conclusion: unknown arrow \"" + a + "\"");
  if (!arrow_names.count(m.conclusion.onto)) throw ManifestError("conclusion: unknown arrow \"" + m.conclusion.onto + "\"");
  return m;
}

Json render_certificate(const CertificateManifest& m) {
  Json j;
  j["name"] = m.name;
  if (!m.tag.empty()) j["tag"] = m.tag;
  if (!m.statement.empty()) j["statement"] = m.statement;
  if (!m.parameters.empty()) j["parameters"] = m.parameters;
  Json nodes = Json::array();
  for (const auto& n : m.nodes) {
    Json x;
    x["name"] = n.name;
    if (n.hyperelliptic) x["curve"] = "C(" + n.hyperelliptic->str() + ")";
    if (n.genus) x["genus"] = *n.genus;
    if (!n.text.empty()) x["text"] = n.text;
    nodes.push_back(x);
  }
  j["nodes"] = nodes;
  Json arrows = Json::array();
  for (const auto& s : m.arrows) {
    Json a;
    a["name"] = s.name;
    a["kind"] = to_string(s.kind);
    if (!s.tag.empty()) a["tag"] = s.tag;
    if (s.kind != ArrowKind::Square && s.kind != ArrowKind::Compose) {
      a["source"] = s.source;
      a["target"] = s.target;
    }
    switch (s.kind) {
      case ArrowKind::Profile:
      case ArrowKind::Unramified: {
        if (s.degree) a["degree"] = param_json(*s.degree);
        if (!s.complete) a["complete"] = false;
        if (!s.fibers.empty()) {
          Json fib = Json::object();
          for (const auto& [base, entries] : s.fibers) {
            Json arr = Json::array();
            for (const auto& e : entries) {
              Json x;
              x["label"] = e.label;
              if (e.index) x["index"] = param_json(*e.index);
              if (e.multiple_of) x["multiple_of"] = param_json(*e.multiple_of);
              if (e.divides) x["divides"] = param_json(*e.divides);
              if (e.count) x["count"] = param_json(*e.count);
              arr.push_back(x);
            }
            fib[base] = arr;
          }
          a["fibers"] = fib;
        }
        break;
      }
      case ArrowKind::YProjection:
        a["m"] = param_json(*s.m);
        if (!s.relabel.empty()) a["relabel"] = s.relabel;
        if (!s.sheets.empty()) a["sheets"] = s.sheets;
        break;
      case ArrowKind::CurveMap:
        if (s.m) a["m"] = param_json(*s.m);
        a["map"] = s.map;
        a["bases"] = s.bases;
        break;
      case ArrowKind::Compose:
        a["outer"] = s.outer;
        a["inner"] = s.inner;
        break;
      case ArrowKind::Square:
        a["left"] = s.left;
        a["right"] = s.right;
        a["top"] = s.source;
        a["left_proj"] = s.left_proj;
        a["right_proj"] = s.right_proj;
        break;
      case ArrowKind::FromChain:
        a["chain"] = s.chain;
        break;
    }
    if (!s.justify.empty()) a["justify"] = s.justify;
    if (!s.corroborated_by.empty()) a["corroborated_by"] = s.corroborated_by;
    arrows.push_back(a);
  }
  j["arrows"] = arrows;
  if (!m.facts.empty()) {
    Json facts = Json::array();
    for (const auto& f : m.facts) {
      Json x;
      x["id"] = f.id;
      x["kind"] = f.kind;
      if (f.kind == "division_zeroset") {
        x["a"] = to_json(f.a);
        x["b"] = to_json(f.b);
        x["m"] = f.m;
        if (!f.expect.empty()) x["expect"] = f.expect;
        if (!f.contains.empty()) {
          Json c = Json::array();
          for (const auto& r : f.contains) c.push_back(to_json(r));
          x["contains"] = c;
        }
      } else {
        x["chain"] = f.chain;
        x["start"] = f.start;
        x["expect_in"] = f.expect_in;
      }
      facts.push_back(x);
    }
    j["facts"] = facts;
  }
  if (!m.claims.empty()) {
    Json claims = Json::array();
    for (const auto& c : m.claims) {
      Json x;
      x["kind"] = c.kind;
      x["arrow"] = c.arrow;
      if (!c.base.empty()) x["base"] = c.base;
      if (c.index) x["index"] = param_json(*c.index);
      if (c.multiple_of) x["multiple_of"] = param_json(*c.multiple_of);
      if (!c.bases.empty()) x["bases"] = c.bases;
      if (!c.tag.empty()) x["tag"] = c.tag;
      claims.push_back(x);
    }
    j["claims"] = claims;
  }
  if (!m.assumptions.empty()) j["assumptions"] = assumption_json(m.assumptions);
  if (!m.hypotheses.empty()) j["hypotheses"] = assumption_json(m.hypotheses);
  Json c;
  c["source"] = m.conclusion.source;
  c["target"] = m.conclusion.target;
  c["unramified"] = m.conclusion.unramified;
  c["onto"] = m.conclusion.onto;
  if (!m.conclusion.continues_with.empty()) c["continues_with"] = m.conclusion.continues_with;
  j["conclusion"] = c;
  return j;
}

CertificateManifest load_certificate(const std::string& path) {
  CertificateManifest m = parse_certificate(read_manifest_body(path, "cert"));
  m.base_dir = std::filesystem::path(path).parent_path().string();
  return m;
}

bool same_certificate(const CertificateManifest& a, const CertificateManifest& b) {
  return render_certificate(a) == render_certificate(b);
}

Json CertificateReport::to_json() const {
  Json j;
  j["name"] = name;
  j["pass"] = passed();
  j["assumptions"] = assumptions;
  Json inst = Json::array();
  for (const auto& i : instances) {
    Json x;
    x["values"] = i.values;
    x["pass"] = i.tree.passed();
    inst.push_back(x);
  }
  j["instances"] = inst;
  j["report"] = tree.to_json();
  return j;
}

std::vector<ParamValues> parameter_grid(const CertificateManifest& m, const std::vector<long>& values) {
  std::vector<ParamValues> out{ParamValues{}};
  for (const auto& p : m.parameters) {
    std::vector<ParamValues> next;
    for (const auto& base : out) {
      for (long v : values) {
        ParamValues x = base;
        x[p] = v;
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

namespace {

std::string values_str(const ParamValues& v) {
  if (v.empty()) return "no parameters";
  std::string s;
  for (const auto& [k, x] : v) s += (s.empty() ? "" : ", ") + k + "=" + std::to_string(x);
  return s;
}

std::string resolve_path(const CertificateManifest& m, const std::string& file) {
  if (std::filesystem::path(file).is_absolute()) return file;
  const std::string local = (std::filesystem::path(m.base_dir.empty() ? "." : m.base_dir) / file).string();
  if (std::filesystem::exists(local)) return local;
  return data_path(file);
}

long to_long(const Integer& z, const std::string& what) {
  if (!z.fits_slong_p()) throw InconsistentProfile(what + " too large");
  return z.get_si();
}

P1Point parse_base_point(const std::string& s) {
  if (s == "inf") return P1Point::infinity();
  return P1Point::rational(parse_rational(s), NumberField::rationals());
}

// Chains are loaded and verified once per process and per path.
const std::pair<ChainManifest, ChainReport>& chain_entry(const std::string& path) {
  static std::map<std::string, std::pair<ChainManifest, ChainReport>> cache;
  const std::pair<ChainManifest, ChainReport>* out = nullptr;
#pragma omp critical(ramcalc_chain_cache)
  {
    auto it = cache.find(path);
    if (it == cache.end()) {
      ChainManifest cm = load_chain(path);
      ChainReport r = verify_chain(cm);
      it = cache.emplace(path, std::make_pair(std::move(cm), std::move(r))).first;
    }
    out = &it->second;
  }
  return *out;
}

class InstanceVerifier {
 public:
  InstanceVerifier(const CertificateManifest& m, const ParamValues& v) : m_(m), values_(v) {
    for (const auto& a : m.assumptions) known_ids_.insert(a.id);
    for (const auto& a : m.hypotheses) known_ids_.insert(a.id);
    for (const auto& f : m.facts) known_ids_.insert(f.id);
    for (const auto& n : m.nodes) nodes_[n.name] = &n;
  }

  InstanceReport run() {
    InstanceReport out;
    out.values = values_;
    ReportNode root = info_node("instance " + values_str(values_));
    ReportNode facts = info_node("facts");
    for (const auto& f : m_.facts) facts.add(check_fact(f));
    ReportNode arrows = info_node("arrows");
    for (const auto& s : m_.arrows) arrows.add(build_arrow(s));
    ReportNode claims = info_node("claims");
    for (const auto& c : m_.claims) claims.add(check_claim(c));
    ReportNode assumed = info_node("assumptions");
    for (const auto& a : m_.assumptions) assumed.add(assumed_node(a.id, a.text, a.tag));
    ReportNode hyp = info_node("hypotheses");
    for (const auto& a : m_.hypotheses) hyp.add(info_node(a.id, a.text, a.tag));
    if (!m_.facts.empty()) root.add(std::move(facts));
    root.add(std::move(arrows));
    if (!m_.claims.empty()) root.add(std::move(claims));
    if (!m_.assumptions.empty()) root.add(std::move(assumed));
    if (!m_.hypotheses.empty()) root.add(std::move(hyp));
    root.add(check_conclusion());
    root.verdict = root.has_failure() ? Verdict::Fail : Verdict::Pass;
    out.tree = std::move(root);
    out.profiles = profiles_;
    return out;
  }

 private:
  const CertificateManifest& m_;
  ParamValues values_;
  std::set<std::string> known_ids_;
  std::map<std::string, const CertNode*> nodes_;
  std::map<std::string, CoverProfile> profiles_;
  std::map<std::string, std::string> arrow_source_;
  std::map<std::string, std::string> arrow_target_;
  // square projections: arrow -> (left, right) such that it is unramified iff
  // unramified_obstruction(left, right) is empty
  std::map<std::string, std::pair<std::string, std::string>> square_of_;
  std::set<std::string> failed_;
  std::map<std::string, bool> fact_ok_;

  Integer inst(const ParamIndex& p) const { return p.instantiate(values_); }

  std::optional<long> node_genus(const std::string& name) const {
    auto it = nodes_.find(name);
    if (it == nodes_.end()) return std::nullopt;
    if (it->second->genus) return it->second->genus;
    if (it->second->hyperelliptic) return hyperelliptic_genus(to_long(inst(*it->second->hyperelliptic), "curve index"));
    return std::nullopt;
  }

  ReportNode check_fact(const CertFact& f) {
    try {
      if (f.kind == "division_zeroset") {
        const QPoly z = division_poly_zeroset(f.a, f.b, f.m);
        bool ok = true;
        std::string detail = "zeros of " + to_string(z, 'x');
        if (!f.expect.empty()) ok = ok && z == parse_qpoly(f.expect);
        for (const auto& r : f.contains) {
          if (sgn(z.eval(r)) != 0) {
            ok = false;
            detail += "; " + r.get_str() + " is not a zero";
          }
        }
        fact_ok_[f.id] = ok;
        return check_node(ok, f.id, detail);
      }
      const std::string path = resolve_path(m_, f.chain);
      const ChainManifest& cm = chain_entry(path).first;
      const auto orbit = trace_point(cm, parse_base_point(f.start));
      std::string detail;
      for (const auto& x : orbit) detail += (detail.empty() ? "" : " -> ") + x.str();
      bool ok = false;
      for (const auto& e : f.expect_in)
        if (orbit.back() == parse_base_point(e)) ok = true;
      fact_ok_[f.id] = ok;
      return check_node(ok, f.id, detail);
    } catch (const std::exception& e) {
      fact_ok_[f.id] = false;
      return fail_node(f.id, e.what());
    }
  }

  CoverProfile profile_from_spec(const ArrowSpec& s) const {
    CoverProfile p;
    if (s.degree) p.degree = inst(*s.degree);
    p.complete_off_list = s.complete;
    for (const auto& [base, entries] : s.fibers) {
      auto& f = p.fiber_mut(base);
      for (const auto& e : entries) {
        FiberEntry fe;
        fe.label = e.label;
        if (e.index) {
          fe.index = IndexBound::exact(inst(*e.index));
        } else {
          fe.index.multiple_of = e.multiple_of ? inst(*e.multiple_of) : Integer(1);
          fe.index.divides = e.divides ? inst(*e.divides) : Integer(0);
        }
        if (e.count) fe.count = inst(*e.count);
        f.push_back(fe);
      }
    }
    return p;
  }

  ClassResolver resolver() const {
    return [this](const std::string& arrow, const std::string& base) {
      auto it = profiles_.find(arrow);
      if (it == profiles_.end()) throw std::invalid_argument("class refers to unknown arrow " + arrow);
      std::vector<std::string> out;
      for (const auto& e : it->second.fiber_or_default(base)) out.push_back(e.label);
      return out;
    };
  }

  // Justifications must name declared assumptions, hypotheses or facts; facts must hold.
  std::optional<std::string> justification_problem(const ArrowSpec& s, bool required) const {
    if (required && s.justify.empty() && s.corroborated_by.empty()) return "no justification given";
    for (const auto& id : s.justify)
      if (!known_ids_.count(id)) return "unknown justification \"" + id + "\"";
    for (const auto& id : s.corroborated_by) {
      auto it = fact_ok_.find(id);
      if (it == fact_ok_.end()) return "unknown fact \"" + id + "\"";
      if (!it->second) return "fact " + id + " does not hold";
    }
    return std::nullopt;
  }

  void record(const ArrowSpec& s, const std::string& name, CoverProfile p, const std::string& source,
              const std::string& target) {
    p.source = source;
    p.target = target;
    if (!p.source_genus) p.source_genus = node_genus(source);
    if (!p.base_genus) p.base_genus = node_genus(target);
    p.check_fiber_sums();
    arrow_source_[name] = source;
    arrow_target_[name] = target;
    profiles_[name] = std::move(p);
    (void)s;
  }

  static std::string one_line(const CoverProfile& p) {
    std::string s = p.str();
    std::replace(s.begin(), s.end(), '\n', ';');
    return s;
  }

  ReportNode build_arrow(const ArrowSpec& s) {
    const std::string label = s.kind == ArrowKind::Square ? s.name + " (" + s.left_proj + ", " + s.right_proj + ")" : s.name;
    try {
      for (const auto& dep : {s.outer, s.inner, s.left, s.right})
        if (!dep.empty() && failed_.count(dep)) throw InconsistentProfile("depends on failed arrow " + dep);
      switch (s.kind) {
        case ArrowKind::Profile: {
          CoverProfile p = profile_from_spec(s);
          if (auto why = justification_problem(s, true)) throw InconsistentProfile(*why);
          record(s, s.name, std::move(p), s.source, s.target);
          break;
        }
        case ArrowKind::Unramified: {
          CoverProfile p = profile_from_spec(s);
          if (auto why = justification_problem(s, false)) throw InconsistentProfile(*why);
          record(s, s.name, std::move(p), s.source, s.target);
          break;
        }
        case ArrowKind::YProjection: {
          const long mm = to_long(inst(*s.m), "m");
          CoverProfile p = y_projection_profile(mm, s.relabel, s.name);
          if (!s.sheets.empty()) {
            if (auto why = justification_problem(s, true)) throw InconsistentProfile(*why);
            for (auto& [b, f] : p.fibers)
              for (auto& e : f) e.label = s.sheets;
          }
          auto it = nodes_.find(s.source);
          if (it == nodes_.end() || !it->second->hyperelliptic || inst(*it->second->hyperelliptic) != mm)
            throw InconsistentProfile("source node is not C(" + std::to_string(mm) + ")");
          record(s, s.name, std::move(p), s.source, s.target);
          break;
        }
        case ArrowKind::CurveMap: {
          const long mm = s.m ? to_long(inst(*s.m), "m") : 0;
          std::optional<long> n;
          if (values_.count("n")) n = values_.at("n");
          const RationalMap phi = RationalMap::parse(s.map, n);
          std::vector<P1Point> bases;
          for (const auto& b : s.bases) bases.push_back(parse_base_point(b));
          CoverProfile p = curve_map_profile(mm, phi, bases, s.name);
          if (mm > 0) {
            auto it = nodes_.find(s.source);
            if (it == nodes_.end() || !it->second->hyperelliptic || inst(*it->second->hyperelliptic) != mm)
              throw InconsistentProfile("source node is not C(" + std::to_string(mm) + ")");
          }
          record(s, s.name, std::move(p), s.source, s.target);
          break;
        }
        case ArrowKind::Compose: {
          CoverProfile p = compose_profiles(profiles_.at(s.outer), profiles_.at(s.inner), resolver());
          const std::string src = arrow_source_.at(s.inner), tgt = arrow_target_.at(s.outer);
          record(s, s.name, std::move(p), src, tgt);
          break;
        }
        case ArrowKind::FromChain: {
          const ChainReport& r = chain_entry(resolve_path(m_, s.chain)).second;
          if (!r.passed()) throw InconsistentProfile("chain " + s.chain + " does not verify");
          CoverProfile p;
          p.degree = r.degree;
          p.complete_off_list = true;
          for (const auto& f : r.fibers) {
            const std::string b = f.base.str();
            auto& fib = p.fiber_mut(b);
            for (const auto& [e, c] : f.indices)
              fib.push_back(FiberEntry{s.name + "@" + b + "#" + e.get_str(), IndexBound::exact(e), c});
          }
          record(s, s.name, std::move(p), s.source, s.target);
          return pass_node(label, one_line(profiles_.at(s.name)) + "; chain " + s.chain + " verified", s.tag);
        }
        case ArrowKind::Square: {
          const CoverProfile& L = profiles_.at(s.left);
          const CoverProfile& R = profiles_.at(s.right);
          Compositum c = compositum_profile(L, R, s.source);
          const std::string lsrc = arrow_source_.at(s.left), rsrc = arrow_source_.at(s.right);
          record(s, s.left_proj, std::move(c.over_left), s.source, lsrc);
          record(s, s.right_proj, std::move(c.over_right), s.source, rsrc);
          square_of_[s.left_proj] = {s.left, s.right};
          square_of_[s.right_proj] = {s.right, s.left};
          ReportNode n = pass_node(label, "compositum of " + s.left + " and " + s.right + " over " + L.target, s.tag);
          n.add(info_node(s.left_proj, one_line(profiles_.at(s.left_proj))));
          n.add(info_node(s.right_proj, one_line(profiles_.at(s.right_proj))));
          try {
            const long g = rh_genus(profiles_.at(s.left_proj));
            n.add(info_node("genus of " + s.source, std::to_string(g)));
          } catch (const InconsistentProfile&) {
          }
          return n;
        }
      }
      ReportNode n = pass_node(label, one_line(profiles_.at(s.name)), s.tag);
      const CoverProfile& p = profiles_.at(s.name);
      if (p.source_genus && p.base_genus && p.complete_off_list) {
        bool known = p.degree.has_value();
        for (const auto& [b, f] : p.fibers)
          for (const auto& e : f) known = known && e.index.is_exact() && e.count;
        if (known) {
          const long g = rh_genus(p);
          n.add(check_node(g == *p.source_genus, "genus", "Riemann-Hurwitz gives " + std::to_string(g) +
                                                              ", source genus " + std::to_string(*p.source_genus)));
        }
      }
      return n;
    } catch (const std::exception& e) {
      failed_.insert(s.name);
      if (s.kind == ArrowKind::Square) {
        failed_.insert(s.left_proj);
        failed_.insert(s.right_proj);
      }
      return fail_node(label, e.what(), s.tag);
    }
  }

  // Unramifiedness of an arrow, discharged through its square when it has one.
  std::optional<std::string> unramified_problem(const std::string& arrow) const {
    if (failed_.count(arrow)) return "arrow failed";
    auto sq = square_of_.find(arrow);
    if (sq != square_of_.end()) {
      auto w = unramified_obstruction(profiles_.at(sq->second.first), profiles_.at(sq->second.second));
      if (w) return "over " + w->base + ": " + w->reason;
      return std::nullopt;
    }
    std::string why;
    if (surely_unramified(profiles_.at(arrow), &why)) return std::nullopt;
    return why;
  }

  ReportNode check_claim(const CertClaim& c) {
    const std::string label = c.kind + " " + c.arrow + (c.base.empty() ? "" : " over " + c.base);
    if (failed_.count(c.arrow)) return fail_node(label, "arrow failed", c.tag);
    try {
      const CoverProfile& p = profiles_.at(c.arrow);
      if (c.kind == "unramified") {
        auto why = unramified_problem(c.arrow);
        const bool via_square = square_of_.count(c.arrow) > 0;
        return check_node(!why, label, why ? *why : (via_square ? "discharged by Abhyankar's lemma" : "no ramification"),
                          c.tag);
      }
      if (c.kind == "branch") {
        if (!p.complete_off_list) return fail_node(label, "fibers off the list are unknown", c.tag);
        for (const auto& [b, f] : p.fibers) {
          bool ramified = false;
          for (const auto& e : f) ramified = ramified || !(e.index.known_upper() && e.index.divides == 1);
          if (ramified && std::find(c.bases.begin(), c.bases.end(), b) == c.bases.end())
            return fail_node(label, "ramified over " + b, c.tag);
        }
        return pass_node(label, "branch values within the listed set", c.tag);
      }
      const auto f = p.fiber_or_default(c.base);
      for (const auto& e : f) {
        if (c.index) {
          const Integer want = inst(*c.index);
          if (!(e.index.is_exact() && e.index.multiple_of == want))
            return fail_node(label, e.label + " has index " + e.index.str() + ", claimed " + want.get_str(), c.tag);
        }
        if (c.multiple_of) {
          const Integer want = inst(*c.multiple_of);
          if (!divides(want, e.index.multiple_of))
            return fail_node(label, e.label + " has index " + e.index.str() + ", claimed a multiple of " + want.get_str(),
                             c.tag);
        }
      }
      std::string detail;
      for (const auto& e : f) detail += (detail.empty() ? "" : ", ") + e.label + " [" + e.index.str() + "]";
      return pass_node(label, detail, c.tag);
    } catch (const std::exception& e) {
      return fail_node(label, e.what(), c.tag);
    }
  }

  ReportNode check_conclusion() {
    const auto& c = m_.conclusion;
    ReportNode n = info_node("conclusion", c.source + " => " + c.target);
    bool ok = true;
    std::string expect_target = c.source;
    for (auto it = c.unramified.rbegin(); it != c.unramified.rend(); ++it) {
      const std::string& a = *it;
      if (failed_.count(a) || !profiles_.count(a)) {
        n.add(fail_node(a, "arrow failed"));
        ok = false;
        continue;
      }
      bool link = arrow_target_.at(a) == expect_target;
      auto why = unramified_problem(a);
      n.add(check_node(link && !why, a + " unramified",
                       !link ? "does not end at " + expect_target : (why ? *why : arrow_source_.at(a) + " -> " + expect_target)));
      ok = ok && link && !why;
      expect_target = arrow_source_.at(a);
    }
    if (failed_.count(c.onto) || !profiles_.count(c.onto)) {
      n.add(fail_node(c.onto, "arrow failed"));
      ok = false;
    } else {
      const bool link = arrow_source_.at(c.onto) == expect_target && arrow_target_.at(c.onto) == c.target;
      n.add(check_node(link, c.onto + " onto " + c.target,
                       link ? "nonconstant map from " + expect_target : "endpoints do not match"));
      ok = ok && link;
    }
    if (!c.continues_with.empty()) {
      try {
        CertificateManifest next = load_certificate(resolve_path(m_, c.continues_with));
        ParamValues sub;
        for (const auto& p : next.parameters) {
          if (!values_.count(p)) throw std::invalid_argument("no value for parameter " + p + " of " + next.name);
          sub[p] = values_.at(p);
        }
        InstanceReport r = verify_instance(next, sub);
        const bool pass = r.tree.passed();
        ReportNode sub_node = check_node(pass, "continues with " + next.name, values_str(sub), next.tag);
        sub_node.children.push_back(std::move(r.tree));
        n.add(std::move(sub_node));
        ok = ok && pass;
      } catch (const std::exception& e) {
        n.add(fail_node("continues with " + c.continues_with, e.what()));
        ok = false;
      }
    }
    n.verdict = ok ? Verdict::Pass : Verdict::Fail;
    return n;
  }
};

}  // namespace

InstanceReport verify_instance(const CertificateManifest& m, const ParamValues& values) {
  for (const auto& p : m.parameters)
    if (!values.count(p)) throw std::invalid_argument("no value for parameter " + p);
  return InstanceVerifier(m, values).run();
}

CertificateReport verify_certificate(const CertificateManifest& m, const std::vector<ParamValues>& instances) {
  CertificateReport r;
  r.name = m.name;
  for (const auto& a : m.assumptions) r.assumptions.push_back(a.id);
  r.instances.resize(instances.size());
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < instances.size(); ++i) r.instances[i] = verify_instance(m, instances[i]);
  r.tree = info_node(m.name, m.statement, m.tag);
  for (const auto& i : r.instances) r.tree.add(i.tree);
  r.tree.verdict = r.tree.has_failure() ? Verdict::Fail : Verdict::Pass;
  return r;
}

}  // namespace ramcalc
