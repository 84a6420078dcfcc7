#include "ramcalc/relation.hpp"

#include "ramcalc/certificate.hpp"
#include "ramcalc/chain.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace ramcalc {

CurveNode CurveNode::c(const Integer& n) {
  if (n < 1) throw std::invalid_argument("C(n) needs n >= 1");
  return {"", n};
}

CurveNode CurveNode::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty curve name");
  if (text[0] == 'C' && text.size() > 1) {
    std::string rest = text.substr(1);
    if (rest[0] == '_') rest = rest.substr(1);
    if (!rest.empty() && rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](unsigned char ch) { return std::isdigit(ch); }))
      return c(Integer(rest));
  }
  for (unsigned char ch : text)
    if (!std::isalnum(ch) && ch != '-' && ch != '_') throw std::invalid_argument("bad curve name \"" + text + "\"");
  return named(text);
}

std::string CurveNode::str() const { return is_family() ? "C(" + n.get_str() + ")" : name; }

bool CurveNode::operator<(const CurveNode& o) const {
  if (name != o.name) return name < o.name;
  return n < o.n;
}

NodePattern NodePattern::parse(const std::string& text) {
  NodePattern p;
  p.text = text;
  if (text.size() > 3 && text.rfind("C(", 0) == 0 && text.back() == ')') {
    p.index = ParamIndex::parse(text.substr(2, text.size() - 3));
  } else {
    CurveNode::parse(text);  // validates the name
    p.name = text;
  }
  return p;
}

std::string NodePattern::str() const {
  if (!text.empty()) return text;
  return index ? "C(" + index->str() + ")" : name;
}

std::string to_string(RuleKind k) {
  switch (k) {
    case RuleKind::Axiom: return "axiom";
    case RuleKind::Verified: return "verified";
    case RuleKind::Template: return "template";
  }
  return "?";
}

RuleKind parse_rule_kind(const std::string& s) {
  if (s == "axiom") return RuleKind::Axiom;
  if (s == "verified") return RuleKind::Verified;
  if (s == "template") return RuleKind::Template;
  throw ManifestError("unknown rule kind \"" + s + "\"");
}

Json EdgeRule::to_json() const {
  Json j;
  j["id"] = id;
  j["tag"] = tag;
  j["kind"] = to_string(kind);
  j["source"] = source.str();
  j["target"] = target.str();
  if (min_param != 1) j["min_param"] = min_param;
  if (!artifact.empty()) j["artifact"] = artifact;
  if (!artifact_hash.empty()) j["artifact_hash"] = artifact_hash;
  if (!note.empty()) j["note"] = note;
  return j;
}

EdgeRule EdgeRule::from_json(const Json& j) {
  EdgeRule r;
  r.id = json_string(require(j, "id"), "id");
  r.tag = json_string(require(j, "tag"), "tag");
  r.kind = parse_rule_kind(json_string(require(j, "kind"), "kind"));
  try {
    r.source = NodePattern::parse(json_string(require(j, "source"), "source"));
    r.target = NodePattern::parse(json_string(require(j, "target"), "target"));
  } catch (const std::invalid_argument& e) {
    throw ManifestError(std::string("rule ") + r.id + ": " + e.what());
  }
  if (j.contains("min_param")) r.min_param = json_integer(j["min_param"], "min_param").get_si();
  if (j.contains("artifact")) r.artifact = json_string(j["artifact"], "artifact");
  if (j.contains("artifact_hash")) r.artifact_hash = json_string(j["artifact_hash"], "artifact_hash");
  if (j.contains("note")) r.note = json_string(j["note"], "note");
  if (r.id.empty()) throw ManifestError("rule without id");
  return r;
}

std::string EdgeRule::hash() const { return content_hash(to_json().dump()); }

bool EdgeRule::is_quotient() const {
  if (!source.index || !target.index) return false;
  const auto& s = *source.index;
  const auto& t = *target.index;
  return s.params.size() == 2 && s.coeff == 1 && t.params.size() == 1 && t.coeff == 1 &&
         std::find(s.params.begin(), s.params.end(), t.params[0]) != s.params.end();
}

std::string DerivationTrace::str() const {
  std::ostringstream os;
  os << source.str();
  for (const auto& s : steps) os << " => " << s.to.str();
  os << "\n";
  for (const auto& s : steps) {
    os << "  " << s.from.str() << " => " << s.to.str() << "  [" << s.tag << "; " << s.rule_id;
    if (s.param) os << "; n=" << s.param->get_str();
    os << "]\n";
  }
  return os.str();
}

namespace {

std::string resolve_artifact(const std::string& file, const std::string& base_dir) {
  namespace fs = std::filesystem;
  if (fs::path(file).is_absolute()) return file;
  if (!base_dir.empty() && fs::exists(fs::path(base_dir) / file)) return (fs::path(base_dir) / file).string();
  return data_path(file);
}

// Instantiates a single-parameter or constant pattern.
std::optional<CurveNode> instantiate(const NodePattern& p, const std::optional<Integer>& value) {
  if (!p.index) return CurveNode::named(p.name);
  if (p.index->params.empty()) return CurveNode::c(p.index->coeff);
  if (p.index->params.size() != 1 || !value) return std::nullopt;
  return CurveNode::c(p.index->coeff * *value);
}

struct Match {
  std::optional<Integer> param;
};

// Whether a non-quotient rule applies to the node, and with which parameter.
std::optional<Match> match(const EdgeRule& r, const CurveNode& node) {
  if (!r.source.index) {
    if (node.is_family() || node.name != r.source.name) return std::nullopt;
    return Match{};
  }
  if (!node.is_family()) return std::nullopt;
  const ParamIndex& s = *r.source.index;
  if (s.params.empty()) {
    if (node.n != s.coeff) return std::nullopt;
    return Match{};
  }
  if (s.params.size() != 1 || !divides(s.coeff, node.n)) return std::nullopt;
  Integer v = node.n / s.coeff;
  if (v < r.min_param) return std::nullopt;
  return Match{v};
}

bool usable(const EdgeRule& r) {
  if (r.kind == RuleKind::Template) return false;
  if (r.is_quotient()) return true;
  if (r.source.index && r.source.index->params.size() > 1) return false;
  if (r.target.index && !r.target.index->params.empty()) {
    if (!r.source.index || r.source.index->params != r.target.index->params) return false;
  }
  return true;
}

}  // namespace

void check_provenance(const EdgeRule& rule, const std::string& base_dir) {
  if (rule.tag.empty()) throw UnverifiedProvenance("rule " + rule.id + " carries no source tag");
  if (rule.kind == RuleKind::Verified && rule.artifact.empty())
    throw UnverifiedProvenance("verified rule " + rule.id + " names no artifact");
  if (rule.kind == RuleKind::Verified && rule.artifact_hash.empty())
    throw UnverifiedProvenance("verified rule " + rule.id + " records no artifact hash");
  if (rule.artifact.empty()) return;
  const std::string path = resolve_artifact(rule.artifact, base_dir);
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const std::exception& e) {
    throw UnverifiedProvenance("rule " + rule.id + ": " + e.what());
  }
  const std::string h = content_hash(text);
  if (!rule.artifact_hash.empty() && rule.artifact_hash != h)
    throw UnverifiedProvenance("rule " + rule.id + ": artifact " + rule.artifact + " hash " + h + " differs from " +
                               rule.artifact_hash);
  if (rule.kind != RuleKind::Verified) return;
  bool ok = false;
  try {
    const std::string kind = parse_manifest_text(text).kind;
    if (kind == "cert") {
      CertificateManifest m = load_certificate(path);
      ok = verify_certificate(m, parameter_grid(m, {1, 2, 3, 6})).passed();
    } else if (kind == "chain") {
      ok = verify_chain(load_chain(path)).passed();
    } else {
      throw UnverifiedProvenance("rule " + rule.id + ": artifact kind \"" + kind + "\" cannot back a rule");
    }
  } catch (const UnverifiedProvenance&) {
    throw;
  } catch (const std::exception& e) {
    throw UnverifiedProvenance("rule " + rule.id + ": artifact " + rule.artifact + " unreadable: " + e.what());
  }
  if (!ok) throw UnverifiedProvenance("rule " + rule.id + ": artifact " + rule.artifact + " does not verify");
}

bool RuleStore::insert_unchecked(const EdgeRule& rule) {
  const std::string h = rule.hash();
  for (const auto& r : rules_)
    if (r.hash() == h) return false;
  for (const auto& r : rules_)
    if (r.id == rule.id) throw std::invalid_argument("rule id " + rule.id + " already used by a different rule");
  rules_.push_back(rule);
  return true;
}

bool RuleStore::add_rule(const EdgeRule& rule, const std::string& base_dir) {
  check_provenance(rule, base_dir);
  return insert_unchecked(rule);
}

const EdgeRule* RuleStore::find(const std::string& id) const {
  for (const auto& r : rules_)
    if (r.id == id) return &r;
  return nullptr;
}

std::string RuleStore::render() const {
  std::string out = "#ramcalc-store v1\n";
  for (const auto& r : rules_) out += r.hash() + " " + r.to_json().dump() + "\n";
  return out;
}

RuleStore RuleStore::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "#ramcalc-store v1") throw ManifestError("expected header #ramcalc-store v1");
  RuleStore store;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw ManifestError("line " + std::to_string(lineno) + ": missing hash");
    Json j;
    try {
      j = Json::parse(line.substr(sp + 1));
    } catch (const Json::parse_error& e) {
      throw ManifestError("line " + std::to_string(lineno) + ": " + e.what());
    }
    EdgeRule r = EdgeRule::from_json(j);
    if (r.hash() != line.substr(0, sp))
      throw ManifestError("line " + std::to_string(lineno) + ": content hash mismatch for rule " + r.id);
    try {
      store.insert_unchecked(r);
    } catch (const std::invalid_argument& e) {
      throw ManifestError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return store;
}

RuleStore RuleStore::load(const std::string& path) { return parse(read_text_file(path)); }

void RuleStore::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << render();
}

std::vector<std::string> RuleStore::audit(const std::string& base_dir) const {
  std::vector<std::string> failures;
  for (const auto& r : rules_) {
    try {
      check_provenance(r, base_dir);
    } catch (const UnverifiedProvenance& e) {
      failures.push_back(e.what());
    }
  }
  return failures;
}

RuleStore bundled_rules() { return RuleStore::load(data_path("rules.store")); }

namespace {

struct Visit {
  CurveNode prev;
  TraceStep step;
  int depth = 0;
};

class Search {
 public:
  Search(const RuleStore& store, int bound) : bound_(bound) {
    if (bound < 1) throw std::invalid_argument("search bound must be at least 1");
    if (bound > 4096) throw std::invalid_argument("search bound above 4096 refused");
    for (const auto& r : store.rules())
      if (usable(r)) (r.is_quotient() ? quotients_ : edges_).push_back(&r);
  }

  // Breadth first from the source until every wanted node is found. Divisor
  // steps only ever end a trace: every other family rule is C(c n) => C(c' n),
  // so a divisor step taken earlier can be postponed without lengthening it.
  std::map<CurveNode, DerivationTrace> run(const CurveNode& source, const std::vector<CurveNode>& wanted) {
    std::map<CurveNode, DerivationTrace> found;
    std::set<CurveNode> pending(wanted.begin(), wanted.end());
    std::map<CurveNode, Visit> seen;
    seen[source] = Visit{source, {}, 0};
    std::deque<CurveNode> queue{source};
    auto settle = [&](const CurveNode& node, const TraceStep* last) {
      if (!pending.count(node)) return;
      DerivationTrace t = path_to(seen, source, last ? last->from : node);
      if (last) t.steps.push_back(*last);
      t.target = node;
      found[node] = t;
      pending.erase(node);
    };
    settle(source, nullptr);
    while (!queue.empty() && !pending.empty()) {
      const CurveNode node = queue.front();
      queue.pop_front();
      const int d = seen[node].depth;
      if (d >= bound_) continue;
      for (const EdgeRule* r : edges_) {
        auto m = match(*r, node);
        if (!m) continue;
        auto next = instantiate(r->target, m->param);
        if (!next || seen.count(*next)) continue;
        TraceStep st{node, *next, r->id, r->tag, m->param};
        seen[*next] = Visit{node, st, d + 1};
        queue.push_back(*next);
        settle(*next, nullptr);
      }
      if (node.is_family() && !quotients_.empty()) {
        std::vector<CurveNode> hits;
        for (const auto& w : pending)
          if (w.is_family() && w.n != node.n && divides(w.n, node.n)) hits.push_back(w);
        for (const auto& w : hits) {
          if (seen.count(w)) continue;
          TraceStep st{node, w, quotients_.front()->id, quotients_.front()->tag, Integer(node.n / w.n)};
          settle(w, &st);
        }
      }
    }
    return found;
  }

 private:
  static DerivationTrace path_to(const std::map<CurveNode, Visit>& seen, const CurveNode& source, CurveNode at) {
    DerivationTrace t;
    t.source = source;
    t.target = at;
    while (!(at == source)) {
      const Visit& v = seen.at(at);
      t.steps.push_back(v.step);
      at = v.prev;
    }
    std::reverse(t.steps.begin(), t.steps.end());
    return t;
  }

  int bound_;
  std::vector<const EdgeRule*> edges_;
  std::vector<const EdgeRule*> quotients_;
};

}  // namespace

std::optional<DerivationTrace> reachable(const RuleStore& store, const CurveNode& source, const CurveNode& target,
                                         int bound) {
  Search s(store, bound);
  auto found = s.run(source, {target});
  auto it = found.find(target);
  if (it == found.end()) return std::nullopt;
  return it->second;
}

bool validate_trace(const RuleStore& store, const DerivationTrace& trace, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  CurveNode at = trace.source;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    const std::string where = "step " + std::to_string(i + 1) + ": ";
    if (!(s.from == at)) return fail(where + "starts at " + s.from.str() + ", expected " + at.str());
    const EdgeRule* r = store.find(s.rule_id);
    if (!r) return fail(where + "unknown rule " + s.rule_id);
    if (!usable(*r)) return fail(where + "rule " + r->id + " is not usable in derivations");
    if (r->is_quotient()) {
      if (!s.from.is_family() || !s.to.is_family() || !divides(s.to.n, s.from.n))
        return fail(where + s.to.str() + " is not a quotient of " + s.from.str());
    } else {
      auto m = match(*r, s.from);
      if (!m) return fail(where + "rule " + r->id + " does not apply to " + s.from.str());
      auto next = instantiate(r->target, m->param);
      if (!next || !(*next == s.to)) return fail(where + "rule " + r->id + " does not lead to " + s.to.str());
    }
    at = s.to;
  }
  if (!(at == trace.target)) return fail("trace ends at " + at.str() + ", expected " + trace.target.str());
  return true;
}

std::vector<std::vector<CurveNode>> equivalence_classes(const RuleStore& store, const std::vector<CurveNode>& nodes,
                                                        int bound) {
  const std::size_t n = nodes.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    Search s(store, bound);
    auto found = s.run(nodes[i], nodes);
    for (std::size_t j = 0; j < n; ++j) reach[i][j] = found.count(nodes[j]) ? 1 : 0;
  }
  std::vector<int> cls(n, -1);
  std::vector<std::vector<CurveNode>> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = static_cast<int>(out.size());
    out.push_back({nodes[i]});
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cls[j] < 0 && reach[i][j] && reach[j][i]) {
        cls[j] = cls[i];
        out.back().push_back(nodes[j]);
      }
    }
  }
  return out;
}

}  // namespace ramcalc
