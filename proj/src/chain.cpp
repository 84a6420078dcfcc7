#include "ramcalc/chain.hpp"

#include <algorithm>
#include <sstream>

namespace ramcalc {

std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::Explicit:
      return "explicit";
    case StepKind::Automorphism:
      return "automorphism";
    case StepKind::BelyiForm:
      return "belyi";
  }
  return "explicit";
}

namespace {

StepKind parse_kind(const std::string& s) {
  if (s == "explicit") return StepKind::Explicit;
  if (s == "automorphism") return StepKind::Automorphism;
  if (s == "belyi") return StepKind::BelyiForm;
  throw ManifestError("unknown step kind \"" + s + "\"");
}

std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string list_str(const std::vector<P1Point>& pts) {
  std::vector<std::string> parts;
  for (const auto& p : pts) parts.push_back(p.str());
  return "(" + join(parts) + ")";
}

std::vector<P1Point> json_points(const Json& j, const FieldPtr& field, const std::string& what) {
  if (!j.is_array()) throw ManifestError(what + ": expected an array of points");
  std::vector<P1Point> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_point(j[i], field, what + "[" + std::to_string(i) + "]"));
  return out;
}

Json points_json(const std::vector<P1Point>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(point_to_json(p));
  return a;
}

std::vector<Integer> json_integers(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ManifestError(what + ": expected an array");
  std::vector<Integer> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_integer(j[i], what));
  return out;
}

std::vector<Rational> json_rationals(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ManifestError(what + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(json_rational(j[i], what));
  return out;
}

RationalMap json_map(const Json& j, const std::string& what) {
  try {
    if (j.is_string()) return RationalMap::parse(j.get<std::string>());
    QPoly num = json_poly(require(j, "num"), what + ".num");
    QPoly den = j.contains("den") ? json_poly(j.at("den"), what + ".den") : QPoly(Rational(1));
    return RationalMap(std::move(num), std::move(den));
  } catch (const ManifestError&) {
    throw;
  } catch (const std::exception& e) {
    throw ManifestError(what + ": " + e.what());
  }
}

ChainStep parse_step(const Json& j, const FieldPtr& field, std::size_t pos) {
  const std::string what = "steps[" + std::to_string(pos) + "]";
  ChainStep s;
  s.name = json_string(require(j, "name"), what + ".name");
  s.tag = j.contains("tag") ? json_string(j.at("tag"), what + ".tag") : "";
  s.kind = parse_kind(json_string(require(j, "kind"), what + ".kind"));
  if (s.kind == StepKind::BelyiForm) {
    const Json& b = require(j, "belyi");
    BelyiTuple t{json_rationals(require(b, "support"), what + ".belyi.support"),
                 json_integers(require(b, "exponents"), what + ".belyi.exponents")};
    if (t.support.size() != t.exponents.size() || t.support.size() < 2)
      throw ManifestError(what + ".belyi: support and exponents must have equal length >= 2");
    s.tuple = std::move(t);
  } else {
    s.map = json_map(require(j, "map"), what + ".map");
  }
  if (j.contains("ram")) {
    for (const auto& r : j.at("ram")) {
      ChainRam cr{json_point(require(r, "point"), field, what + ".ram.point"),
                  json_integer(require(r, "index"), what + ".ram.index"),
                  r.contains("factored") ? json_string(r.at("factored"), what + ".ram.factored") : ""};
      if (cr.index < 1) throw ManifestError(what + ".ram: index must be positive");
      s.ram.push_back(std::move(cr));
    }
  }
  s.output = json_points(require(j, "output"), field, what + ".output");
  if (j.contains("values")) {
    for (const auto& v : j.at("values"))
      s.values.push_back({json_point(require(v, "point"), field, what + ".values.point"),
                          json_point(require(v, "image"), field, what + ".values.image")});
  }
  if (j.contains("dlog")) {
    const Json& d = j.at("dlog");
    s.dlog = DlogClaim{json_rationals(require(d, "support"), what + ".dlog.support"),
                       json_rational(require(d, "constant"), what + ".dlog.constant")};
  }
  return s;
}

Json step_json(const ChainStep& s) {
  Json j;
  j["name"] = s.name;
  if (!s.tag.empty()) j["tag"] = s.tag;
  j["kind"] = to_string(s.kind);
  if (s.tuple) {
    Json sup = Json::array(), ex = Json::array();
    for (const auto& q : s.tuple->support) sup.push_back(to_json(q));
    for (const auto& r : s.tuple->exponents) ex.push_back(to_json(r));
    j["belyi"] = Json{{"support", sup}, {"exponents", ex}};
  } else {
    j["map"] = Json{{"num", poly_to_json(s.map->num())}, {"den", poly_to_json(s.map->den())}};
  }
  Json ram = Json::array();
  for (const auto& r : s.ram) {
    Json e{{"point", point_to_json(r.point)}, {"index", to_json(r.index)}};
    if (!r.factored.empty()) e["factored"] = r.factored;
    ram.push_back(e);
  }
  j["ram"] = ram;
  j["output"] = points_json(s.output);
  if (!s.values.empty()) {
    Json v = Json::array();
    for (const auto& c : s.values) v.push_back(Json{{"point", point_to_json(c.point)}, {"image", point_to_json(c.image)}});
    j["values"] = v;
  }
  if (s.dlog) {
    Json sup = Json::array();
    for (const auto& q : s.dlog->support) sup.push_back(to_json(q));
    j["dlog"] = Json{{"support", sup}, {"constant", to_json(s.dlog->constant)}};
  }
  return j;
}

bool same_points(const std::vector<P1Point>& a, const std::vector<P1Point>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

ChainManifest parse_chain(const Json& body) {
  ChainManifest m;
  m.name = json_string(require(body, "name"), "name");
  m.tag = body.contains("tag") ? json_string(body.at("tag"), "tag") : "";
  m.field = json_field(require(body, "field"));
  const Json& src = require(body, "source");
  m.source.curve = json_string(require(src, "curve"), "source.curve");
  Integer n = json_integer(require(src, "n"), "source.n");
  if (n < 1 || !n.fits_slong_p()) throw ManifestError("source.n out of range");
  m.source.n = n.get_si();
  m.source.tag = src.contains("tag") ? json_string(src.at("tag"), "source.tag") : "";
  m.source.degree = src.contains("degree") ? json_integer(src.at("degree"), "source.degree") : Integer(2);
  m.source.index = src.contains("index") ? json_integer(src.at("index"), "source.index") : Integer(2);
  m.source.branch = json_points(require(src, "branch"), m.field, "source.branch");
  const Json& steps = require(body, "steps");
  if (!steps.is_array() || steps.empty()) throw ManifestError("steps: expected a nonempty array");
  for (std::size_t i = 0; i < steps.size(); ++i) m.steps.push_back(parse_step(steps[i], m.field, i));
  const Json& ex = require(body, "expect");
  m.expect.branch = json_points(require(ex, "branch"), m.field, "expect.branch");
  if (ex.contains("primes")) m.expect.primes = json_integers(ex.at("primes"), "expect.primes");
  if (ex.contains("bound")) m.expect.bound = json_integer(ex.at("bound"), "expect.bound");
  return m;
}

Json render_chain(const ChainManifest& m) {
  Json j;
  j["name"] = m.name;
  if (!m.tag.empty()) j["tag"] = m.tag;
  j["field"] = field_to_json(m.field);
  Json src;
  src["curve"] = m.source.curve;
  src["n"] = m.source.n;
  if (!m.source.tag.empty()) src["tag"] = m.source.tag;
  src["degree"] = to_json(m.source.degree);
  src["index"] = to_json(m.source.index);
  src["branch"] = points_json(m.source.branch);
  j["source"] = src;
  j["steps"] = Json::array();
  for (const auto& s : m.steps) j["steps"].push_back(step_json(s));
  Json ex;
  ex["branch"] = points_json(m.expect.branch);
  if (!m.expect.primes.empty()) {
    ex["primes"] = Json::array();
    for (const auto& p : m.expect.primes) ex["primes"].push_back(to_json(p));
  }
  if (m.expect.bound) ex["bound"] = to_json(*m.expect.bound);
  j["expect"] = ex;
  return j;
}

ChainManifest load_chain(const std::string& path) { return parse_chain(read_manifest_body(path, "chain")); }

bool same_chain(const ChainManifest& a, const ChainManifest& b) {
  if (a.name != b.name || a.tag != b.tag || !(*a.field == *b.field)) return false;
  if (a.source.curve != b.source.curve || a.source.n != b.source.n || a.source.tag != b.source.tag ||
      a.source.degree != b.source.degree || a.source.index != b.source.index ||
      !same_points(a.source.branch, b.source.branch))
    return false;
  if (a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const auto &s = a.steps[i], &t = b.steps[i];
    if (s.name != t.name || s.tag != t.tag || s.kind != t.kind || s.map != t.map || s.tuple != t.tuple ||
        s.dlog != t.dlog || !same_points(s.output, t.output) || s.ram.size() != t.ram.size() ||
        s.values.size() != t.values.size())
      return false;
    for (std::size_t k = 0; k < s.ram.size(); ++k)
      if (!(s.ram[k].point == t.ram[k].point) || s.ram[k].index != t.ram[k].index ||
          s.ram[k].factored != t.ram[k].factored)
        return false;
    for (std::size_t k = 0; k < s.values.size(); ++k)
      if (!(s.values[k].point == t.values[k].point) || !(s.values[k].image == t.values[k].image)) return false;
  }
  return same_points(a.expect.branch, b.expect.branch) && a.expect.primes == b.expect.primes &&
         a.expect.bound == b.expect.bound;
}

Integer ChainStep::degree() const {
  if (tuple) return tuple->degree();
  return Integer(map->degree());
}

P1Point ChainStep::eval(const P1Point& x, const FieldPtr& field) const {
  if (map) return map->eval(x, field);
  if (x.is_infinity()) return P1Point::rational(Rational(1), field);
  if (x.value().is_rational()) {
    const Rational q = x.value().to_rational();
    for (std::size_t i = 0; i < tuple->support.size(); ++i) {
      if (tuple->support[i] != q) continue;
      return tuple->exponents[i] > 0 ? P1Point::rational(Rational(0), field) : P1Point::infinity();
    }
  }
  throw std::domain_error("belyi-form step " + name + " is only evaluated at its support and infinity, not at " +
                          x.str());
}

bool dlog_identity_holds(const RationalMap& f, const DlogClaim& claim) {
  QPoly lhs = wronskian(f) * product_of_linear(claim.support);
  QPoly rhs = (f.num() * f.den()).scaled(claim.constant);
  return lhs == rhs;
}

std::vector<Integer> ChainReport::composite_indices() const {
  std::vector<Integer> out;
  for (const auto& f : fibers)
    for (const auto& [e, c] : f.indices) out.push_back(e);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Json ChainReport::to_json() const {
  Json j;
  j["name"] = name;
  j["pass"] = passed();
  j["degree"] = ramcalc::to_json(degree);
  j["final_set"] = final_set.str();
  Json fib = Json::array();
  for (const auto& f : fibers) {
    Json idx = Json::array();
    for (const auto& [e, c] : f.indices) idx.push_back(Json{{"index", ramcalc::to_json(e)}, {"count", ramcalc::to_json(c)}});
    fib.push_back(Json{{"base", point_to_json(f.base)}, {"indices", idx}});
  }
  j["fibers"] = fib;
  j["index_lcm"] = ramcalc::to_json(index_lcm);
  if (composite_genus) j["composite_genus"] = *composite_genus;
  j["belyi_steps"] = belyi_steps;
  j["report"] = tree.to_json();
  return j;
}

namespace {

struct Tracked {
  P1Point point;
  IndexMultiset indices;
};

std::string multiset_str(const IndexMultiset& m) {
  std::vector<std::string> parts;
  for (const auto& [e, c] : m) parts.push_back(e.get_str() + "x" + c.get_str());
  return "{" + join(parts) + "}";
}

Integer multiset_total(const IndexMultiset& m) {
  Integer t = 0;
  for (const auto& [e, c] : m) t += e * c;
  return t;
}

int find_point(const std::vector<P1Point>& pts, const P1Point& x) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] == x) return static_cast<int>(i);
  return -1;
}

bool distinct_points(const std::vector<P1Point>& pts) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) return false;
  return true;
}

ReportNode check_source(const ChainManifest& m, std::vector<Tracked>& tracked, Integer& degree,
                        std::optional<long>& genus) {
  ReportNode node = info_node("source " + m.source.curve, list_str(m.source.branch), m.source.tag);
  const long n = m.source.n;
  QPoly xn = QPoly::monomial(Rational(1), static_cast<std::size_t>(n)) - QPoly(Rational(1));
  PointSet expected = PointSet::from_polynomial(xn, n % 2 == 1);
  PointSet claimed = PointSet::from_points(m.source.branch);
  node.add(check_node(distinct_points(m.source.branch), "distinct branch points"));
  node.add(check_node(claimed == expected, "branch locus of the x-projection",
                      claimed == expected ? claimed.str()
                                          : "SetMismatch: claimed " + claimed.str() + ", expected " + expected.str()));
  const bool standard = m.source.degree == 2 && m.source.index == 2;
  node.add(check_node(standard, "double cover with index 2 over each branch point"));
  degree = m.source.degree;
  const long b = static_cast<long>(m.source.branch.size());
  if (b % 2 == 0 && b >= 2) genus = (b - 2) / 2;
  node.add(info_node("genus", genus ? std::to_string(*genus) : "undetermined"));
  tracked.clear();
  for (const auto& x : m.source.branch) tracked.push_back({x, IndexMultiset{{m.source.index, degree / m.source.index}}});
  return node;
}

// Ramification claims of a belyi-form step against the exponent vector.
ReportNode check_belyi_step(const ChainStep& s, std::vector<Integer>& actual_index) {
  ReportNode node = info_node("belyi-form verification");
  const BelyiTuple& t = *s.tuple;
  BelyiVerification v = verify_belyi(t);
  std::ostringstream detail;
  if (!v.ok()) {
    detail << "NotBelyiForm:";
    if (!v.distinct) detail << " repeated support point or zero exponent;";
    if (!v.sum_zero) detail << " exponents do not sum to zero;";
    if (v.offending_degree)
      detail << " dlog numerator has coefficient " << v.offending_coeff.get_str() << " at degree " << *v.offending_degree << ";";
    if (!v.fibers_balanced) detail << " fibers over 0 and infinity differ;";
  } else {
    detail << "sum of exponents 0, dlog numerator constant " << v.numerator.coeffs()[0].get_str() << ", degree "
           << v.degree.get_str() << ", index " << v.infinity_index << " at infinity";
  }
  node.add(check_node(v.ok(), "product form is a Belyi map", detail.str()));
  try {
    auto normal = vandermonde_exponents(t.support);
    std::string orient;
    if (normal == t.exponents) {
      orient = "normal form";
    } else if (normal == t.reciprocal().exponents) {
      orient = "reciprocal of the normal form";
    } else {
      orient = "not proportional with ratio +-1 to the normal form";
    }
    node.add(info_node("orientation", orient));
  } catch (const DegenerateSupport& e) {
    node.add(fail_node("orientation", e.what()));
  }
  actual_index.clear();
  for (const auto& r : s.ram) {
    Integer actual = 1;
    if (r.point.is_infinity()) {
      actual = static_cast<long>(t.support.size()) - 1;
    } else if (r.point.value().is_rational()) {
      const Rational q = r.point.value().to_rational();
      for (std::size_t i = 0; i < t.support.size(); ++i)
        if (t.support[i] == q) actual = abs(t.exponents[i]);
    }
    actual_index.push_back(actual);
  }
  return node;
}

}  // namespace

ChainReport verify_chain(const ChainManifest& m) {
  ChainReport rep;
  rep.name = m.name;
  rep.tree = info_node("chain " + m.name, {}, m.tag);
  const FieldPtr& field = m.field;
  std::vector<Tracked> tracked;
  Integer degree;
  std::optional<long> source_genus;
  rep.tree.add(check_source(m, tracked, degree, source_genus));

  for (const auto& s : m.steps) {
    ReportNode node = info_node("step " + s.name, to_string(s.kind) + ", degree " + s.degree().get_str(), s.tag);
    const Integer deg = s.degree();
    std::vector<P1Point> input;
    for (const auto& t : tracked) input.push_back(t.point);
    std::vector<Integer> actual(s.ram.size(), Integer(1));
    bool ram_ok = true;

    if (s.kind == StepKind::BelyiForm) {
      rep.belyi_steps.push_back(s.name);
      node.add(check_belyi_step(s, actual));
    } else {
      if (s.kind == StepKind::Automorphism)
        node.add(check_node(s.map->degree() == 1 && s.ram.empty(), "automorphism of the line",
                            "degree " + std::to_string(s.map->degree())));
      node.add(info_node("map", s.map->str()));
      for (std::size_t i = 0; i < s.ram.size(); ++i) actual[i] = local_index(*s.map, s.ram[i].point);
    }

    // Claimed ramification indices and completeness.
    {
      std::vector<P1Point> rp;
      for (const auto& r : s.ram) rp.push_back(r.point);
      if (!distinct_points(rp)) {
        node.add(fail_node("ramification", "a ramification point is listed twice"));
        ram_ok = false;
      }
      std::vector<std::string> bad;
      Integer total = 0;
      for (std::size_t i = 0; i < s.ram.size(); ++i) {
        total += actual[i] - 1;
        if (actual[i] != s.ram[i].index)
          bad.push_back("IndexMismatch at " + s.ram[i].point.str() + ": claimed " + s.ram[i].index.get_str() +
                        ", actual " + actual[i].get_str());
        else if (actual[i] == 1)
          bad.push_back("IndexMismatch at " + s.ram[i].point.str() + ": not a ramification point");
      }
      if (!bad.empty()) ram_ok = false;
      node.add(check_node(bad.empty(), "claimed ramification indices", bad.empty() ? std::to_string(s.ram.size()) + " points confirmed" : join(bad, "; ")));
      const Integer expected = 2 * deg - 2;
      if (total != expected) ram_ok = false;
      node.add(check_node(total == expected, "Riemann-Hurwitz completeness",
                          total == expected ? "sum (e-1) = " + total.get_str()
                                            : "IncompletenessGap: sum (e-1) = " + total.get_str() + ", expected " +
                                                  expected.get_str() + ", missing " + Integer(expected - total).get_str()));
      std::vector<std::string> fact_bad;
      for (std::size_t i = 0; i < s.ram.size(); ++i) {
        if (s.ram[i].factored.empty()) continue;
        std::string got = render_factorization(factor_over_primes(actual[i], m.expect.primes));
        if (got != s.ram[i].factored) fact_bad.push_back(s.ram[i].point.str() + ": claimed " + s.ram[i].factored + ", actual " + got);
      }
      if (!fact_bad.empty()) node.add(fail_node("claimed index factorizations", join(fact_bad, "; ")));
      else if (std::any_of(s.ram.begin(), s.ram.end(), [](const ChainRam& r) { return !r.factored.empty(); }))
        node.add(pass_node("claimed index factorizations"));
    }

    // Fiber sums over each branch value of an explicit map.
    if (s.map && ram_ok) {
      std::vector<RamPoint> rp;
      for (const auto& r : s.ram) rp.push_back({r.point, r.index});
      std::vector<P1Point> seen;
      std::vector<std::string> bad;
      for (const auto& r : s.ram) {
        P1Point y = s.map->eval(r.point, field);
        if (find_point(seen, y) >= 0) continue;
        seen.push_back(y);
        FiberCheck fc = fiber_check(*s.map, y, rp, field);
        if (!fc.ok())
          bad.push_back("over " + y.str() + ": claimed excess " + fc.claimed_excess.get_str() + ", required " +
                        fc.required_excess.get_str());
      }
      node.add(check_node(bad.empty(), "fiber sums equal the degree", bad.empty() ? std::to_string(seen.size()) + " branch values" : join(bad, "; ")));
    }

    if (s.dlog) {
      bool ok = s.map && dlog_identity_holds(*s.map, *s.dlog);
      std::vector<std::string> sup;
      for (const auto& q : s.dlog->support) sup.push_back(q.get_str());
      node.add(check_node(ok, "logarithmic derivative",
                          "f'/f = " + s.dlog->constant.get_str() + " / prod(z - s), s in {" + join(sup) + "}"));
    }

    for (const auto& v : s.values) {
      std::string got;
      bool ok = false;
      try {
        P1Point y = s.eval(v.point, field);
        got = y.str();
        ok = y == v.image;
      } catch (const std::domain_error& e) {
        got = e.what();
      }
      node.add(check_node(ok, "value at " + v.point.str(), "claimed " + v.image.str() + ", computed " + got));
    }

    // Propagation of the listed set, and the composite fibers.
    std::vector<Tracked> next;
    for (const auto& y : s.output) next.push_back({y, {}});
    node.add(check_node(distinct_points(s.output), "distinct output points"));
    std::vector<std::string> prop_bad;
    std::vector<P1Point> images;
    std::vector<Integer> listed_sum(s.output.size(), Integer(0));

    auto absorb = [&](const P1Point& x, const IndexMultiset& above, const Integer& e) {
      P1Point y;
      try {
        y = s.eval(x, field);
      } catch (const std::domain_error& err) {
        prop_bad.push_back(err.what());
        return;
      }
      images.push_back(y);
      int j = find_point(s.output, y);
      if (j < 0) {
        prop_bad.push_back("image " + y.str() + " of " + x.str() + " is not among the claimed points");
        return;
      }
      listed_sum[static_cast<std::size_t>(j)] += e;
      for (const auto& [idx, cnt] : above) next[static_cast<std::size_t>(j)].indices[idx * e] += cnt;
    };

    for (const auto& t : tracked) {
      Integer e = 1;
      int r = -1;
      for (std::size_t i = 0; i < s.ram.size(); ++i)
        if (s.ram[i].point == t.point) r = static_cast<int>(i);
      if (r >= 0) {
        e = actual[static_cast<std::size_t>(r)];
      } else if (s.map) {
        e = local_index(*s.map, t.point);
      } else {
        e = 1;  // belyi-form: only support points and infinity ramify
        if (!t.point.is_infinity() && t.point.value().is_rational()) {
          const Rational q = t.point.value().to_rational();
          for (std::size_t i = 0; i < s.tuple->support.size(); ++i)
            if (s.tuple->support[i] == q) e = abs(s.tuple->exponents[i]);
        } else if (t.point.is_infinity()) {
          e = static_cast<long>(s.tuple->support.size()) - 1;
        }
      }
      absorb(t.point, t.indices, e);
    }
    for (std::size_t i = 0; i < s.ram.size(); ++i) {
      if (find_point(input, s.ram[i].point) >= 0) continue;
      absorb(s.ram[i].point, IndexMultiset{{Integer(1), degree}}, actual[i]);
    }
    for (std::size_t j = 0; j < s.output.size(); ++j) {
      Integer rest = deg - listed_sum[j];
      if (rest < 0) {
        prop_bad.push_back("listed preimages of " + s.output[j].str() + " exceed the degree");
        continue;
      }
      if (rest > 0) next[j].indices[Integer(1)] += rest * degree;
    }

    PointSet computed;
    PointSet claimed = PointSet::from_points(s.output);
    if (s.map) {
      std::vector<RamPoint> rp;
      for (const auto& r : s.ram) rp.push_back({r.point, r.index});
      computed = image_set(*s.map, PointSet::from_points(input)).unite(branch_locus(*s.map, rp, field));
    } else {
      computed = PointSet::from_points(images);
    }
    const bool set_ok = computed == claimed;
    node.add(check_node(set_ok, "image of the listed set with the branch locus",
                        set_ok ? list_str(s.output)
                               : "SetMismatch (claimed list disagrees with recomputation; possible erratum in the source "
                                 "text): claimed " + claimed.str() + ", computed " + computed.str()));
    node.add(check_node(prop_bad.empty(), "traced points land on listed points", join(prop_bad, "; ")));

    degree *= deg;
    std::vector<std::string> sums_bad;
    for (const auto& t : next)
      if (multiset_total(t.indices) != degree) sums_bad.push_back(t.point.str() + " " + multiset_str(t.indices));
    node.add(check_node(sums_bad.empty(), "composite fiber sums",
                        sums_bad.empty() ? "each listed fiber sums to " + degree.get_str() : join(sums_bad, "; ")));
    tracked = std::move(next);
    rep.tree.add(std::move(node));
  }

  // Conclusions about the composite map.
  rep.degree = degree;
  for (const auto& t : tracked) rep.fibers.push_back({t.point, t.indices});
  rep.final_set = PointSet::from_points([&] {
    std::vector<P1Point> v;
    for (const auto& t : tracked) v.push_back(t.point);
    return v;
  }());
  ReportNode concl = info_node("composite", "degree " + degree.get_str());
  PointSet want = PointSet::from_points(m.expect.branch);
  concl.add(check_node(rep.final_set == want, "final branch locus",
                       rep.final_set == want ? rep.final_set.str()
                                             : "claimed " + want.str() + ", final " + rep.final_set.str()));
  for (const auto& f : rep.fibers) concl.add(info_node("fiber over " + f.base.str(), multiset_str(f.indices)));

  rep.index_lcm = 1;
  for (const auto& e : rep.composite_indices()) rep.index_lcm = ilcm(rep.index_lcm, e);
  if (!m.expect.primes.empty()) {
    std::vector<std::string> bad;
    for (const auto& e : rep.composite_indices())
      if (!is_smooth(e, m.expect.primes)) bad.push_back(e.get_str());
    std::vector<std::string> ps;
    for (const auto& p : m.expect.primes) ps.push_back(p.get_str());
    concl.add(check_node(bad.empty(), "composite indices smooth over {" + join(ps) + "}",
                         bad.empty() ? "lcm " + render_factorization(factor_over_primes(rep.index_lcm, m.expect.primes))
                                     : "non-smooth: " + join(bad)));
  }
  if (m.expect.bound) {
    std::vector<std::string> bad;
    for (const auto& e : rep.composite_indices())
      if (!divides(e, *m.expect.bound)) bad.push_back(e.get_str());
    concl.add(check_node(bad.empty(), "composite indices divide " + m.expect.bound->get_str(),
                         bad.empty() ? "lcm " + rep.index_lcm.get_str() : "not dividing: " + join(bad)));
  }
  // 2g - 2 = -2 deg + sum (e - 1) over the listed fibers.
  Integer excess = 0;
  for (const auto& f : rep.fibers)
    for (const auto& [e, c] : f.indices) excess += (e - 1) * c;
  Integer twice = excess - 2 * degree + 2;
  if (twice >= 0 && twice % 2 == 0 && twice.fits_slong_p()) rep.composite_genus = twice.get_si() / 2;
  const bool genus_ok = rep.composite_genus && source_genus && *rep.composite_genus == *source_genus;
  concl.add(check_node(genus_ok, "Riemann-Hurwitz for the composite",
                       "genus from the composite fibers " +
                           (rep.composite_genus ? std::to_string(*rep.composite_genus) : std::string("non-integral")) +
                           ", genus of the curve " + (source_genus ? std::to_string(*source_genus) : std::string("?"))));
  rep.tree.add(std::move(concl));
  return rep;
}

std::vector<P1Point> trace_point(const ChainManifest& m, const P1Point& start) {
  std::vector<P1Point> orbit{start};
  for (const auto& s : m.steps) orbit.push_back(s.eval(orbit.back(), m.field));
  return orbit;
}

}  // namespace ramcalc
