#include "ramcalc/cover.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace ramcalc {

// ---- ParamIndex -------------------------------------------------------------------------

ParamIndex ParamIndex::parse(const std::string& text) {
  ParamIndex out;
  std::size_t i = 0;
  auto read_number = [&]() {
    std::size_t j = i;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    Integer v(text.substr(i, j - i));
    i = j;
    return v;
  };
  bool any = false;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '*' || std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      Integer base = read_number();
      if (i < text.size() && text[i] == '^') {
        ++i;
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
          throw std::invalid_argument("bad exponent in index \"" + text + "\"");
        Integer e = read_number();
        base = ipow(base, e.get_ui());
      }
      out.coeff *= base;
      any = true;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::string name(1, c);
      if (std::find(out.params.begin(), out.params.end(), name) != out.params.end())
        throw std::invalid_argument("repeated parameter in index \"" + text + "\"");
      out.params.push_back(name);
      ++i;
      any = true;
    } else {
      throw std::invalid_argument("unexpected character in index \"" + text + "\"");
    }
  }
  if (!any) throw std::invalid_argument("empty index");
  if (out.coeff < 1) throw std::invalid_argument("index must be positive: \"" + text + "\"");
  std::sort(out.params.begin(), out.params.end());
  return out;
}

Integer ParamIndex::instantiate(const std::map<std::string, long>& values) const {
  Integer v = coeff;
  for (const auto& p : params) {
    auto it = values.find(p);
    if (it == values.end()) throw std::invalid_argument("no value for parameter " + p);
    if (it->second < 1) throw std::invalid_argument("parameter " + p + " must be positive");
    v *= it->second;
  }
  return v;
}

bool ParamIndex::divides_symbolically(const ParamIndex& other) const {
  for (const auto& p : params)
    if (std::find(other.params.begin(), other.params.end(), p) == other.params.end()) return false;
  return divides(coeff, other.coeff);
}

std::string ParamIndex::str() const {
  std::string s = (coeff == 1 && !params.empty()) ? std::string() : coeff.get_str();
  for (const auto& p : params) s += p;
  return s;
}

// ---- IndexBound -------------------------------------------------------------------------

bool IndexBound::surely_divides(const IndexBound& other) const {
  return known_upper() && ramcalc::divides(divides, other.multiple_of);
}

bool IndexBound::consistent() const {
  return multiple_of >= 1 && divides >= 0 && (divides == 0 || ramcalc::divides(multiple_of, divides));
}

std::string IndexBound::str() const {
  if (is_exact()) return multiple_of.get_str();
  if (!known_upper()) return multiple_of == 1 ? std::string("?") : "multiple of " + multiple_of.get_str();
  if (multiple_of == 1) return "divides " + divides.get_str();
  return "multiple of " + multiple_of.get_str() + ", divides " + divides.get_str();
}

IndexBound operator*(const IndexBound& a, const IndexBound& b) {
  return {a.multiple_of * b.multiple_of, (a.known_upper() && b.known_upper()) ? Integer(a.divides * b.divides) : Integer(0)};
}

IndexBound join(const IndexBound& a, const IndexBound& b) {
  return {igcd(a.multiple_of, b.multiple_of),
          (a.known_upper() && b.known_upper()) ? ilcm(a.divides, b.divides) : Integer(0)};
}

// ---- CoverProfile -----------------------------------------------------------------------

const std::vector<FiberEntry>* CoverProfile::fiber(const std::string& base) const {
  for (const auto& [b, f] : fibers)
    if (b == base) return &f;
  return nullptr;
}

std::vector<FiberEntry>& CoverProfile::fiber_mut(const std::string& base) {
  for (auto& [b, f] : fibers)
    if (b == base) return f;
  fibers.emplace_back(base, std::vector<FiberEntry>{});
  return fibers.back().second;
}

std::vector<FiberEntry> CoverProfile::fiber_or_default(const std::string& base) const {
  if (const auto* f = fiber(base)) return *f;
  if (complete_off_list) return {FiberEntry{"*" + base, IndexBound::exact(1), degree}};
  return {FiberEntry{"?" + base, IndexBound::unknown(), std::nullopt}};
}

std::vector<std::string> CoverProfile::bases() const {
  std::vector<std::string> out;
  for (const auto& [b, f] : fibers) out.push_back(b);
  return out;
}

void CoverProfile::check_fiber_sums() const {
  if (!degree) return;
  for (const auto& [b, f] : fibers) {
    Integer sum = 0;
    bool known = true;
    for (const auto& e : f) {
      if (!e.index.consistent())
        throw InconsistentProfile("fiber over " + b + ": inconsistent bound for " + e.label);
      if (!e.index.is_exact() || !e.count) {
        known = false;
        continue;
      }
      sum += e.index.multiple_of * *e.count;
    }
    if (known && sum != *degree)
      throw InconsistentProfile("fiber over " + b + " sums to " + sum.get_str() + ", degree is " + degree->get_str());
    if (!known && sum > *degree)
      throw InconsistentProfile("fiber over " + b + " exceeds the degree");
  }
}

std::string CoverProfile::str() const {
  std::ostringstream os;
  os << source << " -> " << target;
  if (degree) os << " (degree " << *degree << ")";
  for (const auto& [b, f] : fibers) {
    os << "\n  over " << b << ":";
    for (const auto& e : f) {
      os << " " << e.label << "[" << e.index.str();
      if (e.count) os << " x" << *e.count;
      os << "]";
    }
  }
  if (!complete_off_list) os << "\n  (other fibers unknown)";
  return os.str();
}

long rh_genus(const CoverProfile& p) {
  if (!p.degree) throw InconsistentProfile("genus: degree unknown");
  if (!p.base_genus) throw InconsistentProfile("genus: base genus unknown");
  if (!p.complete_off_list) throw InconsistentProfile("genus: ramification off the list is unknown");
  p.check_fiber_sums();
  Integer excess = 0;
  for (const auto& [b, f] : p.fibers) {
    for (const auto& e : f) {
      if (!e.index.is_exact() || !e.count) throw InconsistentProfile("genus: fiber over " + b + " not fully known");
      excess += (e.index.multiple_of - 1) * *e.count;
    }
  }
  const Integer twice = *p.degree * (2 * Integer(*p.base_genus) - 2) + excess;
  if (twice % 2 != 0) throw InconsistentProfile("genus: odd Riemann-Hurwitz total");
  const Integer g = twice / 2 + 1;
  if (g < 0) throw InconsistentProfile("genus: negative");
  if (!g.fits_slong_p()) throw InconsistentProfile("genus: too large");
  return g.get_si();
}

// ---- compositum -------------------------------------------------------------------------

namespace {

std::vector<std::string> union_bases(const CoverProfile& a, const CoverProfile& b) {
  std::vector<std::string> out = a.bases();
  for (const auto& x : b.bases())
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
  return out;
}

}  // namespace

Compositum compositum_profile(const CoverProfile& left, const CoverProfile& right, const std::string& top) {
  if (!left.target.empty() && !right.target.empty() && left.target != right.target)
    throw BaseMismatch("compositum: targets differ (" + left.target + " vs " + right.target + ")");
  Compositum out;
  out.over_base.source = out.over_left.source = out.over_right.source = top;
  out.over_base.target = left.target.empty() ? right.target : left.target;
  out.over_left.target = left.source;
  out.over_right.target = right.source;
  if (left.degree && right.degree) out.over_base.degree = *left.degree * *right.degree;
  out.over_left.degree = right.degree;
  out.over_right.degree = left.degree;
  out.over_base.complete_off_list = left.complete_off_list && right.complete_off_list;
  out.over_left.complete_off_list = right.complete_off_list;
  out.over_right.complete_off_list = left.complete_off_list;
  out.over_base.base_genus = left.base_genus ? left.base_genus : right.base_genus;
  out.over_left.base_genus = left.source_genus;
  out.over_right.base_genus = right.source_genus;

  for (const auto& z : union_bases(left, right)) {
    const auto fa = left.fiber_or_default(z);
    const auto fb = right.fiber_or_default(z);
    auto& base_fiber = out.over_base.fiber_mut(z);
    for (const auto& ei : fa) {
      auto& lf = out.over_left.fiber_mut(ei.label);
      for (const auto& ej : fb) {
        const std::string label = ei.label + "|" + ej.label;
        const Integer& mi = ei.index.multiple_of;
        const Integer& di = ei.index.divides;
        const Integer& mj = ej.index.multiple_of;
        const Integer& dj = ej.index.divides;
        const bool exact = ei.index.is_exact() && ej.index.is_exact() && ei.count && ej.count;
        const Integer g = exact ? igcd(mi, mj) : Integer(0);

        FiberEntry eb{label,
                      {ilcm(mi, mj), (ei.index.known_upper() && ej.index.known_upper()) ? ilcm(di, dj) : Integer(0)},
                      std::nullopt};
        if (exact) eb.count = g * *ei.count * *ej.count;
        base_fiber.push_back(eb);

        FiberEntry el{label,
                      {ei.index.known_upper() ? Integer(mj / igcd(mj, di)) : Integer(1),
                       ej.index.known_upper() ? Integer(dj / igcd(dj, mi)) : Integer(0)},
                      std::nullopt};
        if (exact) el.count = g * *ej.count;
        lf.push_back(el);

        FiberEntry er{label,
                      {ej.index.known_upper() ? Integer(mi / igcd(mi, dj)) : Integer(1),
                       ei.index.known_upper() ? Integer(di / igcd(di, mj)) : Integer(0)},
                      std::nullopt};
        if (exact) er.count = g * *ei.count;
        out.over_right.fiber_mut(ej.label).push_back(er);
      }
    }
  }
  out.over_base.check_fiber_sums();
  out.over_left.check_fiber_sums();
  out.over_right.check_fiber_sums();
  return out;
}

std::optional<UnramifiedWitness> unramified_obstruction(const CoverProfile& left, const CoverProfile& right) {
  if (!right.complete_off_list)
    return UnramifiedWitness{"*", IndexBound::unknown(), IndexBound::unknown(),
                             "ramification of " + right.source + " -> " + right.target + " off its list is unknown"};
  for (const auto& z : union_bases(left, right)) {
    for (const auto& ei : left.fiber_or_default(z)) {
      for (const auto& ej : right.fiber_or_default(z)) {
        if (ej.index.surely_divides(ei.index)) continue;
        std::string reason = ej.index.known_upper() ? "index " + ej.index.str() + " of " + ej.label +
                                                          " need not divide index " + ei.index.str() + " of " + ei.label
                                                    : "no upper bound on the index of " + ej.label;
        return UnramifiedWitness{z, ei.index, ej.index, reason};
      }
    }
  }
  return std::nullopt;
}

// ---- composition ------------------------------------------------------------------------

namespace {

struct Wildcard {
  std::string arrow;
  std::vector<std::string> bases;
};

std::optional<Wildcard> parse_wildcard(const std::string& label) {
  if (label.rfind("any:", 0) != 0) return std::nullopt;
  const auto colon = label.find(':', 4);
  if (colon == std::string::npos) throw std::invalid_argument("malformed class \"" + label + "\"");
  Wildcard w{label.substr(4, colon - 4), {}};
  std::stringstream ss(label.substr(colon + 1));
  std::string b;
  while (std::getline(ss, b, ','))
    if (!b.empty()) w.bases.push_back(b);
  if (w.arrow.empty() || w.bases.empty()) throw std::invalid_argument("malformed class \"" + label + "\"");
  return w;
}

bool surely_one(const std::vector<FiberEntry>& f) {
  return std::all_of(f.begin(), f.end(), [](const FiberEntry& e) { return e.index.known_upper() && e.index.divides == 1; });
}

}  // namespace

CoverProfile compose_profiles(const CoverProfile& outer, const CoverProfile& inner, const ClassResolver& resolver) {
  if (!outer.source.empty() && !inner.target.empty() && outer.source != inner.target)
    throw BaseMismatch("compose: " + inner.source + " -> " + inner.target + " then " + outer.source + " -> " +
                       outer.target);
  CoverProfile out;
  out.source = inner.source;
  out.target = outer.target;
  if (outer.degree && inner.degree) out.degree = *outer.degree * *inner.degree;
  out.source_genus = inner.source_genus;
  out.base_genus = outer.base_genus;

  std::set<std::string> reached;
  for (const auto& [z, f] : outer.fibers) {
    auto& of = out.fiber_mut(z);
    for (const auto& eo : f) {
      if (auto w = parse_wildcard(eo.label)) {
        if (!resolver) throw std::invalid_argument("class \"" + eo.label + "\" needs a resolver");
        std::optional<IndexBound> joined;
        for (const auto& b : w->bases) {
          for (const auto& cls : resolver(w->arrow, b)) {
            for (const auto& ei : inner.fiber_or_default(cls)) joined = joined ? join(*joined, ei.index) : ei.index;
          }
        }
        if (!joined) throw std::invalid_argument("class \"" + eo.label + "\" resolves to nothing");
        // one class per base point: the same wildcard over two bases names different points
        of.push_back(FiberEntry{eo.label + "@" + z, *joined * eo.index, std::nullopt});
        continue;
      }
      reached.insert(eo.label);
      for (const auto& ei : inner.fiber_or_default(eo.label)) {
        FiberEntry e{ei.label, ei.index * eo.index, std::nullopt};
        if (ei.count && eo.count) e.count = *ei.count * *eo.count;
        of.push_back(e);
      }
    }
  }
  bool complete = outer.complete_off_list && inner.complete_off_list;
  for (const auto& [y, f] : inner.fibers)
    if (complete && !surely_one(f) && !reached.count(y)) complete = false;
  out.complete_off_list = complete;
  out.check_fiber_sums();
  return out;
}

bool surely_unramified(const CoverProfile& p, std::string* why) {
  if (!p.complete_off_list) {
    if (why) *why = "fibers off the list are unknown";
    return false;
  }
  for (const auto& [b, f] : p.fibers) {
    for (const auto& e : f) {
      if (!(e.index.known_upper() && e.index.divides == 1)) {
        if (why) *why = "index " + e.index.str() + " at " + e.label + " over " + b;
        return false;
      }
    }
  }
  return true;
}

// ---- builtin profiles -------------------------------------------------------------------

CoverProfile cyclic_profile(const Integer& degree, const std::vector<std::pair<std::string, Integer>>& indices) {
  CoverProfile p;
  p.degree = degree;
  for (const auto& [b, e] : indices) {
    if (e < 1 || !divides(e, degree)) throw InconsistentProfile("cyclic profile: index " + e.get_str() + " over " + b);
    p.fiber_mut(b).push_back(FiberEntry{b + "#" + e.get_str(), IndexBound::exact(e), Integer(degree / e)});
  }
  return p;
}

CoverProfile y_projection_profile(long m, const std::map<std::string, std::string>& labels, const std::string& prefix) {
  if (m < 1) throw std::invalid_argument("y-projection: m must be positive");
  auto name = [&](const std::string& k) {
    auto it = labels.find(k);
    return it == labels.end() ? k : it->second;
  };
  CoverProfile p;
  p.degree = Integer(m);
  p.base_genus = 0;
  p.source_genus = hyperelliptic_genus(m);
  const Integer M(m);
  p.fiber_mut(name("i")).push_back(FiberEntry{prefix + ":i", IndexBound::exact(M), Integer(1)});
  p.fiber_mut(name("-i")).push_back(FiberEntry{prefix + ":-i", IndexBound::exact(M), Integer(1)});
  if (m % 2 == 0)
    p.fiber_mut(name("inf")).push_back(FiberEntry{prefix + ":inf", IndexBound::exact(Integer(m / 2)), Integer(2)});
  else
    p.fiber_mut(name("inf")).push_back(FiberEntry{prefix + ":inf", IndexBound::exact(M), Integer(1)});
  return p;
}

namespace {

QPoly x_power_minus_one(long m) {
  std::vector<Rational> c(static_cast<std::size_t>(m) + 1, Rational(0));
  c[0] = -1;
  c[static_cast<std::size_t>(m)] = 1;
  return QPoly(std::move(c));
}

std::string base_label(const P1Point& y) { return y.is_infinity() ? std::string("inf") : y.value().to_rational().get_str(); }

}  // namespace

CoverProfile curve_map_profile(long m, const RationalMap& phi, const std::vector<P1Point>& bases, const std::string& prefix) {
  if (m < 0) throw std::invalid_argument("curve map: m must be nonnegative");
  const FieldPtr Q = NumberField::rationals();
  const long dphi = phi.degree();
  if (dphi < 1) throw InconsistentProfile("curve map: constant map");
  CoverProfile p;
  p.degree = Integer((m > 0 ? 2 : 1) * dphi);
  p.base_genus = 0;
  const QPoly cyc = m > 0 ? x_power_minus_one(m) : QPoly(Rational(1));
  const P1Point at_inf = phi.eval(P1Point::infinity(), Q);

  long phi_excess = 0;
  long cyc_hit = 0;
  bool inf_hit = false;
  int serial = 0;
  for (const auto& y : bases) {
    if (!y.is_rational()) throw std::invalid_argument("curve map: bases must be rational");
    const std::string b = base_label(y);
    auto& f = p.fiber_mut(b);
    if (!f.empty()) throw std::invalid_argument("curve map: base " + b + " listed twice");
    const QPoly poly = y.is_infinity() ? phi.den() : phi.num() - phi.den().scaled(y.value().to_rational());

    // points of the line over y, then their preimages on the curve
    auto add = [&](const std::string& label, long e, long npts, bool on_branch) {
      if (m == 0) {
        f.push_back(FiberEntry{label, IndexBound::exact(Integer(e)), Integer(npts)});
      } else if (on_branch) {
        f.push_back(FiberEntry{label, IndexBound::exact(Integer(2 * e)), Integer(npts)});
      } else {
        f.push_back(FiberEntry{label, IndexBound::exact(Integer(e)), Integer(2 * npts)});
      }
    };
    if (poly.degree() >= 1) {
      const auto sqf = squarefree_decomposition(poly);
      for (std::size_t k = 0; k < sqf.size(); ++k) {
        QPoly g = sqf[k];
        if (g.degree() < 1) continue;
        const long e = static_cast<long>(k) + 1;
        phi_excess += (e - 1) * g.degree();
        for (const auto& r : rational_roots(g)) {
          const QPoly lin = qpoly({0, 1}) - QPoly(r);
          g = exact_div(g, lin);
          const bool br = m > 0 && sgn(cyc.eval(r)) == 0;
          if (br) ++cyc_hit;
          add(r.get_str(), e, 1, br);
        }
        if (g.degree() < 1) continue;
        const QPoly h = m > 0 ? gcd(g, cyc).monic() : QPoly(Rational(1));
        const QPoly rest = exact_div(g, h);
        if (h.degree() >= 1) {
          cyc_hit += h.degree();
          add(prefix + "@" + b + "#" + std::to_string(++serial), e, h.degree(), true);
        }
        if (rest.degree() >= 1) add(prefix + "@" + b + "#" + std::to_string(++serial), e, rest.degree(), false);
      }
    }
    if (at_inf == y) {
      const long e = local_index(phi, P1Point::infinity());
      phi_excess += e - 1;
      const bool br = m % 2 == 1;
      if (br) inf_hit = true;
      add("inf", e, 1, br);
    }
  }
  if (phi_excess != 2 * dphi - 2)
    throw InconsistentProfile("curve map: some critical value of the map lies outside the listed bases");
  if (m > 0 && cyc_hit != m) throw InconsistentProfile("curve map: some branch point of the curve maps outside the bases");
  if (m % 2 == 1 && !inf_hit)
    throw InconsistentProfile("curve map: the point at infinity of the curve maps outside the bases");
  p.source_genus = m > 0 ? hyperelliptic_genus(m) : 0;
  p.check_fiber_sums();
  return p;
}

QPoly division_poly_zeroset(const Rational& a, const Rational& b, int m) {
  if (sgn(4 * a * a * a + 27 * b * b) == 0) throw SingularCurve("4a^3 + 27b^2 = 0");
  if (m == 2) return QPoly(std::vector<Rational>{b, a, Rational(0), Rational(1)});
  if (m == 3) return QPoly(std::vector<Rational>{Rational(-a * a), Rational(12 * b), Rational(6 * a), Rational(0), Rational(3)});
  throw std::invalid_argument("division polynomial: m must be 2 or 3");
}

CoverProfile x_projection_profile(long n) {
  if (n < 1) throw std::invalid_argument("x-projection: n must be positive");
  CoverProfile p;
  p.source = "C(" + std::to_string(n) + ")";
  p.target = "P1";
  p.degree = Integer(2);
  p.base_genus = 0;
  // one base label per root of x^n - 1 keeps the Riemann-Hurwitz sum pointwise
  for (long k = 0; k < n; ++k)
    p.fiber_mut("zeta^" + std::to_string(k)).push_back(FiberEntry{"w" + std::to_string(k), IndexBound::exact(2), Integer(1)});
  if (n % 2 == 1) p.fiber_mut("inf").push_back(FiberEntry{"inf", IndexBound::exact(2), Integer(1)});
  return p;
}

long hyperelliptic_genus(long n) {
  if (n < 1) throw std::invalid_argument("genus: n must be positive");
  if (n > 4096) {
    // same count as the profile, without materialising n fibers
    const long branch = n + (n % 2);
    return (branch - 2) / 2;
  }
  return rh_genus(x_projection_profile(n));
}

}  // namespace ramcalc
