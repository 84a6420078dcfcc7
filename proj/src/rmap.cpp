#include "ramcalc/rmap.hpp"

namespace ramcalc {

RationalMap::RationalMap(QPoly num, QPoly den) {
  if (den.is_zero()) throw std::invalid_argument("rational map with zero denominator");
  QPoly g = gcd(num, den);
  if (g.degree() > 0) {
    num = exact_div(num, g);
    den = exact_div(den, g);
  }
  Rational lc = den.lead();
  num_ = num.scaled(Rational(1 / lc));
  den_ = den.monic();
  if (degree() < 1) throw std::invalid_argument("rational map must be non-constant");
}

RationalMap RationalMap::parse(const std::string& text, std::optional<long> param) {
  RatFun r = parse_rational_function(text, param);
  return RationalMap(std::move(r.num), std::move(r.den));
}

P1Point RationalMap::eval(const P1Point& x, const FieldPtr& field) const {
  if (x.is_infinity()) {
    if (num_.degree() > den_.degree()) return P1Point::infinity();
    if (num_.degree() < den_.degree()) return P1Point::rational(Rational(0), field);
    return P1Point::rational(num_.lead(), field);
  }
  const NfElement& v = x.value();
  if (v.is_rational()) {
    Rational q = v.to_rational();
    Rational d = den_.eval(q);
    if (sgn(d) == 0) return P1Point::infinity();
    return P1Point(NfElement(v.field(), Rational(num_.eval(q) / d)));
  }
  NfElement d = den_.eval(v);
  if (d.is_zero()) return P1Point::infinity();
  return P1Point(num_.eval(v) / d);
}

std::string RationalMap::str() const {
  if (den_.degree() == 0) return to_string(num_);
  return "(" + to_string(num_) + ")/(" + to_string(den_) + ")";
}

RationalMap compose(const RationalMap& g, const RationalMap& f) {
  const int d = g.degree();
  std::vector<QPoly> ppow{QPoly(Rational(1))}, qpow{QPoly(Rational(1))};
  for (int i = 1; i <= d; ++i) {
    ppow.push_back(ppow.back() * f.num());
    qpow.push_back(qpow.back() * f.den());
  }
  auto homogenize = [&](const QPoly& a) {
    QPoly acc;
    for (int i = 0; i <= a.degree(); ++i) {
      const Rational& c = a.coeffs()[static_cast<std::size_t>(i)];
      if (sgn(c) == 0) continue;
      acc += (ppow[static_cast<std::size_t>(i)] * qpow[static_cast<std::size_t>(d - i)]).scaled(c);
    }
    return acc;
  };
  return RationalMap(homogenize(g.num()), homogenize(g.den()));
}

QPoly wronskian(const RationalMap& f) {
  return f.num().derivative() * f.den() - f.num() * f.den().derivative();
}

int local_index(const RationalMap& f, const P1Point& x) {
  if (x.is_infinity()) {
    RationalMap h = compose(f, RationalMap::reciprocal());
    return local_index(h, P1Point::rational(Rational(0), NumberField::rationals()));
  }
  const NfElement& v = x.value();
  if (v.is_rational()) {
    Rational q = v.to_rational();
    Rational d = f.den().eval(q);
    if (sgn(d) == 0) return root_multiplicity(f.den(), q);
    Rational y = f.num().eval(q) / d;
    return root_multiplicity(QPoly(f.num() - f.den().scaled(y)), q);
  }
  const FieldPtr& field = v.field();
  NfPoly den = to_nf_poly(f.den(), field);
  NfElement d = den.eval(v);
  if (d.is_zero()) return root_multiplicity(den, v);
  NfPoly num = to_nf_poly(f.num(), field);
  NfElement y = num.eval(v) / d;
  return root_multiplicity(NfPoly(num - den.scaled(y)), v);
}

RamDivisorCheck ram_divisor(const RationalMap& f, const std::vector<RamPoint>& claimed) {
  for (std::size_t i = 0; i < claimed.size(); ++i)
    for (std::size_t j = i + 1; j < claimed.size(); ++j)
      if (claimed[i].point == claimed[j].point)
        throw std::invalid_argument("ramification point listed twice: " + claimed[i].point.str());
  RamDivisorCheck out;
  out.total = 0;
  out.expected = 2 * f.degree() - 2;
  for (const auto& rp : claimed) {
    Integer actual = local_index(f, rp.point);
    if (actual != rp.index) out.mismatches.push_back({rp.point, rp.index, actual});
    if (actual == 1) out.unramified_claims.push_back(rp.point);
    out.total += actual - 1;
  }
  return out;
}

PointSet branch_locus(const RationalMap& f, const std::vector<RamPoint>& ram, const FieldPtr& field) {
  std::vector<P1Point> images;
  images.reserve(ram.size());
  for (const auto& rp : ram) images.push_back(f.eval(rp.point, field));
  return PointSet::from_points(images);
}

PointSet image_set(const RationalMap& f, const PointSet& s) {
  PointSet out;
  QPoly poles = gcd(s.finite, f.den());
  QPoly regular = s.finite;
  if (poles.degree() > 0) {
    out.infinity = true;
    regular = exact_div(regular, poles);
  }
  if (regular.degree() > 0) out.finite = squarefree_part(root_image(regular, f.num(), f.den()));
  if (s.infinity) {
    P1Point y = f.eval(P1Point::infinity(), NumberField::rationals());
    if (y.is_infinity()) {
      out.infinity = true;
    } else {
      out = out.unite(PointSet::from_polynomial(linear_factor(y.value().to_rational())));
    }
  }
  return out;
}

namespace {

template <class K>
int distinct_roots(const Polynomial<K>& p) {
  if (p.degree() <= 0) return 0;
  return squarefree_part(p).degree();
}

}  // namespace

int distinct_preimages(const RationalMap& f, const P1Point& y) {
  const bool inf_maps_to_inf = f.num().degree() > f.den().degree();
  if (y.is_infinity()) return distinct_roots(f.den()) + (inf_maps_to_inf ? 1 : 0);
  const NfElement& v = y.value();
  P1Point at_inf = f.eval(P1Point::infinity(), v.field());
  int extra = (!at_inf.is_infinity() && at_inf == y) ? 1 : 0;
  if (v.is_rational()) return distinct_roots(QPoly(f.num() - f.den().scaled(v.to_rational()))) + extra;
  NfPoly num = to_nf_poly(f.num(), v.field());
  NfPoly den = to_nf_poly(f.den(), v.field());
  return distinct_roots(NfPoly(num - den.scaled(v))) + extra;
}

FiberCheck fiber_check(const RationalMap& f, const P1Point& y, const std::vector<RamPoint>& ram,
                       const FieldPtr& field) {
  FiberCheck out;
  out.base = y;
  out.distinct = distinct_preimages(f, y);
  out.required_excess = Integer(f.degree() - out.distinct);
  out.claimed_excess = 0;
  for (const auto& rp : ram)
    if (f.eval(rp.point, field) == y) out.claimed_excess += rp.index - 1;
  return out;
}

}  // namespace ramcalc
