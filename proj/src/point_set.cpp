#include "ramcalc/rmap.hpp"

namespace ramcalc {

const NfElement& P1Point::value() const {
  if (!value_) throw std::logic_error("value() of the point at infinity");
  return *value_;
}

std::string P1Point::str() const {
  if (is_infinity()) return "inf";
  if (value_->is_rational()) return value_->to_rational().get_str();
  return value_->str('t');
}

bool operator==(const P1Point& a, const P1Point& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && b.is_infinity();
  if (a.value_->is_rational() && b.value_->is_rational()) return a.value_->to_rational() == b.value_->to_rational();
  const auto& fa = a.value_->field();
  const auto& fb = b.value_->field();
  if (fa != fb && !(*fa == *fb)) return false;
  return *a.value_ == *b.value_;
}

namespace {

QPoly lcm_poly(const QPoly& a, const QPoly& b) {
  QPoly g = gcd(a, b);
  return exact_div(a * b, g).monic();
}

QPoly point_polynomial(const NfElement& v) {
  if (v.is_rational()) return linear_factor(v.to_rational());
  return v.minimal_polynomial();
}

}  // namespace

PointSet PointSet::from_polynomial(const QPoly& p, bool with_infinity) {
  if (p.is_zero()) throw std::invalid_argument("point set from the zero polynomial");
  PointSet s;
  s.finite = squarefree_part(p);
  s.infinity = with_infinity;
  return s;
}

PointSet PointSet::from_points(const std::vector<P1Point>& points) {
  PointSet s;
  for (const auto& x : points) {
    if (x.is_infinity()) {
      s.infinity = true;
    } else {
      s.finite = lcm_poly(s.finite, point_polynomial(x.value()));
    }
  }
  return s;
}

PointSet PointSet::unite(const PointSet& other) const {
  PointSet s;
  s.finite = lcm_poly(finite, other.finite);
  s.infinity = infinity || other.infinity;
  return s;
}

bool PointSet::contains(const P1Point& x) const {
  if (x.is_infinity()) return infinity;
  return finite.eval(x.value()).is_zero();
}

bool PointSet::subset_of(const PointSet& other) const {
  if (infinity && !other.infinity) return false;
  return (other.finite % finite).is_zero();
}

std::string PointSet::str() const {
  std::vector<std::string> parts;
  QPoly rest = finite;
  try {
    for (const auto& r : rational_roots(finite)) {
      parts.push_back(r.get_str());
      rest = exact_div(rest, linear_factor(r));
    }
  } catch (const std::runtime_error&) {
    rest = finite;
    parts.clear();
  }
  if (rest.degree() > 0) parts.push_back("roots(" + to_string(rest) + ")");
  if (infinity) parts.push_back("inf");
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + "}";
}

}  // namespace ramcalc
