#include "ramcalc/number_field.hpp"

#include <map>
#include <mutex>

namespace ramcalc {

NumberField::NumberField(QPoly modulus, std::string name) : modulus_(std::move(modulus)), name_(std::move(name)) {
  if (modulus_.degree() < 1) throw std::invalid_argument("number field modulus must be non-constant");
  if (modulus_.lead() != 1) throw std::invalid_argument("number field modulus must be monic");
  for (const auto& c : modulus_.coeffs())
    if (c.get_den() != 1) throw std::invalid_argument("number field modulus must have integer coefficients");
  if (cyclotomic_index_ == 0) {
    auto irr = is_irreducible(modulus_);
    if (!irr) {
      irreducibility_ = Irreducibility::Assumed;
    } else if (!*irr) {
      throw std::invalid_argument("number field modulus is reducible: " + to_string(modulus_, 't'));
    }
  }
  if (name_.empty()) name_ = "Q[t]/(" + to_string(modulus_, 't') + ")";
}

std::shared_ptr<const NumberField> NumberField::rationals() {
  static const auto q = std::make_shared<const NumberField>(qpoly({0, 1}), "Q");
  return q;
}

std::shared_ptr<const NumberField> NumberField::cyclotomic_field(unsigned long n) {
  static std::mutex mu;
  static std::map<unsigned long, std::shared_ptr<const NumberField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  QPoly phi = cyclotomic(n);
  // Cyclotomic polynomials are irreducible; skip the search.
  auto field = std::make_shared<NumberField>(QPoly(qpoly({0, 1})), "Q(zeta_" + std::to_string(n) + ")");
  field->modulus_ = std::move(phi);
  field->cyclotomic_index_ = n;
  field->irreducibility_ = Irreducibility::Proved;
  cache.emplace(n, field);
  return field;
}

NfElement::NfElement(FieldPtr field, const Rational& q) : field_(std::move(field)), residue_(q) {}

NfElement::NfElement(FieldPtr field, QPoly residue) : field_(std::move(field)) {
  if (!field_) throw std::invalid_argument("NfElement without a field");
  residue_ = residue.degree() >= field_->degree() ? residue % field_->modulus() : std::move(residue);
}

NfElement NfElement::generator(const FieldPtr& field) { return NfElement(field, qpoly({0, 1})); }

Rational NfElement::to_rational() const {
  if (!is_rational()) throw std::domain_error("field element is not rational: " + str());
  return residue_.is_zero() ? Rational(0) : residue_.lead();
}

const FieldPtr& NfElement::common(const NfElement& a, const NfElement& b) {
  if (!a.field_) return b.field_;
  if (!b.field_ || a.field_ == b.field_ || *a.field_ == *b.field_) return a.field_;
  throw std::invalid_argument("arithmetic between different number fields");
}

NfElement operator+(const NfElement& a, const NfElement& b) {
  const auto& f = NfElement::common(a, b);
  NfElement r(f);
  r.residue_ = a.residue_ + b.residue_;
  return r;
}

NfElement operator-(const NfElement& a, const NfElement& b) {
  const auto& f = NfElement::common(a, b);
  NfElement r(f);
  r.residue_ = a.residue_ - b.residue_;
  return r;
}

NfElement operator*(const NfElement& a, const NfElement& b) {
  return NfElement(NfElement::common(a, b), a.residue_ * b.residue_);
}

NfElement operator/(const NfElement& a, const NfElement& b) { return a * b.inverse(); }

bool operator==(const NfElement& a, const NfElement& b) {
  NfElement::common(a, b);
  return a.residue_ == b.residue_;
}

NfElement NfElement::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero field element");
  auto [g, s, t] = xgcd(residue_, field_->modulus());
  (void)t;
  if (g.degree() != 0) throw std::domain_error("element is not invertible (modulus reducible?)");
  return NfElement(field_, s);
}

QPoly NfElement::charpoly() const {
  if (!field_) throw std::logic_error("charpoly of element without a field");
  return root_image(field_->modulus(), residue_);
}

std::string NfElement::str(char gen) const { return to_string(residue_, gen); }

NfPoly to_nf_poly(const QPoly& p, const FieldPtr& field) {
  std::vector<NfElement> c;
  c.reserve(p.coeffs().size());
  for (const auto& q : p.coeffs()) c.emplace_back(field, q);
  return NfPoly(std::move(c));
}

QPoly root_image(const QPoly& s, const QPoly& f) { return root_image(s, f, qpoly({1})); }

QPoly root_image(const QPoly& s, const QPoly& num, const QPoly& den) {
  if (s.degree() < 1) throw std::invalid_argument("root_image: constant polynomial");
  if (den.is_zero()) throw std::invalid_argument("root_image: zero denominator");
  const int n = s.degree();
  const int top = std::max(num.degree(), den.degree());
  if (top <= 0) {
    // Constant function: every root maps to c.
    Rational c = (num.is_zero() ? Rational(0) : num.lead()) / den.lead();
    return power(linear_factor(c), static_cast<unsigned long>(n));
  }
  std::optional<Rational> bad;
  if (num.degree() == den.degree()) bad = Rational(num.lead() / den.lead());
  std::vector<Rational> xs, ys;
  for (long y = 0; static_cast<int>(xs.size()) <= n; ++y) {
    Rational yy(y);
    if (bad && *bad == yy) continue;
    QPoly b = num - den.scaled(yy);
    xs.push_back(yy);
    ys.push_back(resultant(s, b));
  }
  QPoly r = interpolate(xs, ys);
  if (r.degree() != n) throw std::domain_error("root_image: a root of s is a pole");
  return r.monic();
}

}  // namespace ramcalc
