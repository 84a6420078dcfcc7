#pragma once

#include "ramcalc/polynomial.hpp"

#include <memory>
#include <string>

namespace ramcalc {

enum class Irreducibility { Proved, Assumed };

/// Q[a]/(p(a)) for a monic irreducible integer polynomial p.
class NumberField {
 public:
  /// Throws std::invalid_argument if p is not monic with integer
  /// coefficients, or is provably reducible.
  explicit NumberField(QPoly modulus, std::string name = {});

  static std::shared_ptr<const NumberField> rationals();
  /// Q(zeta_n), defined by the n-th cyclotomic polynomial.
  static std::shared_ptr<const NumberField> cyclotomic_field(unsigned long n);

  const QPoly& modulus() const { return modulus_; }
  int degree() const { return modulus_.degree(); }
  Irreducibility irreducibility() const { return irreducibility_; }
  const std::string& name() const { return name_; }
  unsigned long cyclotomic_index() const { return cyclotomic_index_; }

  bool operator==(const NumberField& o) const { return modulus_ == o.modulus_; }

 private:
  QPoly modulus_;
  std::string name_;
  Irreducibility irreducibility_ = Irreducibility::Proved;
  unsigned long cyclotomic_index_ = 0;
};

using FieldPtr = std::shared_ptr<const NumberField>;

class NfElement {
 public:
  NfElement() = default;  // placeholder without a field; only assignable
  explicit NfElement(FieldPtr field) : field_(std::move(field)) {}
  NfElement(FieldPtr field, const Rational& q);
  NfElement(FieldPtr field, QPoly residue);

  static NfElement generator(const FieldPtr& field);

  const FieldPtr& field() const { return field_; }
  const QPoly& residue() const { return residue_; }
  bool is_zero() const { return residue_.is_zero(); }
  bool is_rational() const { return residue_.degree() <= 0; }
  Rational to_rational() const;  // throws if not rational

  NfElement inverse() const;  // throws std::domain_error on zero

  friend NfElement operator+(const NfElement& a, const NfElement& b);
  friend NfElement operator-(const NfElement& a, const NfElement& b);
  friend NfElement operator*(const NfElement& a, const NfElement& b);
  friend NfElement operator/(const NfElement& a, const NfElement& b);
  friend bool operator==(const NfElement& a, const NfElement& b);

  /// Characteristic polynomial of multiplication by this element; its
  /// squarefree part is the minimal polynomial over Q.
  QPoly charpoly() const;
  QPoly minimal_polynomial() const { return squarefree_part(charpoly()); }

  std::string str(char gen = 't') const;

 private:
  static const FieldPtr& common(const NfElement& a, const NfElement& b);
  FieldPtr field_;
  QPoly residue_;
};

inline NfElement zero_like(const NfElement& x) { return NfElement(x.field()); }
inline NfElement one_like(const NfElement& x) { return NfElement(x.field(), Rational(1)); }
inline bool field_is_zero(const NfElement& x) { return x.is_zero(); }
inline NfElement scale_int(const NfElement& x, long n) {
  return NfElement(x.field(), x.residue().scaled(Rational(n)));
}
inline NfElement embed(const Rational& q, const NfElement& like) { return NfElement(like.field(), q); }

using NfPoly = Polynomial<NfElement>;

NfPoly to_nf_poly(const QPoly& p, const FieldPtr& field);

/// Image of the roots of `s` under the polynomial `f`: a polynomial in y with
/// roots f(alpha) for alpha running over the roots of s (with multiplicity),
/// i.e. Res_z(s(z), y - f(z)) normalised to be monic. Computed by evaluation
/// at deg(s)+1 rational points and interpolation.
QPoly root_image(const QPoly& s, const QPoly& f);

/// Image of the roots of `s` under the rational function num/den, assuming
/// no root of s is a pole: Res_z(s(z), num(z) - y den(z)) up to a constant,
/// returned monic.
QPoly root_image(const QPoly& s, const QPoly& num, const QPoly& den);

}  // namespace ramcalc
