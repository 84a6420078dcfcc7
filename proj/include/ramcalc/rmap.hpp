#pragma once

#include "ramcalc/number_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ramcalc {

/// A point of the projective line: a field element or infinity.
class P1Point {
 public:
  P1Point() = default;  // infinity
  explicit P1Point(NfElement value) : value_(std::move(value)) {}

  static P1Point infinity() { return {}; }
  static P1Point rational(const Rational& q, const FieldPtr& field) { return P1Point(NfElement(field, q)); }

  bool is_infinity() const { return !value_.has_value(); }
  const NfElement& value() const;  // throws on infinity
  bool is_rational() const { return is_infinity() || value_->is_rational(); }

  /// "inf", a rational "p/q", or the element in the generator t.
  std::string str() const;

  friend bool operator==(const P1Point& a, const P1Point& b);

 private:
  std::optional<NfElement> value_;
};

/// A finite set of points closed under conjugation, stored as the monic
/// squarefree polynomial vanishing on its finite part plus an infinity flag.
struct PointSet {
  QPoly finite = QPoly(Rational(1));
  bool infinity = false;

  static PointSet empty() { return {}; }
  static PointSet from_polynomial(const QPoly& p, bool with_infinity = false);
  /// The smallest conjugation-closed set containing the given points.
  static PointSet from_points(const std::vector<P1Point>& points);

  PointSet unite(const PointSet& other) const;
  bool contains(const P1Point& x) const;
  bool subset_of(const PointSet& other) const;
  int size() const { return finite.degree() + (infinity ? 1 : 0); }
  std::string str() const;

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.infinity == b.infinity && a.finite == b.finite;
  }
};

/// A morphism of the projective line with rational coefficients, kept as
/// coprime numerator and monic denominator.
class RationalMap {
 public:
  RationalMap(QPoly num, QPoly den);
  static RationalMap polynomial(QPoly p) { return RationalMap(std::move(p), QPoly(Rational(1))); }
  static RationalMap parse(const std::string& text, std::optional<long> param = std::nullopt);
  static RationalMap identity() { return polynomial(qpoly({0, 1})); }
  static RationalMap reciprocal() { return RationalMap(qpoly({1}), qpoly({0, 1})); }

  const QPoly& num() const { return num_; }
  const QPoly& den() const { return den_; }
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  /// Image of x; `field` supplies the field of the result when x is infinity.
  P1Point eval(const P1Point& x, const FieldPtr& field) const;

  std::string str() const;

  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  QPoly num_;
  QPoly den_;
};

/// g after f.
RationalMap compose(const RationalMap& g, const RationalMap& f);

/// P'Q - PQ'; its zeros are the finite critical points.
QPoly wronskian(const RationalMap& f);

/// e(x | f(x)).
int local_index(const RationalMap& f, const P1Point& x);

struct RamPoint {
  P1Point point;
  Integer index;
};

struct RamMismatch {
  P1Point point;
  Integer claimed;
  Integer actual;
};

struct RamDivisorCheck {
  std::vector<RamMismatch> mismatches;
  std::vector<P1Point> unramified_claims;  // claimed points with actual index 1
  Integer total;                           // sum of (e - 1) over claimed points
  Integer expected;                        // 2 deg - 2
  bool complete() const { return total == expected; }
  bool ok() const { return mismatches.empty() && complete(); }
  /// Missing amount of sum (e-1); positive when points are missing.
  Integer gap() const { return expected - total; }
};

RamDivisorCheck ram_divisor(const RationalMap& f, const std::vector<RamPoint>& claimed);

/// Images of the ramification points.
PointSet branch_locus(const RationalMap& f, const std::vector<RamPoint>& ram, const FieldPtr& field);

/// f(S) as a point set, computed from resultants without factoring.
PointSet image_set(const RationalMap& f, const PointSet& s);

/// Number of distinct preimages of y.
int distinct_preimages(const RationalMap& f, const P1Point& y);

struct FiberCheck {
  P1Point base;
  int distinct = 0;
  Integer claimed_excess;  // sum of (e-1) over claimed points in the fiber
  Integer required_excess;  // deg - distinct
  bool ok() const { return claimed_excess == required_excess; }
};

/// Confirms that the claimed ramification points over y account for the whole
/// fiber, i.e. the indices over y sum to deg f.
FiberCheck fiber_check(const RationalMap& f, const P1Point& y, const std::vector<RamPoint>& ram,
                       const FieldPtr& field);

}  // namespace ramcalc
