#pragma once

#include "ramcalc/integer.hpp"
#include "ramcalc/rmap.hpp"

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramcalc {

/// c times a product of distinct formal parameters, e.g. "8n" or "2^11*3^3*n".
struct ParamIndex {
  Integer coeff = 1;
  std::vector<std::string> params;  // sorted, no repeats

  static ParamIndex parse(const std::string& text);
  Integer instantiate(const std::map<std::string, long>& values) const;
  /// Sufficient symbolic test: every parameter of this appears in other and
  /// the coefficients divide.
  bool divides_symbolically(const ParamIndex& other) const;
  std::string str() const;
  bool operator==(const ParamIndex&) const = default;
};

/// An index e known only up to M | e | D; D = 0 means no upper information.
struct IndexBound {
  Integer multiple_of = 1;
  Integer divides = 0;

  static IndexBound exact(const Integer& e) { return {e, e}; }
  static IndexBound unknown() { return {1, 0}; }
  bool is_exact() const { return divides != 0 && divides == multiple_of; }
  bool known_upper() const { return divides != 0; }
  /// Guaranteed e | other for every admissible pair of values.
  bool surely_divides(const IndexBound& other) const;
  bool consistent() const;
  std::string str() const;
  bool operator==(const IndexBound&) const = default;
};

IndexBound operator*(const IndexBound& a, const IndexBound& b);
/// Smallest bound containing both.
IndexBound join(const IndexBound& a, const IndexBound& b);

struct FiberEntry {
  std::string label;  // class of source points
  IndexBound index;
  std::optional<Integer> count;  // number of points in the class, per base point
};

class InconsistentProfile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BaseMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ramification data of a cover at the level of labelled fibers. Each base
/// label names one base point (or a class of base points treated alike).
/// When `complete_off_list` holds, base points that are not listed have
/// unramified fibers.
struct CoverProfile {
  std::string source;
  std::string target;
  std::optional<Integer> degree;
  std::vector<std::pair<std::string, std::vector<FiberEntry>>> fibers;
  bool complete_off_list = true;
  std::optional<long> source_genus;
  std::optional<long> base_genus;

  const std::vector<FiberEntry>* fiber(const std::string& base) const;
  std::vector<FiberEntry>& fiber_mut(const std::string& base);
  /// Listed fiber, else the unramified default "*<base>" when the profile is
  /// complete off its list, else a single unknown entry "?<base>".
  std::vector<FiberEntry> fiber_or_default(const std::string& base) const;
  std::vector<std::string> bases() const;
  /// Throws InconsistentProfile when a fully known fiber does not sum to the degree.
  void check_fiber_sums() const;
  std::string str() const;
};

/// 2g - 2 = d (2g'' - 2) + sum (e - 1); needs exact indices and counts.
long rh_genus(const CoverProfile& p);

struct Compositum {
  CoverProfile over_base;  // W -> Z
  CoverProfile over_left;  // W -> X
  CoverProfile over_right;  // W -> Y
};

/// Abhyankar's lemma applied fiber by fiber: above a pair of points with
/// indices a and b lie gcd(a, b) points of index lcm(a, b). Index bounds
/// propagate as M = Mj / gcd(Mj, Di), D = Dj / gcd(Dj, Mi) over the left side.
/// Throws BaseMismatch when the targets differ.
Compositum compositum_profile(const CoverProfile& left, const CoverProfile& right, const std::string& top = "W");

struct UnramifiedWitness {
  std::string base;
  IndexBound left;
  IndexBound right;
  std::string reason;
};

/// True iff the projection of the compositum onto the left source is surely
/// unramified: every right index over a base point divides every left index
/// there. Returns the first offending triple otherwise.
std::optional<UnramifiedWitness> unramified_obstruction(const CoverProfile& left, const CoverProfile& right);
inline bool is_unramified_over(const CoverProfile& left, const CoverProfile& right) {
  return !unramified_obstruction(left, right).has_value();
}

/// Sheet labels of the form "any:<name>:<b1>,<b2>" stand for an unknown point
/// among the classes that `resolver(name, b)` lists.
using ClassResolver = std::function<std::vector<std::string>(const std::string& arrow, const std::string& base)>;

/// outer after inner. Fibers of the inner map are looked up by the sheet
/// labels of the outer map.
CoverProfile compose_profiles(const CoverProfile& outer, const CoverProfile& inner, const ClassResolver& resolver = {});

/// True iff every listed index is surely 1 and the profile is complete off its list.
bool surely_unramified(const CoverProfile& p, std::string* why = nullptr);

/// Profile of a cyclic cover with the given index over each base label.
CoverProfile cyclic_profile(const Integer& degree, const std::vector<std::pair<std::string, Integer>>& indices);

/// y-projection of y^2 = x^m - 1, of degree m: one point of index m over
/// each of y = i and y = -i, and over infinity two points of index m/2 (m even)
/// or one point of index m (m odd). `labels` renames "i", "-i", "inf".
CoverProfile y_projection_profile(long m, const std::map<std::string, std::string>& labels, const std::string& prefix);

/// The standard double cover y^2 = x^m - 1 followed by a rational map, over
/// the listed rational bases. `m` = 0 stands for the projective line itself.
/// Throws InconsistentProfile when some branch value lies outside the list.
CoverProfile curve_map_profile(long m, const RationalMap& phi, const std::vector<P1Point>& bases,
                               const std::string& prefix);

/// x-coordinates of the nontrivial m-torsion of y^2 = x^3 + a x + b, m in {2, 3}.
class SingularCurve : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
QPoly division_poly_zeroset(const Rational& a, const Rational& b, int m);

/// Genus of C_n (smooth model of y^2 = x^n - 1) from its x-projection profile.
long hyperelliptic_genus(long n);
CoverProfile x_projection_profile(long n);

}  // namespace ramcalc
