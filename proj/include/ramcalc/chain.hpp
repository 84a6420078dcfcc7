#pragma once

#include "ramcalc/belyi.hpp"
#include "ramcalc/manifest.hpp"
#include "ramcalc/report.hpp"
#include "ramcalc/rmap.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ramcalc {

enum class StepKind { Explicit, Automorphism, BelyiForm };

std::string to_string(StepKind k);

/// (P'Q - PQ') * prod (z - s) == constant * P * Q, i.e. f'/f = constant / prod (z - s).
struct DlogClaim {
  std::vector<Rational> support;
  Rational constant;
  bool operator==(const DlogClaim&) const = default;
};

struct ValueClaim {
  P1Point point;
  P1Point image;
};

struct ChainRam {
  P1Point point;
  Integer index;
  std::string factored;  // optional claimed factorization of the index, e.g. "3^9*5^4"
};

struct ChainStep {
  std::string name;
  std::string tag;
  StepKind kind = StepKind::Explicit;
  std::optional<RationalMap> map;  // explicit and automorphism steps
  std::optional<BelyiTuple> tuple;  // belyi-form steps, never expanded
  std::vector<ChainRam> ram;
  std::vector<P1Point> output;
  std::vector<ValueClaim> values;
  std::optional<DlogClaim> dlog;

  /// Image of x; belyi-form steps are only evaluated at support points and
  /// infinity and throw std::domain_error elsewhere.
  P1Point eval(const P1Point& x, const FieldPtr& field) const;
  Integer degree() const;
};

/// The hyperelliptic start y^2 = x^n - 1 projected to x.
struct ChainSource {
  std::string curve;
  long n = 0;
  std::string tag;
  Integer degree = 2;
  Integer index = 2;
  std::vector<P1Point> branch;
};

struct ChainExpect {
  std::vector<P1Point> branch;
  std::vector<Integer> primes;  // every composite index is smooth over these
  std::optional<Integer> bound;  // every composite index divides this
};

struct ChainManifest {
  std::string name;
  std::string tag;
  FieldPtr field;
  ChainSource source;
  std::vector<ChainStep> steps;
  ChainExpect expect;
};

ChainManifest parse_chain(const Json& body);
Json render_chain(const ChainManifest& m);
ChainManifest load_chain(const std::string& path);
/// Structural equality after canonicalisation; used for round-trip checks.
bool same_chain(const ChainManifest& a, const ChainManifest& b);

/// Composite fiber over a listed point: index -> number of points with it.
using IndexMultiset = std::map<Integer, Integer>;

struct CompositeFiber {
  P1Point base;
  IndexMultiset indices;
};

struct ChainReport {
  std::string name;
  ReportNode tree;
  Integer degree;  // degree of the composite from the curve
  std::vector<CompositeFiber> fibers;  // over the final listed points
  PointSet final_set;
  Integer index_lcm;
  std::optional<long> composite_genus;
  std::vector<std::string> belyi_steps;

  std::vector<Integer> composite_indices() const;  // distinct, ascending
  bool passed() const { return tree.passed(); }
  Json to_json() const;
};

ChainReport verify_chain(const ChainManifest& m);

/// Orbit of a point of the line under the successive steps (start included).
std::vector<P1Point> trace_point(const ChainManifest& m, const P1Point& start);

/// True iff (P'Q - PQ') * prod(z - s) == c * P * Q.
bool dlog_identity_holds(const RationalMap& f, const DlogClaim& claim);

}  // namespace ramcalc
