#pragma once

#include "ramcalc/polynomial.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ramcalc {

/// One conjugacy class of points, or a union of classes when `factored` is
/// false (a squarefree polynomial whose factorization was not attempted).
struct PointClass {
  QPoly poly;  // monic, squarefree, no rational roots unless linear
  bool factored = true;

  int degree() const { return poly.degree(); }
  bool operator==(const PointClass&) const = default;
};

/// Pairwise coprime classes plus an infinity flag.
struct AlgebraicPointSet {
  std::vector<PointClass> classes;
  bool infinity = false;

  /// Makes each polynomial monic and squarefree, splits off rational roots,
  /// refines to pairwise coprime pieces and sorts deterministically.
  static AlgebraicPointSet normalized(std::vector<PointClass> classes, bool infinity);
  static AlgebraicPointSet from_polynomials(const std::vector<QPoly>& polys, bool infinity);

  int max_degree() const;
  int count_at(int degree) const;
  bool all_rational() const { return max_degree() <= 1; }
  /// Degrees in descending order; infinity counts as 1.
  std::vector<int> degree_multiset() const;
  std::string str() const;
};

class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class TargetCollision : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
class StrategyExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class HeightCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The k with 2^(k-1) <= m < 2^k, and r = 2^k - m. Requires m >= 2.
std::pair<int, long> split_degree(long m);

/// Monic g of degree targets.size() with (f g)'(x) = 0 at every target.
/// Targets must be distinct and avoid the roots of f.
QPoly build_cofactor(const QPoly& f, const std::vector<Rational>& targets);

/// Proposes the attempt-th target tuple of size r for f; an empty result
/// ends the search.
using TargetStrategy = std::function<std::vector<Rational>(const QPoly& f, long r, int attempt)>;

/// 0, 1, -1, 2, -2, 1/2, -1/2, 3, ... ordered by height.
Rational spiral_value(long index);
/// r-subsets of the spiral in colexicographic order, skipping roots of f.
TargetStrategy spiral_strategy();

struct StepChecks {
  bool derivative_vanishes = false;  // F'(x_i) = 0 for every target
  bool squarefree_derivative = false;  // gcd(F', F'') = 1
  bool degree_power_of_two = false;  // deg F = 2^k
  bool finite_indices_two = false;  // e = 2 at every target, via local_index
  bool infinity_index = false;  // e(inf) = 2^k
  bool measure_drops = false;

  bool all() const {
    return derivative_vanishes && squarefree_derivative && degree_power_of_two && finite_indices_two &&
           infinity_index && measure_drops;
  }
};

struct ReductionStep {
  QPoly f;
  long m = 0;
  int k = 0;
  long r = 0;
  std::vector<Rational> targets;
  QPoly g;
  QPoly F;
  QPoly ram_cofactor;  // F' / (lc * prod (z - x_i)), degree m - 1
  int attempts = 0;
  std::vector<int> degrees_before;
  std::vector<int> degrees_after;
  std::size_t max_coeff_bits = 0;
  StepChecks checks;
  /// Local indices of F: 1 or 2 at finite points, 2^k at infinity.
  std::vector<long> index_values() const;
};

struct StepResult {
  ReductionStep step;
  AlgebraicPointSet next;
};

/// Largest bit length of a numerator or denominator among the coefficients.
std::size_t coefficient_bits(const QPoly& p);

/// Maps the set by F and adds the branch values F(Ram F). With
/// `carry_ramification` the critical points of F join the new set as well.
StepResult reduction_step(const AlgebraicPointSet& s, const TargetStrategy& strategy = spiral_strategy(),
                          int max_attempts = 1000, bool carry_ramification = false);

struct ContractOptions {
  TargetStrategy strategy = spiral_strategy();
  int max_attempts = 1000;
  std::optional<std::size_t> height_cap;  // bits; exceeded -> HeightCapExceeded
  int max_steps = 256;
  bool carry_ramification = false;
};

struct ContractionResult {
  std::vector<ReductionStep> steps;
  AlgebraicPointSet initial;
  AlgebraicPointSet final_set;
  /// Every composite local index divides 2^index_exponent.
  long index_exponent = 0;
  bool index_certificate = false;

  bool passed() const;
};

ContractionResult contract_to_rational(const AlgebraicPointSet& s, const ContractOptions& options = {});

bool is_power_of_two(long v);

}  // namespace ramcalc
