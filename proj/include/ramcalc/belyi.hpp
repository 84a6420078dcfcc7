#pragma once

#include "ramcalc/polynomial.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ramcalc {

/// prod (z - n_i)^{r_i}, never expanded.
struct BelyiTuple {
  std::vector<Rational> support;
  std::vector<Integer> exponents;

  /// Sum of the positive exponents.
  Integer degree() const;
  BelyiTuple reciprocal() const;
  bool operator==(const BelyiTuple&) const = default;
};

class DegenerateSupport : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Signed Vandermonde minors of the support, divided by their gcd and signed so
/// that the first entry is positive. Throws DegenerateSupport on repeated
/// points or fewer than two points.
std::vector<Integer> vandermonde_exponents(const std::vector<Rational>& support);

/// sum_i r_i prod_{j != i} (z - n_j): the numerator of f'/f over prod (z - n_j).
QPoly dlog_numerator(const BelyiTuple& t);

struct BelyiVerification {
  bool distinct = false;
  bool sum_zero = false;
  QPoly numerator;
  bool constant_nonzero = false;
  /// Highest non-constant coefficient of the numerator when it is not constant.
  std::optional<int> offending_degree;
  Rational offending_coeff;

  Integer degree;
  long infinity_index = 0;  // k - 1
  std::vector<std::pair<Rational, Integer>> over_zero;      // r_i > 0
  std::vector<std::pair<Rational, Integer>> over_infinity;  // r_i < 0, index -r_i
  bool fibers_balanced = false;                            // both fibers sum to the degree
  bool riemann_hurwitz = false;                            // sum (e-1) = 2 deg - 2

  bool ok() const { return distinct && sum_zero && constant_nonzero && fibers_balanced && riemann_hurwitz; }
};

BelyiVerification verify_belyi(const BelyiTuple& t);

struct SearchParams {
  int k = 4;
  std::vector<std::uint64_t> primes;
  long box = 10;                 // support points lie in [0, box]
  std::size_t budget = 1000000;  // maximum number of tuples returned
};

/// Supports 0 = n_1 < ... < n_k <= box with content 1, taken up to the
/// reflection x -> n_k - x, whose normalised exponents are all smooth over the
/// prime set. Lexicographic order; identical for any thread count.
std::vector<BelyiTuple> search_smooth_tuples(const SearchParams& p);
std::vector<BelyiTuple> search_smooth_tuples_serial(const SearchParams& p);

/// An ordering (x1, x2, x3, x4) of the four values with x1 + x2 = x3 + x4, if
/// any; x1 is the smallest value.
std::optional<std::array<Integer, 4>> hyperplane_membership(const std::array<Integer, 4>& n);

}  // namespace ramcalc
