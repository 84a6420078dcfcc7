#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ramcalc {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p" or "p/q" (decimal, optional sign). Throws std::invalid_argument.
Rational parse_rational(const std::string& text);
Integer parse_integer(const std::string& text);

inline std::string to_string(const Integer& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

Integer ipow(const Integer& base, unsigned long exp);
Integer igcd(const Integer& a, const Integer& b);
Integer ilcm(const Integer& a, const Integer& b);
bool divides(const Integer& d, const Integer& n);

struct PrimePower {
  Integer prime;
  unsigned long exponent = 0;
  bool operator==(const PrimePower&) const = default;
};

/// Outcome of factoring over a fixed prime set. On failure, `witness` holds
/// the smallest prime factor outside the set when one was found by trial
/// division, otherwise the unfactored remainder (`remainder_composite`).
struct SmoothFactorization {
  bool smooth = false;
  int sign = 1;
  std::vector<PrimePower> factors;  // ascending primes, exponent > 0
  Integer witness;
  bool remainder_composite = false;
};

SmoothFactorization factor_over_primes(const Integer& n, const std::vector<Integer>& primes);
bool is_smooth(const Integer& n, const std::vector<Integer>& primes);
bool is_smooth(std::uint64_t n, const std::vector<std::uint64_t>& primes);

/// "3^9*5^4"; "1" for the empty product.
std::string render_factorization(const SmoothFactorization& f);

std::vector<Integer> divisors_small(const Integer& n);

}  // namespace ramcalc
