#pragma once

// Independent reference computations for the test suite. Nothing here calls
// into the library beyond its value types.

#include "ramcalc/integer.hpp"
#include "ramcalc/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using ramcalc::Integer;
using ramcalc::QPoly;
using ramcalc::Rational;

inline QPoly random_poly(std::mt19937_64& rng, int max_degree, long bound) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<long> coeff(-bound, bound);
  std::vector<Rational> c(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& x : c) x = Rational(coeff(rng));
  return QPoly(c);
}

// Schoolbook long division, written without the library's divmod.
inline std::pair<QPoly, QPoly> long_division(const QPoly& a, const QPoly& b) {
  std::vector<Rational> r = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  if (r.size() < bc.size()) return {QPoly(), a};
  std::vector<Rational> q(r.size() - db, Rational(0));
  for (std::size_t i = r.size(); i-- > db;) {
    Rational f = r[i] / bc[db];
    q[i - db] = f;
    for (std::size_t j = 0; j <= db; ++j) r[i - db + j] -= f * bc[j];
  }
  r.resize(db);
  return {QPoly(q), QPoly(r)};
}

// Determinant by plain Gaussian elimination over Q.
inline Rational determinant(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Rational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Sylvester determinant; equals lc(a)^deg b * prod b(roots of a).
inline Rational sylvester_resultant(const QPoly& a, const QPoly& b) {
  const int m = a.degree(), n = b.degree();
  if (m == 0) return ramcalc::power(a.lead(), static_cast<unsigned long>(n));
  if (n == 0) return ramcalc::power(b.lead(), static_cast<unsigned long>(m));
  const auto N = static_cast<std::size_t>(m + n);
  std::vector<std::vector<Rational>> s(N, std::vector<Rational>(N, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= m; ++j)
      s[static_cast<std::size_t>(i)][static_cast<std::size_t>(i + j)] = a.coeffs()[static_cast<std::size_t>(m - j)];
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= n; ++j)
      s[static_cast<std::size_t>(n + i)][static_cast<std::size_t>(i + j)] = b.coeffs()[static_cast<std::size_t>(n - j)];
  return determinant(s);
}

// Naive brute force over all pairs.
struct Triple {
  std::uint64_t a, b, c;
  auto operator<=>(const Triple&) const = default;
};

inline bool smooth(std::uint64_t n, const std::vector<std::uint64_t>& primes) {
  if (n == 0) return false;
  for (auto p : primes)
    while (n % p == 0) n /= p;
  return n == 1;
}

inline std::vector<std::uint64_t> smooth_upto(const std::vector<std::uint64_t>& primes, std::uint64_t h) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= h; ++n)
    if (smooth(n, primes)) out.push_back(n);
  return out;
}

inline std::vector<Triple> unit_triples(const std::vector<std::uint64_t>& primes, std::uint64_t h) {
  const auto s = smooth_upto(primes, h);
  const std::set<std::uint64_t> in(s.begin(), s.end());
  std::vector<Triple> out;
  for (auto a : s)
    for (auto b : s)
      if (a <= b && a + b <= h && std::gcd(a, b) == 1 && in.count(a + b)) out.push_back({a, b, a + b});
  std::sort(out.begin(), out.end());
  return out;
}

// Pairs n2 > n3 > 0, coprime, with n2, n3, n2 - n3 smooth, one per reflection.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> prop24(const std::vector<std::uint64_t>& primes,
                                                                  std::uint64_t h) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (std::uint64_t n2 = 2; n2 <= h; ++n2) {
    if (!smooth(n2, primes)) continue;
    for (std::uint64_t n3 = 1; 2 * n3 <= n2; ++n3)
      if (smooth(n3, primes) && smooth(n2 - n3, primes) && std::gcd(n2, n3) == 1) out.emplace_back(n2, n3);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Cycle type of x -> x + step on Z/d.
inline std::multiset<long> cycle_type(long d, long step) {
  std::multiset<long> out;
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (long x = 0; x < d; ++x) {
    if (seen[static_cast<std::size_t>(x)]) continue;
    long len = 0;
    for (long y = x; !seen[static_cast<std::size_t>(y)]; y = (y + step) % d) {
      seen[static_cast<std::size_t>(y)] = true;
      ++len;
    }
    out.insert(len);
  }
  return out;
}

// Local monodromy (a, b) acting on Z/d1 x Z/d2. Returns the orbit lengths
// over the base, and for sheet 0 of each factor the indices of the orbits
// meeting it relative to that factor.
struct ProductFiber {
  std::multiset<long> over_base;
  std::multiset<long> over_left;   // above the left point containing sheet 0
  std::multiset<long> over_right;  // above the right point containing sheet 0
};

inline ProductFiber product_action(long d1, long a, long d2, long b) {
  ProductFiber out;
  std::vector<bool> seen(static_cast<std::size_t>(d1 * d2), false);
  const long e1 = d1 / std::gcd(d1, a);
  const long e2 = d2 / std::gcd(d2, b);
  for (long x = 0; x < d1; ++x)
    for (long y = 0; y < d2; ++y) {
      if (seen[static_cast<std::size_t>(x * d2 + y)]) continue;
      long len = 0;
      bool meets_left = false, meets_right = false;
      long cx = x, cy = y;
      while (!seen[static_cast<std::size_t>(cx * d2 + cy)]) {
        seen[static_cast<std::size_t>(cx * d2 + cy)] = true;
        meets_left = meets_left || cx == 0;
        meets_right = meets_right || cy == 0;
        ++len;
        cx = (cx + a) % d1;
        cy = (cy + b) % d2;
      }
      out.over_base.insert(len);
      if (meets_left) out.over_left.insert(len / e1);
      if (meets_right) out.over_right.insert(len / e2);
    }
  return out;
}

}  // namespace oracle
