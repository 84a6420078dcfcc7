#pragma once

#include "ramcalc/integer.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <tuple>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace ramcalc {

// Coefficient fields plug in through these overloads. A field element type
// must provide zero_like/one_like (an element of the same field as the
// argument), field_is_zero, scale_int (multiplication by a machine integer) and
// the usual arithmetic operators.
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool field_is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational scale_int(const Rational& x, long n) { return Rational(x * n); }

/// Dense univariate polynomial over a field. Coefficients are stored constant
/// term first; the zero polynomial has no coefficients.
template <class K>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  explicit Polynomial(const K& constant) : c_{constant} { trim(); }

  static Polynomial monomial(const K& coeff, std::size_t degree) {
    std::vector<K> c(degree + 1, zero_like(coeff));
    c[degree] = coeff;
    return Polynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<K>& coeffs() const { return c_; }
  const K& lead() const {
    if (c_.empty()) throw std::logic_error("lead() of zero polynomial");
    return c_.back();
  }
  K coeff(std::size_t i, const K& like) const { return i < c_.size() ? c_[i] : zero_like(like); }

  Polynomial monic() const {
    if (c_.empty()) return *this;
    K inv = one_like(c_.back()) / c_.back();
    std::vector<K> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(x * inv);
    return Polynomial(std::move(c));
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> c;
    c.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(scale_int(c_[i], static_cast<long>(i)));
    return Polynomial(std::move(c));
  }

  template <class V>
  V eval(const V& x) const {
    V acc = zero_like(x);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + lift(*it, x);
    return acc;
  }

  /// this(g(z))
  Polynomial compose(const Polynomial& g) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * g + Polynomial(*it);
    return acc;
  }

  Polynomial scaled(const K& s) const {
    std::vector<K> c;
    c.reserve(c_.size());
    for (const auto& x : c_) c.push_back(x * s);
    return Polynomial(std::move(c));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    const auto& big = a.c_.size() >= b.c_.size() ? a.c_ : b.c_;
    const auto& small = a.c_.size() >= b.c_.size() ? b.c_ : a.c_;
    std::vector<K> c = big;
    for (std::size_t i = 0; i < small.size(); ++i) c[i] = c[i] + small[i];
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<K> c;
    c.reserve(a.c_.size());
    for (const auto& x : a.c_) c.push_back(zero_like(x) - x);
    return Polynomial(std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<K> c(a.c_.size() + b.c_.size() - 1, zero_like(a.c_[0]));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (field_is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = c[i + j] + a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(c));
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && field_is_zero(c_.back())) c_.pop_back();
  }
  template <class V>
  static V lift(const K& coeff, const V& like) {
    if constexpr (std::is_same_v<K, V>) {
      (void)like;
      return coeff;
    } else {
      return embed(coeff, like);
    }
  }

  std::vector<K> c_;
};

using QPoly = Polynomial<Rational>;

/// Quotient and remainder; throws std::domain_error on division by zero.
template <class K>
std::pair<Polynomial<K>, Polynomial<K>> divmod(const Polynomial<K>& a, const Polynomial<K>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial<K>(), a};
  std::vector<K> rem = a.coeffs();
  const int db = b.degree();
  const K inv = one_like(b.lead()) / b.lead();
  std::vector<K> quo(static_cast<std::size_t>(a.degree() - db + 1), zero_like(b.lead()));
  for (int i = a.degree(); i >= db; --i) {
    const K& top = rem[static_cast<std::size_t>(i)];
    if (field_is_zero(top)) continue;
    K f = top * inv;
    quo[static_cast<std::size_t>(i - db)] = f;
    for (int j = 0; j <= db; ++j) {
      auto idx = static_cast<std::size_t>(i - db + j);
      rem[idx] = rem[idx] - f * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Polynomial<K>(std::move(quo)), Polynomial<K>(std::move(rem))};
}

template <class K>
Polynomial<K> operator/(const Polynomial<K>& a, const Polynomial<K>& b) {
  return divmod(a, b).first;
}
template <class K>
Polynomial<K> operator%(const Polynomial<K>& a, const Polynomial<K>& b) {
  return divmod(a, b).second;
}

/// Exact division; throws std::domain_error if b does not divide a.
template <class K>
Polynomial<K> exact_div(const Polynomial<K>& a, const Polynomial<K>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw std::domain_error("exact_div: nonzero remainder");
  return q;
}

/// Monic gcd; gcd(0, 0) = 0.
template <class K>
Polynomial<K> gcd(Polynomial<K> a, Polynomial<K> b) {
  while (!b.is_zero()) {
    Polynomial<K> r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, g monic.
template <class K>
std::tuple<Polynomial<K>, Polynomial<K>, Polynomial<K>> xgcd(const Polynomial<K>& a,
                                                             const Polynomial<K>& b) {
  Polynomial<K> r0 = a, r1 = b;
  Polynomial<K> s0, s1, t0, t1;
  if (!a.is_zero()) s0 = Polynomial<K>(one_like(a.lead()));
  if (!b.is_zero()) t1 = Polynomial<K>(one_like(b.lead()));
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Polynomial<K> s2 = s0 - q * s1;
    Polynomial<K> t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  K inv = one_like(r0.lead()) / r0.lead();
  Polynomial<K> c(inv);
  return {r0 * c, s0 * c, t0 * c};
}

/// a / gcd(a, a'), monic.
template <class K>
Polynomial<K> squarefree_part(const Polynomial<K>& a) {
  if (a.is_zero()) throw std::invalid_argument("squarefree_part of zero");
  if (a.degree() == 0) return Polynomial<K>(one_like(a.lead()));
  return exact_div(a, gcd(a, a.derivative())).monic();
}

template <class K>
bool is_squarefree(const Polynomial<K>& a) {
  return gcd(a, a.derivative()).degree() == 0;
}

template <class K>
K power(const K& x, unsigned long e) {
  K result = one_like(x);
  K base = x;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

template <class K>
Polynomial<K> power(const Polynomial<K>& p, unsigned long e) {
  if (p.is_zero()) {
    if (e == 0) throw std::domain_error("0^0");
    return p;
  }
  Polynomial<K> result(one_like(p.lead()));
  Polynomial<K> base = p;
  while (e > 0) {
    if (e & 1UL) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

/// Res(a, b) = lc(a)^deg(b) * prod b(alpha) over the roots alpha of a.
template <class K>
K resultant(const Polynomial<K>& a, const Polynomial<K>& b) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("resultant of zero polynomial");
  const int m = a.degree();
  const int n = b.degree();
  if (m == 0) return power(a.lead(), static_cast<unsigned long>(n));
  if (n == 0) return power(b.lead(), static_cast<unsigned long>(m));
  if (n >= m) {
    Polynomial<K> r = b % a;
    if (r.is_zero()) return zero_like(a.lead());
    K f = power(a.lead(), static_cast<unsigned long>(n - r.degree()));
    return f * resultant(a, r);
  }
  K swapped = resultant(b, a);
  if ((static_cast<long>(m) * n) % 2 == 0) return swapped;
  K neg = zero_like(swapped) - swapped;
  return neg;
}

/// Multiplicity of the root `x` of p (p nonzero).
template <class K>
int root_multiplicity(const Polynomial<K>& p, const K& x) {
  if (p.is_zero()) throw std::invalid_argument("root_multiplicity of zero polynomial");
  Polynomial<K> lin(std::vector<K>{zero_like(x) - x, one_like(x)});
  int mult = 0;
  Polynomial<K> cur = p;
  while (true) {
    auto [q, r] = divmod(cur, lin);
    if (!r.is_zero()) return mult;
    ++mult;
    cur = std::move(q);
  }
}

/// Squarefree decomposition (Yun): returns factors[i] with p = lc * prod factors[i]^(i+1).
template <class K>
std::vector<Polynomial<K>> squarefree_decomposition(const Polynomial<K>& p) {
  if (p.degree() < 1) return {};
  std::vector<Polynomial<K>> out;
  Polynomial<K> a = p.monic();
  Polynomial<K> b = a.derivative();
  Polynomial<K> c = gcd(a, b);
  Polynomial<K> w = exact_div(a, c);
  Polynomial<K> y = exact_div(b, c);
  Polynomial<K> z = y - w.derivative();
  while (w.degree() > 0) {
    Polynomial<K> g = gcd(w, z);
    out.push_back(g);
    w = exact_div(w, g);
    y = exact_div(z, g);
    z = y - w.derivative();
  }
  while (!out.empty() && out.back().degree() == 0) out.pop_back();
  return out;
}

// ---- rational-coefficient helpers -------------------------------------------------------

QPoly qpoly(std::initializer_list<long> coeffs_low_first);
QPoly qpoly_from_strings(const std::vector<std::string>& coeffs_low_first);
QPoly linear_factor(const Rational& root);  // z - root
QPoly product_of_linear(const std::vector<Rational>& roots);

/// n-th cyclotomic polynomial by iterated division of z^n - 1.
QPoly cyclotomic(unsigned long n);

/// Content-free integer version (primitive, positive leading coefficient).
std::vector<Integer> primitive_integer_coeffs(const QPoly& p);

/// Pretty form in the variable `var`, e.g. "z^3 - 2".
std::string to_string(const QPoly& p, char var = 'z');

struct RatFun {
  QPoly num;
  QPoly den;
};

/// Parses expressions like "z^3-2", "(z+15)^2/(4z)", "((z-1)/(z+1))^2" in the
/// variable z or x. An exponent may carry the formal parameter, as in "z^8n",
/// which is substituted by `param`. The result is in lowest terms with a
/// monic denominator. Throws std::invalid_argument.
RatFun parse_rational_function(const std::string& text, std::optional<long> param = std::nullopt);

/// As parse_rational_function, but the denominator must be constant.
QPoly parse_qpoly(const std::string& text, std::optional<long> param = std::nullopt);

/// Distinct rational roots of p (p nonzero), ascending. Uses the rational
/// root theorem on the primitive integer form; throws std::runtime_error if
/// the leading or constant coefficient is too large to enumerate divisors.
std::vector<Rational> rational_roots(const QPoly& p);

/// Irreducibility over Q by exhaustive Kronecker factor search.
/// Returns nullopt when the degree exceeds `max_degree` (caller flags "assumed").
std::optional<bool> is_irreducible(const QPoly& p, int max_degree = 8);

/// Interpolating polynomial through (xs[i], ys[i]); xs pairwise distinct.
QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

}  // namespace ramcalc
