#include "ramcalc/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace ramcalc {

QPoly qpoly(std::initializer_list<long> coeffs_low_first) {
  std::vector<Rational> c;
  for (long v : coeffs_low_first) c.emplace_back(v);
  return QPoly(std::move(c));
}

QPoly qpoly_from_strings(const std::vector<std::string>& coeffs_low_first) {
  std::vector<Rational> c;
  c.reserve(coeffs_low_first.size());
  for (const auto& s : coeffs_low_first) c.push_back(parse_rational(s));
  return QPoly(std::move(c));
}

QPoly linear_factor(const Rational& root) { return QPoly(std::vector<Rational>{Rational(-root), Rational(1)}); }

QPoly product_of_linear(const std::vector<Rational>& roots) {
  QPoly acc(Rational(1));
  for (const auto& r : roots) acc *= linear_factor(r);
  return acc;
}

QPoly cyclotomic(unsigned long n) {
  if (n == 0) throw std::invalid_argument("cyclotomic: n must be positive");
  QPoly p = QPoly::monomial(Rational(1), n) - QPoly(Rational(1));
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d == 0) p = exact_div(p, cyclotomic(d));
  }
  return p;
}

std::vector<Integer> primitive_integer_coeffs(const QPoly& p) {
  if (p.is_zero()) return {};
  Integer den = 1;
  for (const auto& c : p.coeffs()) den = ilcm(den, c.get_den());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Integer v = c.get_num() * (den / c.get_den());
    g = igcd(g, v);
    out.push_back(v);
  }
  if (p.lead() < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

std::string to_string(const QPoly& p, char var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = p.degree(); i >= 0; --i) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(i)];
    if (sgn(c) == 0) continue;
    Rational mag = abs(c);
    if (first) {
      if (sgn(c) < 0) os << "-";
    } else {
      os << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    bool unit = mag == 1;
    if (i == 0) {
      os << mag.get_str();
      continue;
    }
    if (!unit) os << mag.get_str() << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

namespace {

// Parses over pairs (numerator, denominator) so that quotients of
// polynomials are accepted; parse_qpoly insists on a constant denominator.
class RatFunParser {
 public:
  RatFunParser(const std::string& s, std::optional<long> param) : s_(s), param_(param) {}

  RatFun parse() {
    RatFun p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse '" + s_ + "': " + why);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'z' || c == 'x' || c == '(';
  }

  static RatFun add(const RatFun& a, const RatFun& b, bool negate) {
    QPoly rhs = b.num * a.den;
    return {negate ? a.num * b.den - rhs : a.num * b.den + rhs, a.den * b.den};
  }
  static RatFun mul(const RatFun& a, const RatFun& b) { return {a.num * b.num, a.den * b.den}; }
  RatFun div(const RatFun& a, const RatFun& b) const {
    if (b.num.is_zero()) fail("division by zero");
    return {a.num * b.den, a.den * b.num};
  }

  RatFun expr() {
    RatFun acc = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = add(acc, term(), false);
      } else if (peek('-')) {
        ++pos_;
        acc = add(acc, term(), true);
      } else {
        return acc;
      }
    }
  }

  RatFun term() {
    RatFun acc = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = mul(acc, unary());
      } else if (peek('/')) {
        ++pos_;
        acc = div(acc, unary());
      } else if (starts_atom()) {
        acc = mul(acc, unary());  // implicit multiplication, e.g. "2z"
      } else {
        return acc;
      }
    }
  }

  RatFun unary() {
    if (peek('-')) {
      ++pos_;
      RatFun r = unary();
      return {-r.num, r.den};
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return powered();
  }

  unsigned long exponent() {
    skip();
    bool paren = false;
    if (pos_ < s_.size() && s_[pos_] == '(') {
      paren = true;
      ++pos_;
      skip();
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    unsigned long e = start == pos_ ? 1 : std::stoul(s_.substr(start, pos_ - start));
    bool has_param = false;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '*' && pos_ + 1 < s_.size() && paren) {
      ++pos_;
      skip();
    }
    if (pos_ < s_.size() && s_[pos_] == 'n') {
      ++pos_;
      has_param = true;
    } else if (start == pos_) {
      fail("exponent expected");
    }
    if (paren) {
      if (!peek(')')) fail("')' expected in exponent");
      ++pos_;
    }
    if (has_param) {
      if (!param_) fail("exponent uses the parameter n but no value was given");
      if (*param_ < 1) fail("parameter n must be positive");
      e *= static_cast<unsigned long>(*param_);
    }
    return e;
  }

  RatFun powered() {
    RatFun base = atom();
    if (peek('^')) {
      ++pos_;
      unsigned long e = exponent();
      if (e == 0) return {QPoly(Rational(1)), QPoly(Rational(1))};
      return {power(base.num, e), power(base.den, e)};
    }
    return base;
  }

  RatFun atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RatFun inner = expr();
      if (!peek(')')) fail("')' expected");
      ++pos_;
      return inner;
    }
    if (c == 'z' || c == 'x') {
      ++pos_;
      return {QPoly::monomial(Rational(1), 1), QPoly(Rational(1))};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return {QPoly(Rational(Integer(s_.substr(start, pos_ - start)))), QPoly(Rational(1))};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const std::string& s_;
  std::optional<long> param_;
  std::size_t pos_ = 0;
};

constexpr long kDivisorCap = 1000000000000L;

}  // namespace

RatFun parse_rational_function(const std::string& text, std::optional<long> param) {
  RatFun r = RatFunParser(text, param).parse();
  QPoly g = gcd(r.num, r.den);
  if (g.degree() > 0) {
    r.num = exact_div(r.num, g);
    r.den = exact_div(r.den, g);
  }
  Rational lc = r.den.lead();
  r.num = r.num.scaled(Rational(1 / lc));
  r.den = r.den.monic();
  return r;
}

QPoly parse_qpoly(const std::string& text, std::optional<long> param) {
  RatFun r = parse_rational_function(text, param);
  if (r.den.degree() != 0) throw std::invalid_argument("not a polynomial: '" + text + "'");
  return r.num;
}

std::vector<Rational> rational_roots(const QPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots of zero polynomial");
  std::vector<Rational> roots;
  QPoly q = p;
  if (q.degree() >= 1 && sgn(q.coeffs()[0]) == 0) {
    roots.emplace_back(0);
    while (q.degree() >= 1 && sgn(q.coeffs()[0]) == 0) q = exact_div(q, QPoly::monomial(Rational(1), 1));
  }
  if (q.degree() >= 1) {
    auto ic = primitive_integer_coeffs(q);
    if (abs(ic.front()) > kDivisorCap || abs(ic.back()) > kDivisorCap)
      throw std::runtime_error("rational_roots: coefficients too large to enumerate divisors");
    for (const auto& num : divisors_small(ic.front())) {
      for (const auto& den : divisors_small(ic.back())) {
        for (int s : {1, -1}) {
          Rational cand = make_rational(Integer(num * s), den);
          if (sgn(q.eval(cand)) == 0) roots.push_back(cand);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

QPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: size mismatch");
  QPoly acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    QPoly basis(Rational(1));
    Rational denom = 1;
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis *= linear_factor(xs[j]);
      denom *= xs[i] - xs[j];
    }
    if (sgn(denom) == 0) throw std::invalid_argument("interpolate: repeated abscissa");
    acc += basis.scaled(Rational(ys[i] / denom));
  }
  return acc;
}

std::optional<bool> is_irreducible(const QPoly& p, int max_degree) {
  if (p.degree() < 1) throw std::invalid_argument("is_irreducible: constant polynomial");
  if (p.degree() == 1) return true;
  if (p.degree() > max_degree) return std::nullopt;
  const int d = p.degree();

  struct Sample {
    Rational x;
    std::vector<Integer> divs;
  };
  std::vector<Sample> samples;
  auto ic = primitive_integer_coeffs(p);
  QPoly prim(std::vector<Rational>(ic.begin(), ic.end()));
  for (long x = -24; x <= 24; ++x) {
    Rational v = prim.eval(Rational(x));
    if (sgn(v) == 0) return false;  // rational root
    Integer iv = v.get_num();
    if (abs(iv) > kDivisorCap) continue;
    samples.push_back({Rational(x), divisors_small(iv)});
  }
  std::sort(samples.begin(), samples.end(),
            [](const Sample& a, const Sample& b) { return a.divs.size() < b.divs.size(); });

  for (int e = 1; e <= d / 2; ++e) {
    if (samples.size() < static_cast<std::size_t>(e + 1)) return std::nullopt;
    std::vector<const Sample*> pts;
    for (int i = 0; i <= e; ++i) pts.push_back(&samples[static_cast<std::size_t>(i)]);
    std::vector<Rational> xs;
    for (auto* s : pts) xs.push_back(s->x);
    std::vector<Rational> ys(pts.size());
    bool found = false;
    // Enumerate signed divisor choices; the sign of the first value is fixed
    // since a factor and its negative are interchangeable.
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (found) return;
      if (i == pts.size()) {
        QPoly g = interpolate(xs, ys);
        if (g.degree() != e) return;
        for (const auto& c : g.coeffs())
          if (c.get_den() != 1) return;
        if ((prim % g).is_zero()) found = true;
        return;
      }
      for (const auto& dv : pts[i]->divs) {
        for (int s : {1, -1}) {
          if (i == 0 && s < 0) continue;
          ys[i] = Rational(dv * s);
          rec(i + 1);
          if (found) return;
        }
      }
    };
    rec(0);
    if (found) return false;
  }
  return true;
}

}  // namespace ramcalc
