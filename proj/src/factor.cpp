#include "ramcalc/integer.hpp"

#include <algorithm>
#include <stdexcept>

namespace ramcalc {

namespace {

bool is_decimal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

Integer parse_integer(const std::string& text) {
  std::string s = strip(text);
  if (!is_decimal(s)) throw std::invalid_argument("not an integer: '" + text + "'");
  if (s[0] == '+') s.erase(0, 1);
  return Integer(s, 10);
}

Rational parse_rational(const std::string& text) {
  std::string s = strip(text);
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(s));
  Integer num = parse_integer(s.substr(0, slash));
  Integer den = parse_integer(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  return make_rational(num, den);
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Integer igcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer ilcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

bool divides(const Integer& d, const Integer& n) {
  if (d == 0) return n == 0;
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

SmoothFactorization factor_over_primes(const Integer& n, const std::vector<Integer>& primes) {
  if (n == 0) throw std::invalid_argument("factor_over_primes: zero");
  SmoothFactorization out;
  out.sign = n < 0 ? -1 : 1;
  Integer rest = abs(n);
  std::vector<Integer> sorted = primes;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const auto& p : sorted) {
    if (p < 2) throw std::invalid_argument("factor_over_primes: bad prime " + p.get_str());
    unsigned long e = 0;
    while (divides(p, rest)) {
      rest /= p;
      ++e;
    }
    if (e > 0) out.factors.push_back({p, e});
  }
  if (rest == 1) {
    out.smooth = true;
    return out;
  }
  // Look for the smallest prime factor of the remainder by trial division.
  constexpr unsigned long kTrialLimit = 1000000;
  for (unsigned long d = 2; d <= kTrialLimit; d += (d == 2 ? 1 : 2)) {
    Integer dd(d);
    if (dd * dd > rest) {
      out.witness = rest;  // remainder itself is prime
      return out;
    }
    if (divides(dd, rest)) {
      out.witness = dd;
      return out;
    }
  }
  out.witness = rest;
  out.remainder_composite = mpz_probab_prime_p(rest.get_mpz_t(), 25) == 0;
  return out;
}

bool is_smooth(const Integer& n, const std::vector<Integer>& primes) {
  if (n == 0) return false;
  Integer rest = abs(n);
  for (const auto& p : primes) {
    while (divides(p, rest)) rest /= p;
  }
  return rest == 1;
}

bool is_smooth(std::uint64_t n, const std::vector<std::uint64_t>& primes) {
  if (n == 0) return false;
  for (auto p : primes) {
    while (n % p == 0) n /= p;
  }
  return n == 1;
}

std::string render_factorization(const SmoothFactorization& f) {
  std::string out = f.sign < 0 ? "-" : "";
  if (f.factors.empty()) return out + "1";
  bool first = true;
  for (const auto& pp : f.factors) {
    if (!first) out += "*";
    first = false;
    out += pp.prime.get_str();
    if (pp.exponent > 1) out += "^" + std::to_string(pp.exponent);
  }
  return out;
}

std::vector<Integer> divisors_small(const Integer& n) {
  Integer m = abs(n);
  if (m == 0) throw std::invalid_argument("divisors_small: zero");
  if (m > Integer("1000000000000")) throw std::invalid_argument("divisors_small: too large");
  std::vector<Integer> lo, hi;
  for (Integer d = 1; d * d <= m; ++d) {
    if (divides(d, m)) {
      lo.push_back(d);
      if (d * d != m) hi.push_back(m / d);
    }
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

}  // namespace ramcalc
