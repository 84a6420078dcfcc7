#include "ramcalc/belyi.hpp"

#include "ramcalc/parallel.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace ramcalc {

Integer BelyiTuple::degree() const {
  Integer d = 0;
  for (const auto& r : exponents)
    if (r > 0) d += r;
  return d;
}

BelyiTuple BelyiTuple::reciprocal() const {
  BelyiTuple t = *this;
  for (auto& r : t.exponents) r = -r;
  return t;
}

namespace {

Rational vandermonde(const std::vector<Rational>& pts, std::size_t skip) {
  Rational v = 1;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i == skip) continue;
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      if (j == skip) continue;
      v *= pts[j] - pts[i];
    }
  }
  return v;
}

}  // namespace

std::vector<Integer> vandermonde_exponents(const std::vector<Rational>& support) {
  if (support.size() < 2) throw DegenerateSupport("a Belyi support needs at least two points");
  for (std::size_t i = 0; i < support.size(); ++i)
    for (std::size_t j = i + 1; j < support.size(); ++j)
      if (support[i] == support[j]) throw DegenerateSupport("repeated support point " + support[i].get_str());
  std::vector<Rational> raw;
  raw.reserve(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    Rational m = vandermonde(support, i);
    raw.push_back(i % 2 == 0 ? m : Rational(-m));
  }
  Integer den = 1;
  for (const auto& q : raw) den = ilcm(den, q.get_den());
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& q : raw) {
    Integer v = q.get_num() * (den / q.get_den());
    g = igcd(g, v);
    out.push_back(v);
  }
  if (out.front() < 0) g = -g;
  for (auto& v : out) v /= g;
  return out;
}

QPoly dlog_numerator(const BelyiTuple& t) {
  if (t.support.size() != t.exponents.size()) throw std::invalid_argument("support and exponents differ in length");
  QPoly acc;
  for (std::size_t i = 0; i < t.support.size(); ++i) {
    QPoly term(Rational(t.exponents[i]));
    for (std::size_t j = 0; j < t.support.size(); ++j)
      if (j != i) term *= linear_factor(t.support[j]);
    acc += term;
  }
  return acc;
}

BelyiVerification verify_belyi(const BelyiTuple& t) {
  if (t.support.size() != t.exponents.size()) throw std::invalid_argument("support and exponents differ in length");
  BelyiVerification v;
  const std::size_t k = t.support.size();
  v.distinct = true;
  for (std::size_t i = 0; i < k; ++i) {
    if (t.exponents[i] == 0) v.distinct = false;
    for (std::size_t j = i + 1; j < k; ++j)
      if (t.support[i] == t.support[j]) v.distinct = false;
  }
  Integer sum = 0, pos = 0, neg = 0;
  for (std::size_t i = 0; i < k; ++i) {
    sum += t.exponents[i];
    if (t.exponents[i] > 0) {
      pos += t.exponents[i];
      v.over_zero.emplace_back(t.support[i], t.exponents[i]);
    } else if (t.exponents[i] < 0) {
      neg -= t.exponents[i];
      v.over_infinity.emplace_back(t.support[i], Integer(-t.exponents[i]));
    }
  }
  v.sum_zero = sum == 0;
  v.numerator = dlog_numerator(t);
  v.constant_nonzero = v.numerator.degree() == 0;
  if (v.numerator.degree() > 0) {
    v.offending_degree = v.numerator.degree();
    v.offending_coeff = v.numerator.lead();
  }
  v.degree = pos;
  v.infinity_index = static_cast<long>(k) - 1;
  v.fibers_balanced = pos == neg && pos > 0;
  Integer excess = static_cast<long>(k) - 2;  // e(inf) - 1
  for (const auto& r : t.exponents) excess += abs(r) - 1;
  v.riemann_hurwitz = excess == 2 * v.degree - 2;
  return v;
}

namespace {

bool reflection_canonical(const std::vector<long>& s) {
  const long top = s.back();
  for (std::size_t i = 0, j = s.size() - 1; i < s.size(); ++i, --j) {
    long reflected = top - s[j];
    if (s[i] != reflected) return s[i] < reflected;
  }
  return true;
}

// All admissible supports whose second point is n2, in lexicographic order.
void search_cell(const SearchParams& p, long n2, const std::vector<Integer>& primes, std::vector<BelyiTuple>& out) {
  std::vector<long> s{0, n2};
  std::function<void()> rec = [&]() {
    if (out.size() >= p.budget) return;
    if (static_cast<int>(s.size()) == p.k) {
      long g = 0;
      for (long v : s) g = std::gcd(g, v);
      if (g != 1 || !reflection_canonical(s)) return;
      std::vector<Rational> support(s.begin(), s.end());
      auto ex = vandermonde_exponents(support);
      for (const auto& r : ex)
        if (!is_smooth(r, primes)) return;
      out.push_back({std::move(support), std::move(ex)});
      return;
    }
    for (long next = s.back() + 1; next <= p.box; ++next) {
      s.push_back(next);
      rec();
      s.pop_back();
    }
  };
  rec();
}

void check_params(const SearchParams& p) {
  if (p.k < 2 || p.k > 7) throw std::invalid_argument("search: k must lie in 2..7");
  if (p.primes.empty()) throw std::invalid_argument("search: empty prime set");
  if (p.box < 1) throw std::invalid_argument("search: box must be positive");
}

std::vector<Integer> as_integers(const std::vector<std::uint64_t>& primes) {
  std::vector<Integer> out;
  for (auto q : primes) out.emplace_back(static_cast<unsigned long>(q));
  return out;
}

}  // namespace

std::vector<BelyiTuple> search_smooth_tuples_serial(const SearchParams& p) {
  check_params(p);
  auto primes = as_integers(p.primes);
  std::vector<BelyiTuple> out;
  for (long n2 = 1; n2 <= p.box && out.size() < p.budget; ++n2) search_cell(p, n2, primes, out);
  if (out.size() > p.budget) out.resize(p.budget);
  return out;
}

std::vector<BelyiTuple> search_smooth_tuples(const SearchParams& p) {
  check_params(p);
  auto primes = as_integers(p.primes);
  std::vector<std::vector<BelyiTuple>> cells(static_cast<std::size_t>(p.box));
#pragma omp parallel for schedule(dynamic) num_threads(worker_count())
  for (long n2 = 1; n2 <= p.box; ++n2) search_cell(p, n2, primes, cells[static_cast<std::size_t>(n2 - 1)]);
  std::vector<BelyiTuple> out;
  for (auto& cell : cells) {
    for (auto& t : cell) {
      if (out.size() >= p.budget) return out;
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::optional<std::array<Integer, 4>> hyperplane_membership(const std::array<Integer, 4>& n) {
  std::array<Integer, 4> s = n;
  std::sort(s.begin(), s.end());
  for (int j = 1; j < 4; ++j) {
    std::array<Integer, 2> rest;
    int r = 0;
    for (int i = 1; i < 4; ++i)
      if (i != j) rest[static_cast<std::size_t>(r++)] = s[static_cast<std::size_t>(i)];
    if (s[0] + s[static_cast<std::size_t>(j)] == rest[0] + rest[1])
      return std::array<Integer, 4>{s[0], s[static_cast<std::size_t>(j)], rest[0], rest[1]};
  }
  return std::nullopt;
}

}  // namespace ramcalc
