#include "ramcalc/belyi.hpp"
#include "ramcalc/integer.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace ramcalc;

namespace {

std::vector<Rational> R(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}
std::vector<Integer> Z(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

// Raw minors r_i = (-1)^i V(n without n_i), from the product formula.
std::vector<Integer> raw_minors(const std::vector<Rational>& n) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    Rational v = 1;
    for (std::size_t a = 0; a < n.size(); ++a)
      for (std::size_t b = a + 1; b < n.size(); ++b)
        if (a != i && b != i) v *= n[b] - n[a];
    REQUIRE(v.get_den() == 1);
    out.push_back(i % 2 ? Integer(-v.get_num()) : Integer(v.get_num()));
  }
  return out;
}

std::vector<Rational> random_support(std::mt19937_64& rng, int k) {
  std::uniform_int_distribution<long> d(-20, 20);
  std::set<long> s;
  while (static_cast<int>(s.size()) < k) s.insert(d(rng));
  std::vector<Rational> out;
  for (long x : s) out.emplace_back(x);
  std::shuffle(out.begin(), out.end(), rng);
  return out;
}

const std::vector<Integer> kProp12Primes = Z({2, 3, 5, 13});

}  // namespace

TEST_CASE("exponents of the four-point example") {
  CHECK(raw_minors(R({0, 1, 5, 6})) == Z({20, -30, 30, -20}));
  CHECK(vandermonde_exponents(R({0, 1, 5, 6})) == Z({2, -3, 3, -2}));
  CHECK(vandermonde_exponents(R({0, 1, 2})) == Z({1, -2, 1}));
  CHECK(vandermonde_exponents(R({0, 1})) == Z({1, -1}));
  CHECK_THROWS_AS(vandermonde_exponents(R({0, 1, 1})), DegenerateSupport);
  CHECK_THROWS_AS(vandermonde_exponents(R({3})), DegenerateSupport);
}

TEST_CASE("the example map verifies") {
  const BelyiTuple t{R({0, 1, 5, 6}), Z({2, -3, 3, -2})};
  const auto v = verify_belyi(t);
  CHECK(v.ok());
  CHECK(v.numerator.degree() == 0);
  CHECK(v.degree == 5);
  CHECK(v.infinity_index == 3);
  // The printed form (x-1)^3 (x-6)^2 / (x^2 (x-5)^3) is the reciprocal.
  CHECK(verify_belyi(t.reciprocal()).ok());
  CHECK(t.reciprocal().exponents == Z({-2, 3, -3, 2}));
}

TEST_CASE("non Belyi forms are reported") {
  const auto v = verify_belyi({R({0, 1, 2}), Z({1, 1, -2})});
  CHECK(v.sum_zero);
  CHECK_FALSE(v.constant_nonzero);
  CHECK_FALSE(v.ok());
  REQUIRE(v.offending_degree);
  CHECK(*v.offending_degree == 1);
  CHECK_FALSE(verify_belyi({R({0, 1, 2}), Z({1, -2, 2})}).sum_zero);
  CHECK_FALSE(verify_belyi({R({0, 1, 1}), Z({1, -2, 1})}).distinct);
}

TEST_CASE("the degree six tuple") {
  const BelyiTuple h6{R({0, 6, 256, 4, 13, -14}), Z({12301875, 32752512, 13, -42120000, -2560000, -374400})};
  const auto v = verify_belyi(h6);
  CHECK(v.ok());
  CHECK(v.degree == 45054400);
  CHECK(v.infinity_index == 5);
  std::vector<std::string> factored;
  for (const auto& e : h6.exponents) factored.push_back(render_factorization(factor_over_primes(abs(e), kProp12Primes)));
  CHECK(factored == std::vector<std::string>{"3^9*5^4", "2^7*3^9*13", "13", "2^6*3^4*5^4*13", "2^12*5^4",
                                             "2^7*3^2*5^2*13"});
}

TEST_CASE("the variant with primes 11 and 43") {
  const BelyiTuple t{R({0, 13, 56, 4, 48, 256}), Z({8620425, 7208960, 1539648, -14860800, -2507760, -473})};
  const auto v = verify_belyi(t);
  CHECK(v.ok());
  for (const auto& e : t.exponents) CHECK(factor_over_primes(abs(e), Z({2, 3, 5, 11, 43})).smooth);
}

TEST_CASE("normalised exponents always give a Belyi form") {
  std::mt19937_64 rng(31);
  for (int k = 3; k <= 5; ++k)
    for (int trial = 0; trial < 34; ++trial) {
      const auto n = random_support(rng, k);
      const auto e = vandermonde_exponents(n);
      Integer sum = 0;
      for (const auto& x : e) sum += x;
      CHECK(sum == 0);
      CHECK(sgn(e[0]) > 0);
      const BelyiTuple t{n, e};
      CHECK(dlog_numerator(t).degree() == 0);
      const auto v = verify_belyi(t);
      CHECK(v.ok());
      // Both fibers sum to the degree; sum (e - 1) = 2 deg - 2 with e(inf) = k - 1.
      Integer excess = v.infinity_index - 1;
      for (const auto& x : e) excess += abs(x) - 1;
      CHECK(excess == 2 * v.degree - 2);
      // Reciprocal swaps the fibers over 0 and infinity.
      const auto w = verify_belyi(t.reciprocal());
      CHECK(w.ok());
      CHECK(w.over_zero.size() == v.over_infinity.size());
      CHECK(w.over_infinity.size() == v.over_zero.size());
    }
}

TEST_CASE("exponents are invariant under affine changes of the support") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<long> d(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = random_support(rng, 3 + trial % 3);
    long a = 0;
    while (a == 0) a = d(rng);
    const Rational scale = make_rational(a, 1 + std::abs(d(rng)));
    const Rational shift = make_rational(d(rng), 3);
    std::vector<Rational> m;
    for (const auto& x : n) m.push_back(scale * x + shift);
    auto e = vandermonde_exponents(n), f = vandermonde_exponents(m);
    CHECK(e == f);
  }
}

TEST_CASE("search finds the known small tuples") {
  SearchParams p;
  p.k = 4;
  p.primes = {2, 3};
  p.box = 10;
  const auto found = search_smooth_tuples(p);
  const bool has_example =
      std::any_of(found.begin(), found.end(), [](const BelyiTuple& t) { return t.support == R({0, 1, 5, 6}); });
  CHECK(has_example);
  CHECK(found == search_smooth_tuples_serial(p));
  for (const auto& t : found) CHECK(verify_belyi(t).ok());

  p.k = 3;
  const auto three = search_smooth_tuples(p);
  CHECK(std::any_of(three.begin(), three.end(), [](const BelyiTuple& t) { return t.support == R({0, 1, 2}); }));

  p.primes = {7};
  p.box = 3;
  CHECK(search_smooth_tuples(p).empty());
}

TEST_CASE("search agrees with a brute force over the box") {
  SearchParams p;
  p.k = 3;
  p.primes = {2, 3};
  p.box = 12;
  std::set<std::vector<Rational>> expected;
  for (long b = 1; b <= p.box; ++b)
    for (long c = b + 1; c <= p.box; ++c) {
      if (std::gcd(b, c) != 1) continue;
      // Reflection x -> c - x maps {0, b, c} to {0, c - b, c}; keep the smaller.
      if (c - b < b) continue;
      bool ok = true;
      for (const auto& e : vandermonde_exponents(R({0, b, c}))) ok = ok && factor_over_primes(abs(e), Z({2, 3})).smooth;
      if (ok) expected.insert(R({0, b, c}));
    }
  std::set<std::vector<Rational>> got;
  for (const auto& t : search_smooth_tuples(p)) got.insert(t.support);
  CHECK(got == expected);
}

TEST_CASE("budget caps the search") {
  SearchParams p;
  p.k = 4;
  p.primes = {2, 3};
  p.box = 10;
  p.budget = 2;
  CHECK(search_smooth_tuples(p).size() == 2);
  CHECK(search_smooth_tuples(p) == search_smooth_tuples_serial(p));
}

TEST_CASE("hyperplane membership") {
  auto w = hyperplane_membership({0, 1, 5, 6});
  REQUIRE(w);
  CHECK(*w == std::array<Integer, 4>{0, 6, 1, 5});
  CHECK_FALSE(hyperplane_membership({0, 1, 2, 4}));
  for (long a = 1; a < 6; ++a)
    for (long b = a + 1; b < 7; ++b) {
      auto v = hyperplane_membership({0, a, b, a + b});
      REQUIRE(v);
      CHECK(-(*v)[0] - (*v)[1] + (*v)[2] + (*v)[3] == 0);
    }
}
