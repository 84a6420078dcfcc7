#include "oracles.hpp"

#include "ramcalc/cover.hpp"

#include <doctest.h>

using namespace ramcalc;

namespace {

CoverProfile double_cover(int branch_points) {
  CoverProfile p;
  p.degree = Integer(2);
  p.base_genus = 0;
  for (int i = 0; i < branch_points; ++i)
    p.fiber_mut("b" + std::to_string(i)).push_back({"w" + std::to_string(i), IndexBound::exact(2), Integer(1)});
  return p;
}

// Multiset of indices in a fiber, counting multiplicities. Empty when a
// count is unknown.
std::multiset<long> expand(const std::vector<FiberEntry>& fiber) {
  std::multiset<long> out;
  for (const auto& e : fiber) {
    REQUIRE(e.index.is_exact());
    REQUIRE(e.count);
    for (Integer i = 0; i < *e.count; ++i) out.insert(e.index.multiple_of.get_si());
  }
  return out;
}

CoverProfile bounded(const std::vector<std::pair<std::string, IndexBound>>& fibers) {
  CoverProfile p;
  for (const auto& [b, bound] : fibers) p.fiber_mut(b).push_back({b + "-pt", bound, std::nullopt});
  return p;
}

}  // namespace

TEST_CASE("genus by Riemann-Hurwitz") {
  CHECK(rh_genus(double_cover(6)) == 2);
  for (int n = 2; n <= 20; n += 2) CHECK(rh_genus(double_cover(n)) == (n - 2) / 2);
  CoverProfile iso;
  iso.degree = Integer(7);
  iso.base_genus = 1;
  CHECK(rh_genus(iso) == 1);
  CHECK_THROWS_AS(rh_genus(double_cover(5)), InconsistentProfile);
  CoverProfile unknown = double_cover(4);
  unknown.base_genus.reset();
  CHECK_THROWS_AS(rh_genus(unknown), InconsistentProfile);
}

TEST_CASE("genus of the standard projection") {
  for (long n = 3; n <= 12; ++n) {
    CHECK_MESSAGE(rh_genus(x_projection_profile(n)) == (n - 1) / 2, "n = " << n);
    CHECK(hyperelliptic_genus(n) == (n - 1) / 2);
  }
  CHECK(rh_genus(x_projection_profile(5)) == 2);
  CHECK(x_projection_profile(5).fibers.size() == 6);
  CHECK(rh_genus(x_projection_profile(6)) == 2);
}

TEST_CASE("compositum of two cyclic fibers") {
  const auto c = compositum_profile(cyclic_profile(4, {{"z", 4}}), cyclic_profile(6, {{"z", 6}}));
  CHECK(expand(*c.over_base.fiber("z")) == std::multiset<long>{12, 12});
  CHECK(expand(*c.over_left.fiber("z#4")) == std::multiset<long>{3, 3});
  CHECK(expand(*c.over_right.fiber("z#6")) == std::multiset<long>{2, 2});
  CHECK(c.over_base.degree == 24);

  const auto d = compositum_profile(cyclic_profile(1, {{"z", 1}}), cyclic_profile(5, {{"z", 5}}));
  CHECK(expand(*d.over_base.fiber("z")) == std::multiset<long>{5});
  CHECK(expand(*d.over_left.fiber("z#1")) == std::multiset<long>{5});

  CoverProfile x = cyclic_profile(2, {{"z", 2}}), y = cyclic_profile(3, {{"z", 3}});
  x.target = "A";
  y.target = "B";
  CHECK_THROWS_AS(compositum_profile(x, y), BaseMismatch);
}

TEST_CASE("compositum matches the permutation action on random cyclic pairs") {
  std::mt19937_64 rng(41);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const long d1 = 1 + static_cast<long>(rng() % 6), d2 = 1 + static_cast<long>(rng() % 6);
    std::vector<std::pair<std::string, Integer>> li, ri;
    std::map<std::string, std::pair<long, long>> steps;
    for (int b = 0; b < 3; ++b) {
      const std::string z = "b" + std::to_string(b);
      // A base left off a list is unramified on that side.
      const bool on_left = rng() % 4 != 0, on_right = rng() % 4 != 0;
      const long a = on_left ? static_cast<long>(rng() % static_cast<unsigned long>(d1)) : 0;
      const long s = on_right ? static_cast<long>(rng() % static_cast<unsigned long>(d2)) : 0;
      if (on_left) li.emplace_back(z, d1 / std::gcd(d1, a));
      if (on_right) ri.emplace_back(z, d2 / std::gcd(d2, s));
      if (on_left || on_right) steps[z] = {a, s};
    }
    const auto c = compositum_profile(cyclic_profile(d1, li), cyclic_profile(d2, ri));
    CHECK(c.over_base.degree == d1 * d2);
    for (const auto& [z, st] : steps) {
      const auto expected = oracle::product_action(d1, st.first, d2, st.second);
      const auto* base = c.over_base.fiber(z);
      REQUIRE(base);
      bool same = expand(*base) == expected.over_base;
      // Each side has one point class over z; its per-point fiber is the one listed.
      REQUIRE(c.over_left.fibers.size() >= 1);
      for (const auto& [label, fiber] : c.over_left.fibers)
        if (label.rfind(z + "#", 0) == 0 || label == "*" + z) same = same && expand(fiber) == expected.over_left;
      for (const auto& [label, fiber] : c.over_right.fibers)
        if (label.rfind(z + "#", 0) == 0 || label == "*" + z) same = same && expand(fiber) == expected.over_right;
      if (!same) {
        ++mismatches;
        MESSAGE("mismatch d1=" << d1 << " d2=" << d2 << " steps " << st.first << "," << st.second);
      }
    }
    // Degrees multiply and fiber sums hold.
    CHECK_NOTHROW(c.over_base.check_fiber_sums());
    CHECK_NOTHROW(c.over_left.check_fiber_sums());
    CHECK_NOTHROW(c.over_right.check_fiber_sums());
  }
  CHECK(mismatches == 0);
}

TEST_CASE("compositum is symmetric") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 50; ++trial) {
    const long d1 = 1 + static_cast<long>(rng() % 6), d2 = 1 + static_cast<long>(rng() % 6);
    std::vector<std::pair<std::string, Integer>> li, ri;
    for (const char* z : {"u", "v"}) {
      li.emplace_back(z, d1 / std::gcd(d1, static_cast<long>(rng() % static_cast<unsigned long>(d1))));
      ri.emplace_back(z, d2 / std::gcd(d2, static_cast<long>(rng() % static_cast<unsigned long>(d2))));
    }
    const auto f = cyclic_profile(d1, li), g = cyclic_profile(d2, ri);
    const auto fg = compositum_profile(f, g), gf = compositum_profile(g, f);
    for (const char* z : {"u", "v"}) CHECK(expand(*fg.over_base.fiber(z)) == expand(*gf.over_base.fiber(z)));
    for (const auto& [label, fiber] : fg.over_left.fibers) CHECK(expand(fiber) == expand(*gf.over_right.fiber(label)));
    for (const auto& [label, fiber] : fg.over_right.fibers) CHECK(expand(fiber) == expand(*gf.over_left.fiber(label)));
  }
}

TEST_CASE("divisibility of indices makes the projection unramified") {
  std::mt19937_64 rng(43);
  int unramified = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const long d1 = 1 + static_cast<long>(rng() % 8), d2 = 1 + static_cast<long>(rng() % 8);
    std::vector<std::pair<std::string, Integer>> li, ri;
    for (const char* z : {"u", "v", "w"}) {
      li.emplace_back(z, d1 / std::gcd(d1, static_cast<long>(rng() % static_cast<unsigned long>(d1))));
      ri.emplace_back(z, d2 / std::gcd(d2, static_cast<long>(rng() % static_cast<unsigned long>(d2))));
    }
    const auto f = cyclic_profile(d1, li), g = cyclic_profile(d2, ri);
    if (!is_unramified_over(f, g)) continue;
    ++unramified;
    std::string why;
    CHECK(surely_unramified(compositum_profile(f, g).over_left, &why));
  }
  CHECK(unramified > 10);
}

TEST_CASE("unramified predicate examples") {
  // Indices 8n, 8n, (4n, 4n) against all 2, all 4, all 4, at n = 1, 2, 3.
  for (long n = 1; n <= 3; ++n) {
    CoverProfile left;
    left.fiber_mut("1").push_back({"p1", IndexBound::exact(8 * n), Integer(1)});
    left.fiber_mut("inf").push_back({"pinf", IndexBound::exact(8 * n), Integer(1)});
    left.fiber_mut("0").push_back({"p0", IndexBound::exact(4 * n), Integer(2)});
    CoverProfile right;
    right.fiber_mut("1").push_back({"q1", IndexBound::exact(2), std::nullopt});
    right.fiber_mut("0").push_back({"q0", IndexBound::exact(4), std::nullopt});
    right.fiber_mut("inf").push_back({"qinf", IndexBound::exact(4), std::nullopt});
    CHECK(is_unramified_over(left, right));
  }
  const auto w = unramified_obstruction(bounded({{"z", IndexBound::exact(2)}}), bounded({{"z", IndexBound::exact(3)}}));
  REQUIRE(w);
  CHECK(w->base == "z");
  CHECK(w->left == IndexBound::exact(2));
  CHECK(w->right == IndexBound::exact(3));

  // Left indices are multiples of 2^11 3^3 or 2^10 3^3; right ones divide 2^10 3^3.
  const Integer top = Integer(1024) * 27;
  CoverProfile multiples;
  multiples.fiber_mut("a").push_back({"x", {2 * top, 0}, std::nullopt});
  multiples.fiber_mut("b").push_back({"y", {top, 0}, std::nullopt});
  CoverProfile divisors = bounded({{"a", {1, top}}, {"b", {1, top}}});
  CHECK(is_unramified_over(multiples, divisors));
  CHECK_FALSE(is_unramified_over(divisors, multiples));
  divisors.complete_off_list = false;
  CHECK_FALSE(is_unramified_over(multiples, divisors));
}

TEST_CASE("index bounds") {
  CHECK(IndexBound::exact(4).surely_divides(IndexBound::exact(8)));
  CHECK_FALSE(IndexBound::exact(4).surely_divides(IndexBound::exact(6)));
  CHECK(IndexBound{1, 6}.surely_divides(IndexBound{12, 0}));
  CHECK_FALSE(IndexBound{1, 0}.surely_divides(IndexBound{12, 0}));
  CHECK_FALSE((IndexBound{4, 6}).consistent());
  CHECK(ParamIndex::parse("2^11*3^3*n").instantiate({{"n", 2}}) == Integer(2048) * 27 * 2);
  CHECK(ParamIndex::parse("8n").divides_symbolically(ParamIndex::parse("16n")));
  CHECK_FALSE(ParamIndex::parse("8n").divides_symbolically(ParamIndex::parse("16")));
}

TEST_CASE("division polynomials") {
  CHECK(division_poly_zeroset(-1, 0, 2) == parse_qpoly("z^3-z"));
  CHECK(rational_roots(division_poly_zeroset(-1, 0, 2)).size() == 3);
  CHECK(division_poly_zeroset(-1, 0, 3) == parse_qpoly("3*z^4-6*z^2-1"));
  CHECK(division_poly_zeroset(0, 1, 2) == parse_qpoly("z^3+1"));
  CHECK_THROWS_AS(division_poly_zeroset(-3, 2, 2), SingularCurve);
  CHECK_THROWS(division_poly_zeroset(-1, 0, 5));
}
