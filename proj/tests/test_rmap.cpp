#include "oracles.hpp"

#include "ramcalc/chain.hpp"
#include "ramcalc/rmap.hpp"

#include <doctest.h>

using namespace ramcalc;

namespace {

const FieldPtr Q = NumberField::rationals();
const FieldPtr K5 = NumberField::cyclotomic_field(5);

RationalMap M(const char* s) { return RationalMap::parse(s); }
P1Point q(long a, long b = 1) { return P1Point::rational(make_rational(a, b), Q); }
P1Point inf() { return P1Point::infinity(); }
QPoly P(const char* s) { return parse_qpoly(s); }

RationalMap f9() { return M("(z - 1)^32 (z - 16)^3 / ((z - 10)^8 z^27)"); }

std::vector<RamPoint> f9_ram() { return {{q(0), 27}, {q(1), 32}, {q(10), 8}, {q(16), 3}, {inf(), 3}}; }

RationalMap random_map(std::mt19937_64& rng, int max_degree) {
  for (;;) {
    QPoly num = oracle::random_poly(rng, max_degree, 5), den = oracle::random_poly(rng, max_degree, 5);
    if (num.is_zero() || den.is_zero()) continue;
    if (std::max(num.degree(), den.degree()) < 1) continue;
    if (gcd(num, den).degree() > 0) continue;
    return RationalMap(num, den);
  }
}

Rational random_q(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(-30, 30);
  return make_rational(d(rng), 1 + std::abs(d(rng)) % 7);
}

}  // namespace

TEST_CASE("evaluation on the projective line") {
  CHECK(M("z/(z-15)").eval(q(16), Q) == q(16));
  CHECK(M("z/(z-15)").eval(inf(), Q) == q(1));
  CHECK(M("z/(z-15)").eval(q(15), Q) == inf());
  const NfElement t = NfElement::generator(K5);
  const P1Point image = M("z + 1/z").eval(P1Point(t), K5);
  CHECK(image == P1Point(t + t * t * t * t));
  CHECK(M("z^2").eval(inf(), Q) == inf());
  CHECK(M("1/z").eval(q(0), Q) == inf());
}

TEST_CASE("composition") {
  CHECK(compose(M("z^2"), M("z^2")) == M("z^4"));
  // -1/(z + 1/z) = -z/(z^2 + 1)
  CHECK(compose(M("-1/z"), M("z + 1/z")) == M("-z/(z^2+1)"));
  CHECK(compose(M("(1/2)*((1/2)*(z + 225/z) + 15)"), M("4(z - 5/2)^2")).degree() == 4);
  CHECK(M("(z^2-1)/(z^2-3*z+2)") == M("(z+1)/(z-2)"));
  CHECK_THROWS(M("z/z"));
}

TEST_CASE("wronskian") {
  CHECK(wronskian(M("z^2")) == P("2*z"));
  CHECK(wronskian(M("(z^2+1)/z")) == P("z^2-1"));
  CHECK(wronskian(M("z^2+z-1")) == P("2*z+1"));
}

TEST_CASE("local indices") {
  CHECK(local_index(f9(), q(1)) == 32);
  CHECK(local_index(f9(), inf()) == 3);
  CHECK(local_index(f9(), q(0)) == 27);
  CHECK(local_index(M("z + 1/z"), q(2)) == 1);
  CHECK(local_index(M("z + 1/z"), q(1)) == 2);
  CHECK(local_index(M("z + 1/z"), q(0)) == 1);
  CHECK(local_index(M("z^2+z-1"), inf()) == 2);
}

TEST_CASE("ramification divisor") {
  auto check = ram_divisor(f9(), f9_ram());
  CHECK(check.ok());
  CHECK(check.total == 68);
  CHECK(f9().degree() == 35);

  auto partial = ram_divisor(f9(), {{q(0), 27}, {q(1), 32}});
  CHECK(check.mismatches.empty());
  CHECK_FALSE(partial.complete());
  CHECK(partial.gap() == 68 - 26 - 31);

  auto wrong = f9_ram();
  wrong[1].index = 31;
  auto bad = ram_divisor(f9(), wrong);
  REQUIRE(bad.mismatches.size() == 1);
  CHECK(bad.mismatches[0].point == q(1));
  CHECK(bad.mismatches[0].claimed == 31);
  CHECK(bad.mismatches[0].actual == 32);

  CHECK(ram_divisor(M("4(z - 5/2)^2"), {{q(5, 2), 2}, {inf(), 2}}).ok());
}

TEST_CASE("branch loci") {
  CHECK(branch_locus(f9(), f9_ram(), Q) == PointSet::from_points({q(0), q(1), inf()}));
  CHECK(branch_locus(M("z^2+z-1"), {{q(-1, 2), 2}, {inf(), 2}}, Q) == PointSet::from_points({q(-5, 4), inf()}));
}

TEST_CASE("image sets") {
  CHECK(image_set(M("z^2"), PointSet::from_points({q(0)})) == PointSet::from_points({q(0)}));
  // The second set of the five-torsion chain under z -> -1/z.
  const NfElement t = NfElement::generator(K5);
  const PointSet b2 = PointSet::from_points({q(2), q(-2), P1Point(t + t * t * t * t), P1Point(t * t + t * t * t), inf()});
  const PointSet b3 =
      PointSet::from_points({q(-1, 2), q(1, 2), P1Point(t * t + t * t * t), P1Point(t + t * t * t * t), q(0)});
  CHECK(image_set(M("-1/z"), b2) == b3);
  // Direct evaluation: 4(25 - 5/2)^2 = 2025 and 4(9 - 5/2)^2 = 169.
  const RationalMap f6 = M("4(z - 5/2)^2");
  CHECK(image_set(f6, PointSet::from_points({q(25), q(9)})) ==
        PointSet::from_points({f6.eval(q(25), Q), f6.eval(q(9), Q)}));
  CHECK(image_set(f6, PointSet::from_points({q(25), q(9)})) == PointSet::from_points({q(2025), q(169)}));
  CHECK(image_set(f6, PointSet::from_points({q(5), q(1), q(5, 2), inf()})) ==
        PointSet::from_points({q(25), q(9), q(0), inf()}));
}

TEST_CASE("f9 logarithmic derivative") {
  CHECK(dlog_identity_holds(f9(), DlogClaim{{0, 1, 10, 16}, 4320}));
  CHECK_FALSE(dlog_identity_holds(f9(), DlogClaim{{0, 1, 10, 16}, 4321}));
  CHECK_FALSE(dlog_identity_holds(f9(), DlogClaim{{0, 1, 10, 15}, 4320}));
}

TEST_CASE("degree is multiplicative under composition") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    RationalMap f = random_map(rng, 4), g = random_map(rng, 4);
    CHECK(compose(g, f).degree() == g.degree() * f.degree());
  }
}

TEST_CASE("evaluation commutes with composition") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    RationalMap f = random_map(rng, 3), g = random_map(rng, 3);
    const RationalMap gf = compose(g, f);
    for (int i = 0; i < 4; ++i) {
      const P1Point x = i == 0 ? inf() : P1Point::rational(random_q(rng), Q);
      CHECK(gf.eval(x, Q) == g.eval(f.eval(x, Q), Q));
    }
  }
}

TEST_CASE("Riemann-Hurwitz on the line for random maps") {
  // Full divisor: finite critical points from the wronskian's rational roots
  // plus infinity; only maps whose critical points are all rational qualify.
  std::mt19937_64 rng(23);
  int tested = 0;
  for (int trial = 0; trial < 400 && tested < 30; ++trial) {
    std::uniform_int_distribution<long> d(-6, 6);
    std::vector<Rational> roots;
    const int k = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) roots.emplace_back(d(rng));
    const QPoly num = product_of_linear(roots);
    const RationalMap f = RationalMap::polynomial(num);
    const QPoly w = wronskian(f);
    auto crit = rational_roots(w);
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
    Integer rooted = 0;
    for (const auto& c : crit) rooted += root_multiplicity(w, c);
    if (rooted != w.degree()) continue;
    std::vector<RamPoint> ram{{inf(), local_index(f, inf())}};
    long total = local_index(f, inf()) - 1;
    for (const auto& c : crit) {
      const int e = local_index(f, P1Point::rational(c, Q));
      ram.push_back({P1Point::rational(c, Q), e});
      total += e - 1;
    }
    CHECK(total == 2 * f.degree() - 2);
    CHECK(ram_divisor(f, ram).ok());
    ++tested;
  }
  CHECK(tested >= 10);
}

TEST_CASE("image of a union is the union of images") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 40; ++trial) {
    const RationalMap f = random_map(rng, 3);
    std::vector<P1Point> a, b;
    for (int i = 0; i < 3; ++i) a.push_back(P1Point::rational(random_q(rng), Q));
    for (int i = 0; i < 2; ++i) b.push_back(P1Point::rational(random_q(rng), Q));
    if (trial % 4 == 0) b.push_back(inf());
    const PointSet s1 = PointSet::from_points(a), s2 = PointSet::from_points(b);
    CHECK(image_set(f, s1.unite(s2)) == image_set(f, s1).unite(image_set(f, s2)));
    std::vector<P1Point> images;
    for (const auto& x : a) images.push_back(f.eval(x, Q));
    CHECK(image_set(f, s1) == PointSet::from_points(images));
  }
}
