#include "ramcalc/chain.hpp"
#include "ramcalc/manifest.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ramcalc;

namespace {

const FieldPtr Q = NumberField::rationals();

std::vector<Integer> bound_primes(std::initializer_list<long> ps) {
  std::vector<Integer> out;
  for (long p : ps) out.emplace_back(p);
  return out;
}

bool every_index_divides(const ChainReport& r, const Integer& bound) {
  for (const auto& e : r.composite_indices())
    if (!divides(e, bound)) return false;
  return divides(r.index_lcm, bound);
}

ChainManifest tampered_prop9() {
  ChainManifest m = load_chain(data_path("prop9.chain"));
  for (auto& s : m.steps)
    if (s.name == "f9")
      for (auto& r : s.ram)
        if (r.point == P1Point::rational(1, Q)) r.index = 31;
  return m;
}

}  // namespace

TEST_CASE("prop9 chain") {
  const ChainReport r = verify_chain(load_chain(data_path("prop9.chain")));
  CHECK(r.passed());
  CHECK(r.final_set == PointSet::from_points({P1Point::rational(0, Q), P1Point::rational(1, Q), P1Point::infinity()}));
  for (const auto& e : r.composite_indices()) CHECK(factor_over_primes(e, bound_primes({2, 3})).smooth);
  CHECK(r.composite_genus == 2);
}

TEST_CASE("prop12 chain") {
  const ChainManifest m = load_chain(data_path("prop12.chain"));
  const ChainReport r = verify_chain(m);
  CHECK(r.passed());
  CHECK(every_index_divides(r, Integer("32768") * 59049 * 625 * 13));
  CHECK(r.belyi_steps == std::vector<std::string>{"h6"});
}

TEST_CASE("prop14 chain") {
  const ChainReport r = verify_chain(load_chain(data_path("prop14.chain")));
  CHECK(r.passed());
  CHECK(every_index_divides(r, Integer(262144) * 6561 * 25 * 11 * 43));
}

TEST_CASE("fibers over the final branch points sum to the degree") {
  for (const char* name : {"prop9.chain", "prop12.chain", "prop14.chain"}) {
    const ChainReport r = verify_chain(load_chain(data_path(name)));
    for (const auto& f : r.fibers) {
      Integer total = 0;
      for (const auto& [e, count] : f.indices) total += e * count;
      CHECK_MESSAGE(total == r.degree, name << " over " << f.base.str());
    }
  }
}

TEST_CASE("a wrong claimed index fails with a mismatch witness") {
  const ChainReport r = verify_chain(tampered_prop9());
  CHECK_FALSE(r.passed());
  bool witnessed = false;
  for (const auto* n : r.tree.collect(Verdict::Fail))
    witnessed = witnessed || n->detail.find("IndexMismatch at 1: claimed 31, actual 32") != std::string::npos;
  CHECK(witnessed);
}

TEST_CASE("a wrong claimed image set fails") {
  ChainManifest m = load_chain(data_path("prop9.chain"));
  m.steps[3].output.push_back(P1Point::rational(Rational(12345), Q));
  CHECK_FALSE(verify_chain(m).passed());
}

TEST_CASE("bundled chains round trip") {
  for (const char* name : {"prop9.chain", "prop12.chain", "prop14.chain"}) {
    const std::string text = read_text_file(data_path(name));
    const ChainManifest m = parse_chain(parse_manifest_text(text).body);
    CHECK(same_chain(m, parse_chain(render_chain(m))));
    const std::string again = render_manifest("chain", render_chain(m));
    CHECK(render_manifest("chain", render_chain(parse_chain(parse_manifest_text(again).body))) == again);
  }
}

TEST_CASE("malformed manifests are rejected") {
  CHECK_THROWS_AS(parse_manifest_text("{}"), ManifestError);
  CHECK_THROWS_AS(parse_manifest_text("#ramcalc-chain v1\n{"), ManifestError);
  CHECK_THROWS_AS(parse_chain(Json::parse(R"({"name": "x"})")), ManifestError);
}

TEST_CASE("trace of a point through the prop9 chain") {
  const ChainManifest m = load_chain(data_path("prop9.chain"));
  const auto orbit = trace_point(m, P1Point::infinity());
  REQUIRE(orbit.size() == m.steps.size() + 1);
  CHECK(orbit.back().is_rational());
}
