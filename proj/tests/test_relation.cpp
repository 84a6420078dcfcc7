#include "ramcalc/manifest.hpp"
#include "ramcalc/relation.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <queue>

#include <unistd.h>

using namespace ramcalc;

namespace {

RuleStore subset(const std::vector<std::string>& ids) {
  const RuleStore all = bundled_rules();
  RuleStore out;
  for (const auto& id : ids) out.insert_unchecked(*all.find(id));
  return out;
}

const std::vector<std::string> kSmallRules{"membership", "prop5", "prop6", "prop7a", "prop7b", "quotient"};

// Shortest path lengths from `source` over nodes C(n) with n <= limit and the
// class node H (encoded as 0), expanding every divisor at every step.
std::map<long, int> oracle_distances(long source, long limit) {
  std::map<long, int> dist{{source, 0}};
  std::queue<long> todo;
  todo.push(source);
  auto visit = [&](long from, long to) {
    if (to > limit || dist.count(to)) return;
    dist[to] = dist[from] + 1;
    todo.push(to);
  };
  while (!todo.empty()) {
    const long v = todo.front();
    todo.pop();
    if (v == 0) {
      visit(0, 6);
      visit(0, 8);
      continue;
    }
    if (v >= 5) visit(v, 0);
    if (v % 8 == 0) visit(v, v * 2);
    if (v % 16 == 0) visit(v, v / 16 * 24);
    for (long d = 1; d < v; ++d)
      if (v % d == 0) visit(v, d);
  }
  return dist;
}

std::string temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("ramcalc_rel_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir.string();
}

EdgeRule verified_rule(const std::string& id, const std::string& artifact, const std::string& hash) {
  EdgeRule r;
  r.id = id;
  r.tag = "test";
  r.kind = RuleKind::Verified;
  r.source = NodePattern::parse("C(8n)");
  r.target = NodePattern::parse("C(16n)");
  r.artifact = artifact;
  r.artifact_hash = hash;
  return r;
}

}  // namespace

TEST_CASE("curve nodes") {
  CHECK(CurveNode::parse("C6") == CurveNode::c(6));
  CHECK(CurveNode::parse("C(6)") == CurveNode::c(6));
  CHECK(CurveNode::parse("C_6") == CurveNode::c(6));
  CHECK(CurveNode::parse("H") == CurveNode::named("H"));
  CHECK(CurveNode::c(48).str() == "C(48)");
  CHECK_THROWS(CurveNode::c(0));
  CHECK_THROWS(CurveNode::parse("C(0)"));
}

TEST_CASE("reachability from C(6)") {
  const RuleStore store = bundled_rules();
  const auto t = reachable(store, CurveNode::c(6), CurveNode::c(48));
  REQUIRE(t);
  CHECK(validate_trace(store, *t));
  std::vector<std::string> path{t->source.str()};
  for (const auto& s : t->steps) path.push_back(s.to.str());
  CHECK(path == std::vector<std::string>{"C(6)", "H", "C(8)", "C(16)", "C(32)", "C(48)"});

  const auto self = reachable(store, CurveNode::c(6), CurveNode::c(6));
  REQUIRE(self);
  CHECK(self->steps.empty());

  CHECK_THROWS(reachable(store, CurveNode::c(6), CurveNode::c(8), 0));
  CHECK_THROWS(reachable(store, CurveNode::c(6), CurveNode::c(8), 5000));
}

TEST_CASE("powers of two and three follow the doubling chain") {
  const RuleStore store = bundled_rules();
  for (long n : {16L, 32L, 64L, 128L}) {
    const auto t = reachable(store, CurveNode::c(6), CurveNode::c(n));
    REQUIRE(t);
    REQUIRE(t->steps.size() >= 3);
    CHECK(t->steps[0].to == CurveNode::named("H"));
    CHECK(t->steps[1].to == CurveNode::c(8));
    CHECK(t->steps[2].to == CurveNode::c(16));
    for (std::size_t i = 3; i < t->steps.size(); ++i) CHECK(t->steps[i].to.n == 2 * t->steps[i - 1].to.n);
  }
}

TEST_CASE("every 2,3,5-smooth target is reachable") {
  const RuleStore store = bundled_rules();
  for (long n = 5; n <= 200; ++n) {
    long m = n;
    for (long p : {2, 3, 5})
      while (m % p == 0) m /= p;
    if (m != 1) continue;
    const auto t = reachable(store, CurveNode::c(6), CurveNode::c(n));
    REQUIRE_MESSAGE(t, "n = " << n);
    std::string why;
    CHECK_MESSAGE(validate_trace(store, *t, &why), why);
  }
}

TEST_CASE("without rules for 7 there is no way to C(7)") {
  const RuleStore store = subset({"membership", "prop5", "prop6", "prop7a", "prop7b", "prop10", "quotient"});
  CHECK_FALSE(reachable(store, CurveNode::c(6), CurveNode::c(7), 12));
  CHECK(reachable(bundled_rules(), CurveNode::c(78), CurveNode::c(7)));
  const auto classes = equivalence_classes(store, {CurveNode::c(5), CurveNode::c(7)}, 12);
  CHECK(classes.size() == 2);
  CHECK(equivalence_classes(store, {CurveNode::c(9)}).size() == 1);
}

TEST_CASE("smooth curves form a single class") {
  std::vector<CurveNode> nodes;
  for (long n = 5; n <= 60; ++n) {
    long m = n;
    for (long p : {2, 3, 5})
      while (m % p == 0) m /= p;
    if (m == 1) nodes.push_back(CurveNode::c(n));
  }
  const auto classes = equivalence_classes(bundled_rules(), nodes);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].size() == nodes.size());
}

TEST_CASE("shortest lengths agree with a full divisor expansion") {
  const RuleStore store = subset(kSmallRules);
  for (long source : {5L, 6L, 8L, 12L}) {
    const auto dist = oracle_distances(source, 20000);
    for (long n = 1; n <= 120; ++n) {
      const auto t = reachable(store, CurveNode::c(source), CurveNode::c(n), 16);
      const auto it = dist.find(n);
      if (it == dist.end() || it->second > 16) {
        CHECK_MESSAGE(!t, source << " -> " << n);
        continue;
      }
      REQUIRE_MESSAGE(t, source << " -> " << n);
      CHECK_MESSAGE(static_cast<int>(t->steps.size()) == it->second, source << " -> " << n);
    }
  }
}

TEST_CASE("adding rules never breaks reachability") {
  const RuleStore small = subset(kSmallRules);
  const RuleStore full = bundled_rules();
  for (long n = 1; n <= 80; ++n) {
    const auto a = reachable(small, CurveNode::c(6), CurveNode::c(n), 20);
    if (!a) continue;
    const auto b = reachable(full, CurveNode::c(6), CurveNode::c(n), 20);
    REQUIRE(b);
    CHECK(b->steps.size() <= a->steps.size());
  }
}

TEST_CASE("store persistence round trip") {
  const RuleStore store = bundled_rules();
  const std::string text = store.render();
  const RuleStore back = RuleStore::parse(text);
  REQUIRE(back.size() == store.size());
  for (std::size_t i = 0; i < store.size(); ++i) {
    CHECK(back.rules()[i] == store.rules()[i]);
    CHECK(back.rules()[i].hash() == store.rules()[i].hash());
  }
  CHECK(back.render() == text);
  CHECK(text == read_text_file(data_path("rules.store")));
  for (const auto& r : store.rules()) CHECK(EdgeRule::from_json(r.to_json()) == r);
}

TEST_CASE("tampered store lines are rejected") {
  std::string text = bundled_rules().render();
  const auto pos = text.find("C(16n)");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 6, "C(17n)");
  CHECK_THROWS_AS(RuleStore::parse(text), ManifestError);
  CHECK_THROWS_AS(RuleStore::parse("#ramcalc-store v2\n"), ManifestError);
}

TEST_CASE("provenance is checked on insertion") {
  RuleStore store;
  const std::string cert = read_text_file(data_path("prop7a.cert"));
  CHECK(store.add_rule(verified_rule("p7", "prop7a.cert", content_hash(cert))));
  CHECK_FALSE(store.add_rule(verified_rule("p7", "prop7a.cert", content_hash(cert))));
  CHECK_THROWS_AS(store.add_rule(verified_rule("p7x", "prop7a.cert", "0000000000000000")), UnverifiedProvenance);
  CHECK_THROWS_AS(store.add_rule(verified_rule("p7y", "", "")), UnverifiedProvenance);
  CHECK_THROWS_AS(store.add_rule(verified_rule("p7z", "prop7a.cert", "")), UnverifiedProvenance);

  EdgeRule axiom;
  axiom.id = "h6";
  axiom.tag = "cited";
  axiom.source = NodePattern::parse("H");
  axiom.target = NodePattern::parse("C(6)");
  CHECK(store.add_rule(axiom));
  axiom.id = "untagged";
  axiom.tag.clear();
  axiom.target = NodePattern::parse("C(10)");
  CHECK_THROWS_AS(store.add_rule(axiom), UnverifiedProvenance);
}

TEST_CASE("a rule citing a failing certificate is refused") {
  Json body = read_manifest_body(data_path("prop7a.cert"), "cert");
  for (auto& a : body["arrows"])
    if (a["name"] == "f1") a["m"] = "6n";
  const std::string dir = temp_dir();
  const std::string text = render_manifest("cert", body);
  std::ofstream(dir + "/broken.cert") << text;
  RuleStore store;
  CHECK_THROWS_AS(store.add_rule(verified_rule("broken", "broken.cert", content_hash(text)), dir), UnverifiedProvenance);
  std::filesystem::remove_all(dir);
}

TEST_CASE("bundled store audits clean") { CHECK(bundled_rules().audit(data_path("")).empty()); }

TEST_CASE("templates are not usable rules") {
  const RuleStore store = subset({"prop36"});
  CHECK_FALSE(reachable(store, CurveNode::c(6), CurveNode::c(11), 4));
}
