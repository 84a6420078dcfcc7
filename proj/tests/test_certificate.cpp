#include "ramcalc/certificate.hpp"
#include "ramcalc/manifest.hpp"

#include <doctest.h>

#include <fstream>

using namespace ramcalc;

namespace {

const std::vector<std::string> kCertificates{"prop6", "prop7a", "prop7b", "prop10", "prop13", "thm30", "thm32"};
const std::vector<long> kGrid{1, 2, 3, 6};

Json expected_assumptions() { return Json::parse(read_text_file(data_path("expected_assumptions.json"))); }

CertificateReport run(const CertificateManifest& m) { return verify_certificate(m, parameter_grid(m, kGrid)); }

Json cert_body(const std::string& name) { return read_manifest_body(data_path(name + ".cert"), "cert"); }

}  // namespace

TEST_CASE("bundled certificates discharge on the parameter grid") {
  for (const auto& name : kCertificates) {
    const CertificateManifest m = load_certificate(data_path(name + ".cert"));
    const CertificateReport r = run(m);
    CHECK_MESSAGE(r.passed(), name);
    std::size_t expected = 1;
    for (std::size_t i = 0; i < m.parameters.size(); ++i) expected *= kGrid.size();
    CHECK(r.instances.size() == expected);
  }
}

TEST_CASE("assumption lists match the documented proof steps") {
  const Json expected = expected_assumptions();
  for (const auto& name : kCertificates) {
    const Json got = run(load_certificate(data_path(name + ".cert"))).to_json()["assumptions"];
    CHECK_MESSAGE(got == expected[name], name << ": " << got.dump());
  }
}

TEST_CASE("assumptions are reported but never count as evidence") {
  const CertificateReport r = run(load_certificate(data_path("prop7b.cert")));
  const auto assumed = r.tree.collect(Verdict::Assumed);
  CHECK_FALSE(assumed.empty());
  for (const auto* n : assumed) {
    CHECK_FALSE(n->tag.empty());
    CHECK(n->verdict != Verdict::Pass);
  }
}

TEST_CASE("every assumption carries a tag") {
  for (const auto& name : kCertificates)
    for (const auto& a : load_certificate(data_path(name + ".cert")).assumptions) {
      CHECK_FALSE(a.id.empty());
      CHECK_FALSE(a.tag.empty());
    }
}

TEST_CASE("a three index over a two index fails with a witness") {
  Json body = cert_body("prop7a");
  for (auto& a : body["arrows"])
    if (a["name"] == "f1") a["m"] = "6n";
  const CertificateReport r = run(parse_certificate(body));
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.tree.collect(Verdict::Fail).empty());
}

TEST_CASE("a false fiber claim fails") {
  Json body = cert_body("prop7a");
  for (auto& c : body["claims"])
    if (c.value("arrow", "") == "f1" && c.value("base", "") == "0") c["index"] = "8n";
  CHECK_FALSE(run(parse_certificate(body)).passed());
}

TEST_CASE("an unjustified unramified arrow fails") {
  Json body = cert_body("prop7a");
  for (auto& a : body["arrows"])
    if (a["kind"] == "unramified") a["justify"] = Json::array({"NoSuchFact"});
  CHECK_FALSE(run(parse_certificate(body)).passed());
}

TEST_CASE("references to missing nodes are rejected") {
  Json body = cert_body("prop10");
  body["arrows"][0]["source"] = "Nowhere";
  CHECK_THROWS_AS(parse_certificate(body), ManifestError);
}

TEST_CASE("bundled certificates round trip") {
  for (const auto& name : kCertificates) {
    const std::string text = read_text_file(data_path(name + ".cert"));
    const CertificateManifest m = parse_certificate(parse_manifest_text(text).body);
    CHECK(same_certificate(m, parse_certificate(render_certificate(m))));
    CHECK(render_manifest("cert", render_certificate(m)) == text);
  }
}

TEST_CASE("parameter grid is the cartesian product") {
  const CertificateManifest m = load_certificate(data_path("thm30.cert"));
  const auto grid = parameter_grid(m, {1, 2});
  std::size_t expected = 1;
  for (std::size_t i = 0; i < m.parameters.size(); ++i) expected *= 2;
  CHECK(grid.size() == expected);
}
