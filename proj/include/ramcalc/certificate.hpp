#pragma once

#include "ramcalc/cover.hpp"
#include "ramcalc/manifest.hpp"
#include "ramcalc/report.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ramcalc {

struct CertNode {
  std::string name;
  std::optional<ParamIndex> hyperelliptic;  // C(k) nodes
  std::optional<long> genus;
  std::string text;  // free description for class nodes
};

struct EntrySpec {
  std::string label;
  std::optional<ParamIndex> index;
  std::optional<ParamIndex> multiple_of;
  std::optional<ParamIndex> divides;
  std::optional<ParamIndex> count;
};

enum class ArrowKind { Profile, YProjection, CurveMap, Unramified, Compose, Square, FromChain };

std::string to_string(ArrowKind k);

/// One entry of the "arrows" list. A square defines two arrows, the
/// projections of the compositum of `left` and `right` onto their sources.
struct ArrowSpec {
  std::string name;
  std::string tag;
  ArrowKind kind = ArrowKind::Profile;
  std::string source;
  std::string target;
  std::vector<std::string> justify;
  std::vector<std::string> corroborated_by;

  // profile, unramified
  std::optional<ParamIndex> degree;
  std::vector<std::pair<std::string, std::vector<EntrySpec>>> fibers;
  bool complete = true;
  // y_projection, curve_map; curve_map without m lives on the line
  std::optional<ParamIndex> m;
  std::map<std::string, std::string> relabel;
  std::string sheets;
  std::string map;
  std::vector<std::string> bases;
  // compose
  std::string outer, inner;
  // square
  std::string left, right, left_proj, right_proj;
  // from_chain
  std::string chain;
};

struct CertFact {
  std::string id;
  std::string kind;  // "division_zeroset" | "chain_trace"
  Rational a, b;
  int m = 2;
  std::string expect;  // polynomial expression
  std::vector<Rational> contains;
  std::string chain;
  std::string start;
  std::vector<std::string> expect_in;
};

struct CertClaim {
  std::string kind;  // "unramified" | "fiber" | "branch"
  std::string arrow;
  std::string base;
  std::optional<ParamIndex> index;
  std::optional<ParamIndex> multiple_of;
  std::vector<std::string> bases;
  std::string tag;
};

struct CertAssumption {
  std::string id;
  std::string tag;
  std::string text;
};

struct CertConclusion {
  std::string source;
  std::string target;
  std::vector<std::string> unramified;  // from the top down to the source
  std::string onto;
  std::string continues_with;  // another certificate verified at the same instance
};

struct CertificateManifest {
  std::string name;
  std::string tag;
  std::string statement;
  std::vector<std::string> parameters;
  std::vector<CertNode> nodes;
  std::vector<ArrowSpec> arrows;
  std::vector<CertFact> facts;
  std::vector<CertClaim> claims;
  std::vector<CertAssumption> assumptions;  // geometric facts taken on trust
  std::vector<CertAssumption> hypotheses;  // premises of the statement itself
  CertConclusion conclusion;
  std::string base_dir;  // where referenced chains and certificates live; not serialised
};

CertificateManifest parse_certificate(const Json& body);
Json render_certificate(const CertificateManifest& m);
CertificateManifest load_certificate(const std::string& path);
bool same_certificate(const CertificateManifest& a, const CertificateManifest& b);

using ParamValues = std::map<std::string, long>;

struct InstanceReport {
  ParamValues values;
  ReportNode tree;
  std::map<std::string, CoverProfile> profiles;
};

struct CertificateReport {
  std::string name;
  ReportNode tree;
  std::vector<InstanceReport> instances;
  std::vector<std::string> assumptions;  // ids, in manifest order

  bool passed() const { return tree.passed(); }
  Json to_json() const;
};

/// Every combination of the listed values over the certificate's parameters;
/// a certificate without parameters has one empty instance.
std::vector<ParamValues> parameter_grid(const CertificateManifest& m, const std::vector<long>& values);

InstanceReport verify_instance(const CertificateManifest& m, const ParamValues& values);
CertificateReport verify_certificate(const CertificateManifest& m, const std::vector<ParamValues>& instances);

}  // namespace ramcalc
