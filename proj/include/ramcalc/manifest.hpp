#pragma once

#include "ramcalc/report.hpp"
#include "ramcalc/rmap.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace ramcalc {

/// Malformed input: bad header, bad JSON, missing or ill-typed fields.
class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Files start with a line "#ramcalc-<kind> v<version>" followed by a JSON body.
struct ManifestText {
  std::string kind;
  int version = 0;
  Json body;
};

ManifestText parse_manifest_text(const std::string& text);
ManifestText read_manifest_file(const std::string& path);
/// Checks the kind and returns the body; throws ManifestError otherwise.
Json read_manifest_body(const std::string& path, const std::string& kind);
std::string render_manifest(const std::string& kind, const Json& body);

std::string read_text_file(const std::string& path);
/// Path of a bundled artifact.
std::string data_path(const std::string& name);

/// Stable 64-bit FNV-1a digest in hex.
std::string content_hash(const std::string& text);

// Field readers; all throw ManifestError with the offending key in the message.
const Json& require(const Json& obj, const std::string& key);
std::string json_string(const Json& j, const std::string& what);
Integer json_integer(const Json& j, const std::string& what);
Rational json_rational(const Json& j, const std::string& what);
/// A coefficient array (constant term first) or an expression string.
QPoly json_poly(const Json& j, const std::string& what, std::optional<long> param = std::nullopt);
/// "inf", a rational string, or a coefficient array in the field generator
/// (reduced modulo the defining polynomial).
P1Point json_point(const Json& j, const FieldPtr& field, const std::string& what);
FieldPtr json_field(const Json& j);

Json to_json(const Integer& z);
Json to_json(const Rational& q);
Json poly_to_json(const QPoly& p);
Json point_to_json(const P1Point& x);
Json field_to_json(const FieldPtr& field);

}  // namespace ramcalc
