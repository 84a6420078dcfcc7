#include "ramcalc/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

namespace ramcalc {

ManifestText parse_manifest_text(const std::string& text) {
  const auto eol = text.find('\n');
  const std::string header = text.substr(0, eol);
  static const std::regex header_re(R"(^#ramcalc-([a-z]+) v([0-9]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(header, m, header_re))
    throw ManifestError("missing or malformed header line (expected \"#ramcalc-<kind> v<n>\")");
  ManifestText out;
  out.kind = m[1];
  out.version = std::stoi(m[2]);
  if (out.version != 1) throw ManifestError("unsupported format version " + m[2].str());
  try {
    out.body = Json::parse(eol == std::string::npos ? std::string("{}") : text.substr(eol + 1));
  } catch (const Json::parse_error& e) {
    throw ManifestError(std::string("malformed body: ") + e.what());
  }
  if (!out.body.is_object()) throw ManifestError("manifest body must be an object");
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ManifestText read_manifest_file(const std::string& path) { return parse_manifest_text(read_text_file(path)); }

Json read_manifest_body(const std::string& path, const std::string& kind) {
  ManifestText t = read_manifest_file(path);
  if (t.kind != kind) throw ManifestError(path + ": expected a " + kind + " manifest, found " + t.kind);
  return t.body;
}

std::string render_manifest(const std::string& kind, const Json& body) {
  return "#ramcalc-" + kind + " v1\n" + body.dump(2) + "\n";
}

std::string data_path(const std::string& name) { return std::string(RAMCALC_DATA_DIR) + "/" + name; }

std::string content_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

const Json& require(const Json& obj, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) throw ManifestError("missing field \"" + key + "\"");
  return obj.at(key);
}

std::string json_string(const Json& j, const std::string& what) {
  if (!j.is_string()) throw ManifestError(what + ": expected a string");
  return j.get<std::string>();
}

Integer json_integer(const Json& j, const std::string& what) {
  try {
    if (j.is_number_integer()) return Integer(std::to_string(j.get<long long>()));
    if (j.is_string()) return parse_integer(j.get<std::string>());
  } catch (const std::invalid_argument&) {
  }
  throw ManifestError(what + ": expected an integer");
}

Rational json_rational(const Json& j, const std::string& what) {
  try {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument&) {
  }
  throw ManifestError(what + ": expected a rational");
}

QPoly json_poly(const Json& j, const std::string& what, std::optional<long> param) {
  if (j.is_array()) {
    std::vector<Rational> c;
    for (std::size_t i = 0; i < j.size(); ++i) c.push_back(json_rational(j[i], what + "[" + std::to_string(i) + "]"));
    return QPoly(std::move(c));
  }
  if (j.is_string()) {
    try {
      return parse_qpoly(j.get<std::string>(), param);
    } catch (const std::exception& e) {
      throw ManifestError(what + ": " + e.what());
    }
  }
  throw ManifestError(what + ": expected a coefficient array or an expression");
}

P1Point json_point(const Json& j, const FieldPtr& field, const std::string& what) {
  if (j.is_string() && j.get<std::string>() == "inf") return P1Point::infinity();
  if (j.is_array()) {
    return P1Point(NfElement(field, json_poly(j, what)));
  }
  return P1Point::rational(json_rational(j, what), field);
}

FieldPtr json_field(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "rational") return NumberField::rationals();
  if (j.is_object() && j.contains("cyclotomic")) {
    Integer n = json_integer(j.at("cyclotomic"), "field.cyclotomic");
    if (n < 1 || n > 1000) throw ManifestError("field.cyclotomic out of range");
    return NumberField::cyclotomic_field(n.get_ui());
  }
  throw ManifestError("field: expected \"rational\" or {\"cyclotomic\": n}");
}

Json to_json(const Integer& z) { return z.get_str(); }
Json to_json(const Rational& q) { return q.get_str(); }

Json poly_to_json(const QPoly& p) {
  Json a = Json::array();
  for (const auto& c : p.coeffs()) a.push_back(c.get_str());
  return a;
}

Json point_to_json(const P1Point& x) {
  if (x.is_infinity()) return "inf";
  if (x.value().is_rational()) return x.value().to_rational().get_str();
  return poly_to_json(x.value().residue());
}

Json field_to_json(const FieldPtr& field) {
  if (field->degree() == 1) return "rational";
  return Json{{"cyclotomic", field->cyclotomic_index()}};
}

}  // namespace ramcalc
