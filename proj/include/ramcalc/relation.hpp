#pragma once

#include "ramcalc/cover.hpp"
#include "ramcalc/manifest.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramcalc {

/// C(n) for n >= 1, or a named class of curves.
struct CurveNode {
  std::string name;  // empty for C(n)
  Integer n = 0;

  static CurveNode c(const Integer& n);
  static CurveNode named(const std::string& name) { return {name, 0}; }
  /// "C6", "C(6)" or a bare name.
  static CurveNode parse(const std::string& text);
  bool is_family() const { return name.empty(); }
  std::string str() const;
  bool operator==(const CurveNode&) const = default;
  bool operator<(const CurveNode& o) const;
};

/// "H", "C(6)", "C(8n)", "C(kn)".
struct NodePattern {
  std::string name;
  std::optional<ParamIndex> index;
  std::string text;  // as written, e.g. "C(2^11*3^3*n)"

  static NodePattern parse(const std::string& text);
  std::string str() const;
  bool operator==(const NodePattern&) const = default;
};

enum class RuleKind { Axiom, Verified, Template };
std::string to_string(RuleKind k);
RuleKind parse_rule_kind(const std::string& s);

struct EdgeRule {
  std::string id;
  std::string tag;  // provenance label
  RuleKind kind = RuleKind::Axiom;
  NodePattern source;
  NodePattern target;
  long min_param = 1;  // side condition on the matched parameter
  std::string artifact;  // bundled certificate backing a verified rule
  std::string artifact_hash;  // content hash of the artifact text
  std::string note;

  Json to_json() const;
  static EdgeRule from_json(const Json& j);
  /// Hash of the rule's content; the store key.
  std::string hash() const;
  /// Source C(k n) with target C(n): any C(a) lies over C(d) for d | a.
  bool is_quotient() const;
  bool operator==(const EdgeRule&) const = default;
};

class UnverifiedProvenance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceStep {
  CurveNode from;
  CurveNode to;
  std::string rule_id;
  std::string tag;
  std::optional<Integer> param;  // the matched parameter value
};

struct DerivationTrace {
  CurveNode source;
  CurveNode target;
  std::vector<TraceStep> steps;
  std::string str() const;
};

/// Rules keyed by content hash, in insertion order.
class RuleStore {
 public:
  /// Verified rules must name an artifact whose hash matches and whose
  /// certificate passes at n in {1, 2, 3, 6}; other rules need a tag.
  /// Duplicates are ignored. Returns false for a duplicate.
  bool add_rule(const EdgeRule& rule, const std::string& base_dir = {});
  /// Inserts without provenance checks (used when loading a saved store).
  bool insert_unchecked(const EdgeRule& rule);

  const std::vector<EdgeRule>& rules() const { return rules_; }
  const EdgeRule* find(const std::string& id) const;
  std::size_t size() const { return rules_.size(); }

  std::string render() const;
  static RuleStore parse(const std::string& text);
  static RuleStore load(const std::string& path);
  void save(const std::string& path) const;
  /// Re-checks the provenance of every rule; returns the failures.
  std::vector<std::string> audit(const std::string& base_dir) const;

 private:
  std::vector<EdgeRule> rules_;
};

/// Throws UnverifiedProvenance with the reason when the rule may not enter a store.
void check_provenance(const EdgeRule& rule, const std::string& base_dir);

/// The bundled rule set.
RuleStore bundled_rules();

/// Shortest derivation of length at most `bound`, or nothing.
std::optional<DerivationTrace> reachable(const RuleStore& store, const CurveNode& source, const CurveNode& target,
                                         int bound = 64);

/// Re-validates a trace against the rules: endpoints chain and every step is
/// an instance of its rule.
bool validate_trace(const RuleStore& store, const DerivationTrace& trace, std::string* why = nullptr);

/// Classes of mutual reachability within the bound, in input order.
std::vector<std::vector<CurveNode>> equivalence_classes(const RuleStore& store, const std::vector<CurveNode>& nodes,
                                                        int bound = 64);

}  // namespace ramcalc
