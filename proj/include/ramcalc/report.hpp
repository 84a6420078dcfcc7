#pragma once

#include <json.hpp>

#include <string>
#include <vector>

namespace ramcalc {

using Json = nlohmann::ordered_json;

enum class Verdict { Pass, Fail, Assumed, Info };

std::string to_string(Verdict v);

/// Verdict tree. The whole tree passes iff no node fails; assumed nodes never
/// count as passing evidence but do not fail the tree either.
struct ReportNode {
  std::string label;
  std::string tag;  // provenance tag copied from the manifest, may be empty
  Verdict verdict = Verdict::Info;
  std::string detail;
  std::vector<ReportNode> children;

  ReportNode& add(ReportNode child);
  bool has_failure() const;
  bool passed() const { return !has_failure(); }
  /// Leaves (or subtrees) with the given verdict, depth first.
  std::vector<const ReportNode*> collect(Verdict v) const;

  Json to_json() const;
  std::string render(int indent = 0) const;
};

ReportNode pass_node(std::string label, std::string detail = {}, std::string tag = {});
ReportNode fail_node(std::string label, std::string detail = {}, std::string tag = {});
ReportNode assumed_node(std::string label, std::string detail = {}, std::string tag = {});
ReportNode info_node(std::string label, std::string detail = {}, std::string tag = {});
ReportNode check_node(bool ok, std::string label, std::string detail = {}, std::string tag = {});

}  // namespace ramcalc
