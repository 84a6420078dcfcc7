#include "ramcalc/report.hpp"

#include <sstream>

namespace ramcalc {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Assumed:
      return "assumed";
    case Verdict::Info:
      return "info";
  }
  return "info";
}

ReportNode& ReportNode::add(ReportNode child) {
  children.push_back(std::move(child));
  return children.back();
}

bool ReportNode::has_failure() const {
  if (verdict == Verdict::Fail) return true;
  for (const auto& c : children)
    if (c.has_failure()) return true;
  return false;
}

std::vector<const ReportNode*> ReportNode::collect(Verdict v) const {
  std::vector<const ReportNode*> out;
  if (verdict == v) out.push_back(this);
  for (const auto& c : children) {
    auto sub = c.collect(v);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

Json ReportNode::to_json() const {
  Json j;
  j["label"] = label;
  if (!tag.empty()) j["tag"] = tag;
  j["verdict"] = to_string(verdict);
  if (!detail.empty()) j["detail"] = detail;
  if (!children.empty()) {
    j["children"] = Json::array();
    for (const auto& c : children) j["children"].push_back(c.to_json());
  }
  return j;
}

std::string ReportNode::render(int indent) const {
  std::ostringstream os;
  os << std::string(static_cast<std::size_t>(indent) * 2, ' ') << "[" << to_string(verdict) << "] " << label;
  if (!tag.empty()) os << " (" << tag << ")";
  if (!detail.empty()) os << ": " << detail;
  os << "\n";
  for (const auto& c : children) os << c.render(indent + 1);
  return os.str();
}

namespace {

ReportNode make(Verdict v, std::string label, std::string detail, std::string tag) {
  ReportNode n;
  n.label = std::move(label);
  n.detail = std::move(detail);
  n.tag = std::move(tag);
  n.verdict = v;
  return n;
}

}  // namespace

ReportNode pass_node(std::string label, std::string detail, std::string tag) {
  return make(Verdict::Pass, std::move(label), std::move(detail), std::move(tag));
}
ReportNode fail_node(std::string label, std::string detail, std::string tag) {
  return make(Verdict::Fail, std::move(label), std::move(detail), std::move(tag));
}
ReportNode assumed_node(std::string label, std::string detail, std::string tag) {
  return make(Verdict::Assumed, std::move(label), std::move(detail), std::move(tag));
}
ReportNode info_node(std::string label, std::string detail, std::string tag) {
  return make(Verdict::Info, std::move(label), std::move(detail), std::move(tag));
}
ReportNode check_node(bool ok, std::string label, std::string detail, std::string tag) {
  return make(ok ? Verdict::Pass : Verdict::Fail, std::move(label), std::move(detail), std::move(tag));
}

}  // namespace ramcalc
