#include "confdec/report.hpp"

#include <sstream>

namespace confdec {

using json = nlohmann::ordered_json;

json trace_json(const ProofNode& node) {
  json out;
  out["technique"] = node.technique;
  out["answer"] = to_string(node.answer);
  json rules = json::array();
  for (const Rule& r : node.system.rules()) rules.push_back(r.to_string());
  out["system"] = std::move(rules);
  out["certificate"] = node.certificate;
  json children = json::array();
  for (const ProofNode& c : node.children) children.push_back(trace_json(c));
  out["children"] = std::move(children);
  return out;
}

json options_json(const DecideOptions& options) {
  json out;
  out["method"] = to_string(options.method);
  out["join_depth"] = options.join_depth;
  out["peak_depth"] = options.peak_depth;
  out["seed_size"] = options.seed_size;
  out["coeff_bound"] = options.coeff_bound;
  out["recursion_depth"] = options.recursion_depth;
  json licenses = json::array();
  for (License l : options.licenses) licenses.push_back(to_string(l));
  out["licenses"] = std::move(licenses);
  out["partition"] = options.partition.has_value();
  out["attachment"] = options.attachment.has_value();
  return out;
}

json report_json(const std::string& input, const Verdict& verdict, const DecideOptions& options, double elapsed_ms) {
  json out;
  out["schema"] = kReportSchema;
  out["tool"] = json{{"name", kToolName}, {"version", kToolVersion}};
  out["input"] = input;
  out["verdict"] = to_string(verdict.answer);
  out["options"] = options_json(options);
  out["timings"] = json{{"total_ms", elapsed_ms}};
  out["trace"] = trace_json(verdict.trace);
  return out;
}

namespace {

void render(const ProofNode& node, std::size_t indent, std::ostringstream& out) {
  std::string pad(indent * 2, ' ');
  out << pad << node.technique << ": " << to_string(node.answer);
  const json& c = node.certificate;
  if (c.contains("reason")) out << " (" << c["reason"].get<std::string>() << ")";
  if (c.contains("license") && c["license"].is_object()) {
    out << " [license " << c["license"]["license"].get<std::string>() << "]";
  }
  out << "\n";
  for (const Rule& r : node.system.rules()) out << pad << "  | " << r.to_string() << "\n";
  if (node.witness) {
    const PeakWitness& w = *node.witness;
    out << pad << "  witness: " << w.left.end() << " <-* " << w.seed << " ->* " << w.right.end() << "\n";
  }
  for (const ProofNode& child : node.children) render(child, indent + 1, out);
}

}  // namespace

std::string render_trace(const ProofNode& node) {
  std::ostringstream out;
  render(node, 0, out);
  return out.str();
}

}  // namespace confdec
