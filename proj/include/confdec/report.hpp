#pragma once

#include <string>

#include <json.hpp>

#include "confdec/confluence.hpp"

namespace confdec {

inline constexpr const char* kReportSchema = "confdec-report/1";
inline constexpr const char* kToolName = "confdec";
inline constexpr const char* kToolVersion = "0.1.0";

nlohmann::ordered_json trace_json(const ProofNode& node);
nlohmann::ordered_json options_json(const DecideOptions& options);

/// Full report in canonical field order.
nlohmann::ordered_json report_json(const std::string& input, const Verdict& verdict, const DecideOptions& options,
                                   double elapsed_ms);

/// Indented plain-text rendering of a trace.
std::string render_trace(const ProofNode& node);

}  // namespace confdec
