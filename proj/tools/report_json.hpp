#ifndef CUBAUT_TOOLS_REPORT_JSON_HPP
#define CUBAUT_TOOLS_REPORT_JSON_HPP

#include <string>

#include <nlohmann/json.hpp>

#include "cubaut/verifier.hpp"

namespace cubaut::tools {

struct JsonOptions {
  bool timing = true;
  std::string command;
};

/// Claims in report order; object keys in a fixed order for diffing.
nlohmann::ordered_json to_json(const VerificationReport& r, const JsonOptions& opts = {});

/// One "PASS|FAIL|SKIP id" line per claim and a summary line.
std::string to_text(const VerificationReport& r);

}  // namespace cubaut::tools

#endif  // CUBAUT_TOOLS_REPORT_JSON_HPP
