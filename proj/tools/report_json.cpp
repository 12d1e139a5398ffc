#include "report_json.hpp"

#include <sstream>

namespace cubaut::tools {

nlohmann::ordered_json to_json(const VerificationReport& r, const JsonOptions& opts) {
  using J = nlohmann::ordered_json;
  J out;
  out["format"] = "cubaut-report/1";
  if (!opts.command.empty()) out["command"] = opts.command;
  out["summary"] = {{"claims", r.claims.size()},
                    {"pass", r.count(ClaimStatus::Pass)},
                    {"fail", r.count(ClaimStatus::Fail)},
                    {"skipped", r.count(ClaimStatus::Skipped)}};
  J claims = J::array();
  for (const auto& c : r.claims) {
    J j;
    j["id"] = c.id;
    j["status"] = to_string(c.status);
    j["citation"] = c.citation;
    J w = J::object();
    for (const auto& [k, v] : c.witness) {
      // Repeated keys collect into an array.
      if (!w.contains(k)) {
        w[k] = v;
      } else {
        if (!w[k].is_array()) w[k] = J::array({w[k]});
        w[k].push_back(v);
      }
    }
    j["witness"] = std::move(w);
    if (!c.reason.empty()) j["reason"] = c.reason;
    if (opts.timing) j["seconds"] = c.seconds;
    claims.push_back(std::move(j));
  }
  out["claims"] = std::move(claims);
  return out;
}

std::string to_text(const VerificationReport& r) {
  std::ostringstream os;
  for (const auto& c : r.claims) {
    os << (c.status == ClaimStatus::Pass ? "PASS" : c.status == ClaimStatus::Fail ? "FAIL" : "SKIP") << "  " << c.id;
    if (c.status == ClaimStatus::Skipped && !c.reason.empty()) os << "  (" << c.reason << ")";
    if (c.status == ClaimStatus::Fail)
      for (const auto& [k, v] : c.witness) os << "\n        " << k << ": " << v;
    os << '\n';
  }
  os << r.claims.size() << " claims: " << r.count(ClaimStatus::Pass) << " pass, " << r.count(ClaimStatus::Fail)
     << " fail, " << r.count(ClaimStatus::Skipped) << " skipped\n";
  return os.str();
}

}  // namespace cubaut::tools
