#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace woi {

enum class Status { Pass, Fail, Skip };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skip: return "skip";
  }
  return "unknown";
}

/// 64-bit FNV-1a, printed as 16 hex digits; used to fingerprint check inputs.
inline std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct CheckRecord {
  std::string id;
  std::string anchor;  // which identity or statement the check exercises
  std::string inputs_digest;
  Status status = Status::Skip;
  double residual = 0.0;
  std::optional<double> runtime;
  nlohmann::json detail = nlohmann::json::object();
};

inline CheckRecord make_check(std::string id, std::string anchor, const std::string& inputs, bool pass,
                              double residual, nlohmann::json detail = nlohmann::json::object()) {
  CheckRecord c;
  c.id = std::move(id);
  c.anchor = std::move(anchor);
  c.inputs_digest = digest(inputs);
  c.status = pass ? Status::Pass : Status::Fail;
  c.residual = residual;
  c.detail = std::move(detail);
  return c;
}

struct VerificationReport {
  std::vector<CheckRecord> checks;

  void add(CheckRecord c) { checks.push_back(std::move(c)); }
  void append(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  std::size_t count(Status s) const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [s](const CheckRecord& c) { return c.status == s; }));
  }
  bool all_pass() const { return count(Status::Fail) == 0; }
  double max_residual() const {
    double m = 0;
    for (const auto& c : checks) m = std::max(m, c.residual);
    return m;
  }
  std::vector<const CheckRecord*> failures() const {
    std::vector<const CheckRecord*> out;
    for (const auto& c : checks)
      if (c.status == Status::Fail) out.push_back(&c);
    return out;
  }
};

inline nlohmann::json to_json(const CheckRecord& c, bool with_runtime) {
  nlohmann::json j;
  j["id"] = c.id;
  j["anchor"] = c.anchor;
  j["inputs_digest"] = c.inputs_digest;
  j["status"] = to_string(c.status);
  j["residual"] = c.residual;
  j["runtime"] = (with_runtime && c.runtime) ? nlohmann::json(*c.runtime) : nlohmann::json(nullptr);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

}  // namespace woi
