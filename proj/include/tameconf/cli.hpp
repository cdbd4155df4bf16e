#pragma once

// Command-line front end. run() never prints; the caller renders the report.
//
// Exit codes: 0 the check passed or a witness was found, 1 definite negative
// (obstructed, not QR, verification failed), 2 search exhausted or status
// unknown, 3 usage error.

#include <string>
#include <vector>

#include "json.hpp"

namespace tameconf {

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitExhausted = 2, kExitUsage = 3 };

struct RunReport {
  std::vector<std::string> command;
  int exit_code = kExitOk;
  std::string outcome;       // "qr", "not-qr", "found", "exhausted", "pass", ...
  std::string reason;        // one-line explanation, may be empty
  nlohmann::json result;     // witness, certificate or failure detail
  std::string text;          // human-readable body
  double elapsed_ms = 0.0;
};

RunReport run(const std::vector<std::string>& args);

/// --json: one JSON document with stable keys; otherwise the text body.
std::string render(const RunReport& report, bool as_json);

/// True when args request JSON output.
bool wants_json(const std::vector<std::string>& args);

}  // namespace tameconf
