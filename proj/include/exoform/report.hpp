#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "exoform/dsl.hpp"

namespace exoform {

// One engine invocation: a verb, the object names it applies to, and flags.
// The sampler seed is part of the input, so probable verdicts are
// reproducible; every name may be omitted when the document makes the choice
// unique.
struct RunRequest {
  std::string verb;
  std::vector<std::string> names;
  std::uint64_t seed = ZeroTestOptions{}.seed;
  std::optional<std::string> metric;      // "euclidean" or a named metric
  std::optional<std::string> connection;  // named connection; flat when absent
  std::optional<std::string> on;          // pseudostructure name (closure --on)
  std::vector<double> probe;              // probe point coordinates
  std::optional<int> p, k, n, N;          // classify inputs
  bool chain = false;                     // integrate: run the full chain
};

// Rendered outcome of a run. Both renderings are produced eagerly and are
// byte-stable for identical documents and requests. Engine errors raised by
// the verb are embedded in the report (exit_code 1) rather than thrown;
// usage errors (unknown verb or object name) throw Error(usage).
struct Report {
  std::string command;    // echo of verb + names + flags
  std::string json_text;  // JSON rendering, newline-terminated
  std::string text;       // human-readable rendering
  int exit_code = 0;      // 0 success, 1 engine error
};

Report run(const Document& document, const RunRequest& request);

// The verbs run() dispatches on.
const std::vector<std::string>& known_verbs();

}  // namespace exoform
