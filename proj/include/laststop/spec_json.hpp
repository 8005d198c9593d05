#pragma once

#include <string>

#include "laststop/problem.hpp"

namespace laststop {

// Problem-spec file format (JSON object):
//   {"kind": "weber"|"biased"|"timevarying"|"general", "n": int,
//    "p": float?, "p_prime": float?, "p_seq": [float]?,
//    "plus_seq": [float]?, "minus_seq": [float]?}
// Exactly the fields required by "kind" must be present.

/// Parses and validates a spec from JSON text; throws SpecError.
ProblemSpec parse_spec_json(const std::string& text);

/// Loads and validates a spec file; throws SpecError (including on I/O failure).
ProblemSpec load_spec_file(const std::string& path);

} // namespace laststop
