#pragma once

#include <iosfwd>
#include <string>

#include "bidisk/experiments.hpp"

namespace bidisk::cli {

// "4,4;6,6;8,8" -> {{4,4},{6,6},{8,8}}; throws std::invalid_argument.
Schedule parse_schedule(const std::string& text);

// A path to a Θ JSON file when one exists, otherwise a builtin name.
// With require_inner the input must pass verify_inner_exact.
RationalInnerMatrix load_theta(const std::string& source, bool require_inner = true);

// Exit codes: 0 success, 1 internal error, 2 validation failure.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bidisk::cli
