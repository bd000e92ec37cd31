#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "defectwalk/validation.hpp"

namespace defectwalk::cli {

enum ExitCode : int { success = 0, validation_failure = 1, usage_error = 2 };

/// Test seams. An empty quadruple source means the closed forms.
struct Hooks {
  QuadrupleSource quadruple;
};

/// Runs one invocation; `args` excludes the program name. Normal output goes
/// to `out` (unless --out names a file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace defectwalk::cli
