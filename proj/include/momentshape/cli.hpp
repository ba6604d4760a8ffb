#pragma once

#include <string>
#include <vector>

namespace momentshape {

/// Runs a CLI invocation (args excludes the program name). Returns 0 on
/// success, 1 on validation failure, 2 on usage error.
int dispatch(const std::vector<std::string>& args);

}  // namespace momentshape
