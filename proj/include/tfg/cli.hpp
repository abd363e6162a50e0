#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace tfg::cli {

/// Runs one CLI invocation. Exit codes: 0 success/true, 1 false/NOT-MET,
/// 2 usage or parse error, 3 computational refusal (caps, unsupported).
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace tfg::cli
