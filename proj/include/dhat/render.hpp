#pragma once

#include <string>

#include "dhat/pvlang.hpp"

namespace dhat {

// SVG picture of a 2-process analysis: surviving squares in white, removed
// ones shaded, unsafe vertices amber, deadlocks red, start/finish marked.
// Throws std::invalid_argument unless the program has exactly 2 processes.
std::string render_svg(const AnalysisReport& rep);

}  // namespace dhat
