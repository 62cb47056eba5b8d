#pragma once

#include <string>

#include "teamlogic/syntax.hpp"

namespace teamlogic {

enum class PrintStyle { Ascii, Unicode };

// ASCII output parses back to a structurally equal formula (given the same
// vocabulary). Unicode output is for display only.
std::string print(const Formula& formula, PrintStyle style = PrintStyle::Ascii);
std::string print(const Term& term);

}  // namespace teamlogic
