#pragma once

#include <string>

namespace graphtrack {

/// Shortest decimal string that parses back to exactly the same double
/// (std::to_chars shortest form). Infinities and NaN come out as
/// "inf"/"-inf"/"nan".
std::string format_double(double value);

}  // namespace graphtrack
