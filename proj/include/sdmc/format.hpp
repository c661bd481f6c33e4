#pragma once

#include <string>
#include <string_view>

namespace sdmc {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Parses a full token as a double; throws ConfigError on junk.
double parse_double(std::string_view text);

/// Scientific notation with two decimals, e.g. 4.08E-04.
std::string format_sci(double value);

}  // namespace sdmc
