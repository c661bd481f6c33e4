#include "sdmc/format.hpp"

#include <array>
#include <charconv>
#include <cstdio>

#include "sdmc/core.hpp"

namespace sdmc {

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw RuntimeError("could not format double");
    return {buf.data(), end};
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ConfigError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::string format_sci(double value) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.2E", value);
    return buf.data();
}

}  // namespace sdmc
