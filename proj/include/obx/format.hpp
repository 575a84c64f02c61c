#pragma once

#include <charconv>
#include <string>

namespace obx {

/// Shortest decimal string that round-trips to the same double.
/// Locale-independent, so file output is byte-stable across runs.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

}  // namespace obx
