#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace noiselab {

// Raised for malformed input bytes or text (image files, config files).
// Exit-code mapping in the CLI: parse_error -> 2, invalid_argument -> 3.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
    parse_error(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    // 0 when the error is not tied to a line.
    int line() const noexcept { return line_; }

private:
    int line_ = 0;
};

// Rounds half away from zero, the convention used for every gray-level
// quantization in this library. std::round already implements it.
inline double round_half_away(double x) noexcept { return std::round(x); }

inline std::uint8_t clamp_u8(double x) noexcept {
    double r = round_half_away(x);
    if (r <= 0.0) return 0;
    if (r >= 255.0) return 255;
    return static_cast<std::uint8_t>(r);
}

// FNV-1a over a byte string, used to derive stable per-label seeds.
inline std::uint64_t fnv1a64(std::string_view bytes,
                             std::uint64_t state = 0xcbf29ce484222325ULL) noexcept {
    for (unsigned char c : bytes) {
        state ^= c;
        state *= 0x100000001b3ULL;
    }
    return state;
}

// Shortest decimal form that parses back to the same double. Infinity is
// serialized as "inf" per the report contract.
inline std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace noiselab
