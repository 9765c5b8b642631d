// Shared error types and small numeric helpers.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pstlab {

// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input text; carries the byte offset of the first bad byte.
class parse_error : public error {
public:
    parse_error(const std::string& msg, std::size_t offset)
        : error(msg + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// Numeric invariant violated (projector residual, cluster mismatch, ...).
class integrity_error : public error {
public:
    explicit integrity_error(const std::string& msg) : error(msg) {}
};

// Integer square root; returns -1 if v is not a perfect square.
inline long long exact_isqrt(long long v) {
    if (v < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r * r == v ? r : -1;
}

inline constexpr double pi = 3.14159265358979323846;

}  // namespace pstlab
