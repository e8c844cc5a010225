#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcong {

// 128-bit signed coefficients for the exact ring.
__extension__ typedef __int128 wide_int;
__extension__ typedef unsigned __int128 wide_uint;

inline constexpr wide_int kWideMax = static_cast<wide_int>(~static_cast<wide_uint>(0) >> 1);
inline constexpr wide_int kWideMin = -kWideMax - 1;

/// Raised when exact (wide-integer) arithmetic would exceed 128 bits.
class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Raised when a binary operation receives series over different rings.
class RingMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when inversion needs a constant term that is not a unit.
class NonUnitError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline wide_int checked_add(wide_int a, wide_int b)
{
    wide_int r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("exact coefficient overflow in addition");
    }
    return r;
}

inline wide_int checked_sub(wide_int a, wide_int b)
{
    wide_int r;
    if (__builtin_sub_overflow(a, b, &r)) {
        throw OverflowError("exact coefficient overflow in subtraction");
    }
    return r;
}

inline wide_int checked_mul(wide_int a, wide_int b)
{
    wide_int r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("exact coefficient overflow in multiplication");
    }
    return r;
}

std::string to_string(wide_int v);

/// Parses an optionally signed decimal integer; throws OverflowError past 128 bits
/// and std::invalid_argument on malformed text.
wide_int parse_wide_int(std::string_view text);

/// Narrowing to int64 when the value fits.
std::optional<std::int64_t> to_int64(wide_int v);

}  // namespace qcong
