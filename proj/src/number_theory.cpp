#include "qcong/number_theory.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qcong/report.hpp"

namespace qcong {

std::string_view to_string(Status s) noexcept
{
    switch (s) {
    case Status::Pass:
        return "pass";
    case Status::Fail:
        return "fail";
    case Status::Skipped:
        return "skipped";
    }
    return "unknown";
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) noexcept
{
    if (m == 1) {
        return 0;
    }
    wide_uint result = 1;
    wide_uint b = base % m;
    while (e > 0) {
        if (e & 1) {
            result = result * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) {
            return n == p;
        }
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These bases are a deterministic witness set for all n < 2^64.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = static_cast<std::uint64_t>(static_cast<wide_uint>(x) * x % n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) {
            return false;
        }
    }
    return true;
}

int legendre(std::int64_t a, std::uint64_t p)
{
    if (p == 2 || !is_prime(p)) {
        throw std::invalid_argument("legendre: " + std::to_string(p) + " is not an odd prime");
    }
    const auto pm = static_cast<wide_int>(p);
    wide_int r = static_cast<wide_int>(a) % pm;
    if (r < 0) {
        r += pm;
    }
    if (r == 0) {
        return 0;
    }
    const std::uint64_t e = pow_mod(static_cast<std::uint64_t>(r), (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

std::vector<std::uint64_t> qnr_set(std::uint64_t p)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t r = 1; r < p; ++r) {
        if (legendre(static_cast<std::int64_t>(r), p) == -1) {
            out.push_back(r);
        }
    }
    return out;
}

unsigned v2(wide_int x, unsigned cap) noexcept
{
    if (x == 0) {
        return cap;
    }
    unsigned e = 0;
    while ((x & 1) == 0 && e < cap) {
        x >>= 1;
        ++e;
    }
    return e;
}

std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) {
        throw OverflowError("64-bit overflow in progression arithmetic");
    }
    return r;
}

std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) {
        throw OverflowError("64-bit overflow in progression arithmetic");
    }
    return r;
}

std::uint64_t checked_pow(std::uint64_t base, unsigned e)
{
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        r = checked_mul_u64(r, base);
    }
    return r;
}

bool is_square(std::uint64_t n) noexcept
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r * r > n) {
        --r;
    }
    while ((r + 1) * (r + 1) <= n) {
        ++r;
    }
    return r * r == n;
}

}  // namespace qcong
