#pragma once

#include <cstdint>
#include <vector>

#include "qcong/wide_int.hpp"

namespace qcong {

/// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) noexcept;

/// Legendre symbol (a/p) by Euler's criterion. Throws std::invalid_argument
/// unless p is an odd prime.
int legendre(std::int64_t a, std::uint64_t p);

/// Quadratic nonresidues in [1, p-1], ascending.
std::vector<std::uint64_t> qnr_set(std::uint64_t p);

/// 2-adic valuation; v2(0) is reported as `cap`.
unsigned v2(wide_int x, unsigned cap = 127) noexcept;

/// base^e with overflow detection (throws OverflowError).
std::uint64_t checked_pow(std::uint64_t base, unsigned e);
std::uint64_t checked_mul_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add_u64(std::uint64_t a, std::uint64_t b);

bool is_square(std::uint64_t n) noexcept;

}  // namespace qcong
