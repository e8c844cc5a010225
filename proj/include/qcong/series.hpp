#pragma once

// Dense truncated power series in q over an exact or modular coefficient ring.
//
// A Series of order N stores the coefficients of q^0 .. q^{N-1}. Values are
// immutable once built; every operation returns a new series. Binary
// operations truncate to the smaller input order.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcong/wide_int.hpp"

namespace qcong {

class CoeffRing {
public:
    enum class Kind { Exact, Mod };

    static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 63;

    static CoeffRing exact() noexcept { return CoeffRing{Kind::Exact, 0}; }
    /// Integers modulo m, 2 <= m <= 2^63.
    static CoeffRing mod(std::uint64_t m);

    Kind kind() const noexcept { return kind_; }
    bool is_exact() const noexcept { return kind_ == Kind::Exact; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    bool is_power_of_two() const noexcept { return !is_exact() && (modulus_ & (modulus_ - 1)) == 0; }

    /// Least nonnegative residue of v (identity for the exact ring).
    wide_int reduce(wide_int v) const noexcept;

    std::string to_string() const;

    friend bool operator==(const CoeffRing&, const CoeffRing&) = default;

private:
    CoeffRing(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

    Kind kind_;
    std::uint64_t modulus_;
};

class Series {
public:
    /// The zero series of the given order.
    Series(CoeffRing ring, std::size_t order);

    /// Missing high coefficients are zero-filled and values reduced into the ring.
    static Series make(CoeffRing ring, std::span<const wide_int> coeffs, std::size_t order);
    static Series make(CoeffRing ring, std::initializer_list<wide_int> coeffs, std::size_t order);
    /// Decimal-string coefficients; throws OverflowError for values past 128 bits.
    static Series make(CoeffRing ring, std::span<const std::string> coeffs, std::size_t order);

    static Series one(CoeffRing ring, std::size_t order);
    /// c * q^exponent (zero when exponent >= order).
    static Series monomial(CoeffRing ring, wide_int c, std::size_t exponent, std::size_t order);

    /// Adopt already-reduced storage. Residues must be < modulus.
    static Series from_exact(std::vector<wide_int> coeffs);
    static Series from_residues(CoeffRing ring, std::vector<std::uint64_t> residues);

    const CoeffRing& ring() const noexcept { return ring_; }
    std::size_t order() const noexcept { return order_; }

    /// Coefficient of q^n; for Mod rings the least nonnegative residue.
    wide_int coeff(std::size_t n) const;
    wide_int operator[](std::size_t n) const { return coeff(n); }

    std::size_t nonzero_count() const noexcept;
    bool is_zero() const noexcept { return nonzero_count() == 0; }

    std::span<const wide_int> exact_coeffs() const noexcept { return exact_; }
    std::span<const std::uint64_t> residues() const noexcept { return residues_; }

    std::string to_string(std::size_t max_terms = 12) const;

private:
    CoeffRing ring_;
    std::size_t order_;
    std::vector<wide_int> exact_;
    std::vector<std::uint64_t> residues_;
};

Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series negate(const Series& a);
Series scale(const Series& a, wide_int c);
/// q^s * a. The result order grows by s.
Series shift(const Series& a, std::size_t s);
Series truncate(const Series& a, std::size_t order);

/// Cauchy product truncated to min(a.order, b.order). Zero coefficients of the
/// sparser operand are skipped, so products with eta factors cost O(N * nnz).
Series mul(const Series& a, const Series& b);
/// Reference schoolbook product with no sparsity shortcuts. Exposed for
/// benchmarking and for cross-checking faster multiplication kernels.
Series mul_schoolbook(const Series& a, const Series& b);

/// Binary exponentiation; pow(a, 0) is the constant one of a's order.
Series pow(const Series& a, std::uint64_t e);

/// Constant term must be a unit (odd for Mod(2^k), +-1 for Exact).
Series invert(const Series& a);
/// a / b by forward substitution; b's constant term must be a unit.
Series divide(const Series& a, const Series& b);

/// a(q^m). The result order is a.order * m, capped at max_order when given.
Series substitute_power(const Series& a, std::uint64_t m, std::optional<std::size_t> max_order = {});

/// Move into Mod(m). From Mod(M) this requires m | M.
Series reduce_mod(const Series& a, std::uint64_t m);

/// True iff coefficients of q^0 .. q^{upto-1} agree.
bool eq_upto(const Series& a, const Series& b, std::size_t upto);

/// First index below `upto` where a and b differ.
std::optional<std::size_t> first_difference(const Series& a, const Series& b, std::size_t upto);

inline Series operator+(const Series& a, const Series& b) { return add(a, b); }
inline Series operator-(const Series& a, const Series& b) { return sub(a, b); }
inline Series operator-(const Series& a) { return negate(a); }
inline Series operator*(const Series& a, const Series& b) { return mul(a, b); }

}  // namespace qcong
