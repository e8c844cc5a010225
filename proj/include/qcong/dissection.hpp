#pragma once

// Arithmetic-progression extraction and a catalog of dissection identities
// checked numerically to a given order.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcong/expr.hpp"
#include "qcong/report.hpp"

namespace qcong {

/// Progression a*n + b with 0 <= b < a.
struct APSpec {
    APSpec(std::uint64_t step, std::uint64_t offset);

    std::uint64_t a;
    std::uint64_t b;
};

/// Coefficient n of the result is coefficient a*n + b of s.
/// Result order is ceil((s.order - b) / a), or 0 when b >= s.order.
Series extract_ap(const Series& s, APSpec ap);

/// Same as extract_ap but the offset may exceed the step.
Series extract_progression(const Series& s, std::uint64_t step, std::uint64_t offset);

class IdentityId {
public:
    enum class Kind {
        Phi2Dissect,
        DisF1Sq,
        DisInvF1Sq,
        DisF1_4,
        DisInvF1_4,
        DisF1F2,
        DisF1Cubed,
        Hs1Product,
        BinomialPL,
    };

    /// For every kind except BinomialPL.
    IdentityId(Kind kind);
    /// f_k^{p^l} == f_{pk}^{p^{l-1}} (mod p^l).
    static IdentityId binomial_pl(std::uint64_t k, std::uint64_t p, unsigned l);

    /// "PHI_2DISSECT", "DIS_F1SQ", ..., "BINOMIAL_PL(k=1,p=2,l=3)".
    static IdentityId parse(std::string_view name);

    Kind kind() const noexcept { return kind_; }
    std::uint64_t k() const noexcept { return k_; }
    std::uint64_t p() const noexcept { return p_; }
    unsigned l() const noexcept { return l_; }

    std::string to_string() const;

    friend bool operator==(const IdentityId&, const IdentityId&) = default;

private:
    Kind kind_;
    std::uint64_t k_ = 0;
    std::uint64_t p_ = 0;
    unsigned l_ = 0;
};

struct IdentitySides {
    SeriesExpr lhs;
    SeriesExpr rhs;
    /// 0 for an exact identity, p^l for the binomial congruences.
    std::uint64_t modulus = 0;
};

/// The product side of HS1_PRODUCT keeps the factors phi(q^{2^i}) with 2^i < order.
IdentitySides identity_sides(const IdentityId& id, std::size_t order);

/// All eight named identities followed by the binomial instances
/// (p=2, l=1..3 and p=3, l=1..2, each for k=1,2).
std::vector<IdentityId> identity_catalog();

/// Primes just below 2^62 used for multi-modular certification.
std::span<const std::uint64_t> certification_primes() noexcept;

/// Checks lhs == rhs through q^{order-1}. Exact identities run in the exact
/// ring; if that overflows they are certified by comparing residues modulo
/// enough large primes that the product exceeds the coefficient bound.
VerificationReport verify_expr_identity(const std::string& label, const SeriesExpr& lhs, const SeriesExpr& rhs,
                                        std::uint64_t modulus, std::size_t order);

VerificationReport verify_identity(const IdentityId& id, std::size_t order);

/// The k excluded from the f_1 p-dissection sum: (p-1)/6 if p = 1 (mod 6),
/// (-p-1)/6 if p = 5 (mod 6).
std::int64_t pdissect_f1_excluded_k(std::uint64_t p);

/// Right side of the p-dissection of f_1 (p prime, p > 3).
SeriesExpr pdissect_f1_rhs(std::uint64_t p);

/// True iff (3k^2+k)/2 != (p^2-1)/24 (mod p) for every admissible k.
bool pdissect_f1_side_condition(std::uint64_t p);

/// Right side of the p-dissection of f_1^3 (p odd prime), exact ring.
Series pdissect_f1cubed_rhs(std::uint64_t p, std::size_t order);

/// True iff (k^2+k)/2 != (p^2-1)/8 (mod p) for 0 <= k <= p-1, k != (p-1)/2.
bool pdissect_f1cubed_side_condition(std::uint64_t p);

VerificationReport pdissect_f1_check(std::uint64_t p, std::size_t order);
VerificationReport pdissect_f1cubed_check(std::uint64_t p, std::size_t order);

/// True iff C(2^m, n) 2^n == 0 (mod 2^{m+1}) for 1 <= n <= 2^m. Supports m <= 20.
bool binom_2power_check(unsigned m);

}  // namespace qcong
