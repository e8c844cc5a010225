#pragma once

// Symbolic series expressions: finite sums of c * q^s * (eta quotient) *
// (theta powers). Used for both sides of dissection identities and for the
// right-hand sides of congruence claims.

#include <cstdint>
#include <string>
#include <vector>

#include "qcong/qseries.hpp"

namespace qcong {

struct ThetaPower {
    ThetaSpec spec;
    std::uint64_t exponent = 1;
};

struct ExprTerm {
    wide_int coeff = 1;
    std::uint64_t shift = 0;
    EtaQuotient eta;
    std::vector<ThetaPower> thetas;
};

class SeriesExpr {
public:
    /// The zero expression.
    SeriesExpr() = default;

    static SeriesExpr term(wide_int coeff, std::uint64_t shift, EtaQuotient eta, std::vector<ThetaPower> thetas = {});
    static SeriesExpr eta(EtaQuotient eta, wide_int coeff = 1, std::uint64_t shift = 0)
    {
        return term(coeff, shift, std::move(eta));
    }
    static SeriesExpr family(const FamilySpec& spec) { return eta(spec.eta()); }

    const std::vector<ExprTerm>& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    SeriesExpr operator+(const SeriesExpr& other) const;
    SeriesExpr operator-(const SeriesExpr& other) const;

    /// e.g. "f2*f8^5/(f4^2*f16^2) - 2*q*f2*f16^2/f8".
    std::string to_string() const;

private:
    std::vector<ExprTerm> terms_;
};

Series evaluate(const SeriesExpr& expr, std::size_t order, CoeffRing ring);

/// Upper bound on |coefficient| of q^n, n < order, for the exact value of expr.
/// Each eta quotient prod f_k^{e_k} is majorized by prod (1/f_k)^{|e_k|} and each
/// theta factor by its absolute-value series; the bound is evaluated in long double
/// with a safety margin for rounding.
long double magnitude_bound(const SeriesExpr& expr, std::size_t order);

}  // namespace qcong
