#include "qcong/expr.hpp"

#include <algorithm>
#include <cmath>

namespace qcong {

SeriesExpr SeriesExpr::term(wide_int coeff, std::uint64_t shift, EtaQuotient eta, std::vector<ThetaPower> thetas)
{
    SeriesExpr e;
    if (coeff != 0) {
        e.terms_.push_back(ExprTerm{coeff, shift, std::move(eta), std::move(thetas)});
    }
    return e;
}

SeriesExpr SeriesExpr::operator+(const SeriesExpr& other) const
{
    SeriesExpr r = *this;
    r.terms_.insert(r.terms_.end(), other.terms_.begin(), other.terms_.end());
    return r;
}

SeriesExpr SeriesExpr::operator-(const SeriesExpr& other) const
{
    SeriesExpr r = *this;
    for (auto t : other.terms_) {
        t.coeff = checked_mul(t.coeff, -1);
        r.terms_.push_back(std::move(t));
    }
    return r;
}

std::string SeriesExpr::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    bool first = true;
    for (const auto& t : terms_) {
        const wide_int mag = t.coeff < 0 ? -t.coeff : t.coeff;
        if (first) {
            s += t.coeff < 0 ? "-" : "";
        } else {
            s += t.coeff < 0 ? " - " : " + ";
        }
        first = false;
        std::string body;
        auto append = [&body](const std::string& piece) {
            if (!body.empty()) {
                body += "*";
            }
            body += piece;
        };
        if (mag != 1) {
            append(qcong::to_string(mag));
        }
        if (t.shift == 1) {
            append("q");
        } else if (t.shift > 1) {
            append("q^" + std::to_string(t.shift));
        }
        for (const auto& th : t.thetas) {
            append(th.exponent == 1 ? th.spec.to_string() : th.spec.to_string() + "^" + std::to_string(th.exponent));
        }
        if (!t.eta.is_one() || body.empty()) {
            append(t.eta.to_string());
        }
        s += body;
    }
    return s;
}

Series evaluate(const SeriesExpr& expr, std::size_t order, CoeffRing ring)
{
    Series acc(ring, order);
    for (const auto& t : expr.terms()) {
        if (t.shift >= order) {
            continue;
        }
        const std::size_t inner = order - t.shift;
        Series body = eta_quotient(t.eta, inner, ring);
        for (const auto& th : t.thetas) {
            body = mul(body, pow(theta_f(th.spec, inner, ring), th.exponent));
        }
        acc = add(acc, shift(scale(body, t.coeff), t.shift));
    }
    return acc;
}

namespace {

using Dense = std::vector<long double>;

Dense mul_dense(const Dense& a, const Dense& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    Dense r(n, 0.0L);
    for (std::size_t j = 0; j < n; ++j) {
        if (b[j] == 0.0L) {
            continue;
        }
        for (std::size_t i = 0; i + j < n; ++i) {
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

Dense pow_dense(Dense base, std::uint64_t e, std::size_t n)
{
    Dense r(n, 0.0L);
    if (n > 0) {
        r[0] = 1.0L;
    }
    while (e > 0) {
        if (e & 1) {
            r = mul_dense(r, base);
        }
        e >>= 1;
        if (e > 0) {
            base = mul_dense(base, base);
        }
    }
    return r;
}

// Coefficientwise majorant of prod f_k^{e_k}: since |coeffs of f_k| are
// dominated by those of 1/f_k, use prod (1/f_k)^{|e_k|}. Built as exp of
// its logarithm sum |e_k| sigma(m)/m q^{km}, whose terms are all positive.
Dense eta_majorant(const EtaQuotient& eta, std::size_t n)
{
    Dense sigma(n, 0.0L);
    for (std::size_t d = 1; d < n; ++d) {
        for (std::size_t m = d; m < n; m += d) {
            sigma[m] += static_cast<long double>(d);
        }
    }
    // jl[j] = j * (coefficient of q^j in the logarithm).
    Dense jl(n, 0.0L);
    for (const auto& [k, e] : eta.factors()) {
        const long double w = static_cast<long double>(e < 0 ? -e : e) * static_cast<long double>(k);
        for (std::size_t m = 1; k * m < n; ++m) {
            jl[k * m] += w * sigma[m];
        }
    }
    Dense b(n, 0.0L);
    if (n == 0) {
        return b;
    }
    b[0] = 1.0L;
    for (std::size_t i = 1; i < n; ++i) {
        long double s = 0.0L;
        for (std::size_t j = 1; j <= i; ++j) {
            if (jl[j] != 0.0L) {
                s += jl[j] * b[i - j];
            }
        }
        b[i] = s / static_cast<long double>(i);
    }
    return b;
}

Dense abs_theta(const ThetaSpec& spec, std::size_t n)
{
    const Series s = theta_f(ThetaSpec(1, spec.exp_a(), 1, spec.exp_b()), n, CoeffRing::exact());
    Dense d(n);
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = static_cast<long double>(s.coeff(i));
    }
    return d;
}

}  // namespace

long double magnitude_bound(const SeriesExpr& expr, std::size_t order)
{
    long double bound = 0.0L;
    for (const auto& t : expr.terms()) {
        if (t.shift >= order) {
            continue;
        }
        const std::size_t n = order - t.shift;
        Dense body = eta_majorant(t.eta, n);
        for (const auto& th : t.thetas) {
            body = mul_dense(body, pow_dense(abs_theta(th.spec, n), th.exponent, n));
        }
        const long double peak = body.empty() ? 0.0L : *std::max_element(body.begin(), body.end());
        const long double c = static_cast<long double>(t.coeff < 0 ? -t.coeff : t.coeff);
        bound += c * peak;
    }
    // Relative rounding error of the long double evaluation is far below 1%.
    return bound * 1.01L + 1.0L;
}

}  // namespace qcong
