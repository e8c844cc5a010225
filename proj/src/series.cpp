#include "qcong/series.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace qcong {

std::string to_string(wide_int v)
{
    if (v == 0) {
        return "0";
    }
    const bool negative = v < 0;
    wide_uint mag = negative ? static_cast<wide_uint>(-(v + 1)) + 1 : static_cast<wide_uint>(v);
    std::string digits;
    while (mag != 0) {
        digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
        mag /= 10;
    }
    if (negative) {
        digits.push_back('-');
    }
    std::reverse(digits.begin(), digits.end());
    return digits;
}

wide_int parse_wide_int(std::string_view text)
{
    if (text.empty()) {
        throw std::invalid_argument("empty integer literal");
    }
    bool negative = false;
    std::size_t pos = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        pos = 1;
    }
    if (pos == text.size()) {
        throw std::invalid_argument("malformed integer literal: " + std::string(text));
    }
    // Accumulate as a negative number so that kWideMin parses.
    wide_int acc = 0;
    for (; pos < text.size(); ++pos) {
        const char c = text[pos];
        if (c < '0' || c > '9') {
            throw std::invalid_argument("malformed integer literal: " + std::string(text));
        }
        acc = checked_sub(checked_mul(acc, 10), c - '0');
    }
    return negative ? acc : checked_mul(acc, -1);
}

std::optional<std::int64_t> to_int64(wide_int v)
{
    if (v < INT64_MIN || v > INT64_MAX) {
        return std::nullopt;
    }
    return static_cast<std::int64_t>(v);
}

// ---------------------------------------------------------------------------
// CoeffRing

CoeffRing CoeffRing::mod(std::uint64_t m)
{
    if (m < 2 || m > kMaxModulus) {
        throw std::invalid_argument("modulus must satisfy 2 <= m <= 2^63, got " + std::to_string(m));
    }
    return CoeffRing{Kind::Mod, m};
}

wide_int CoeffRing::reduce(wide_int v) const noexcept
{
    if (is_exact()) {
        return v;
    }
    const auto m = static_cast<wide_int>(modulus_);
    wide_int r = v % m;
    return r < 0 ? r + m : r;
}

std::string CoeffRing::to_string() const
{
    return is_exact() ? std::string("Exact") : "Mod(" + std::to_string(modulus_) + ")";
}

// ---------------------------------------------------------------------------
// Series construction

Series::Series(CoeffRing ring, std::size_t order) : ring_(ring), order_(order)
{
    if (ring_.is_exact()) {
        exact_.assign(order, 0);
    } else {
        residues_.assign(order, 0);
    }
}

Series Series::make(CoeffRing ring, std::span<const wide_int> coeffs, std::size_t order)
{
    if (coeffs.size() > order) {
        throw std::invalid_argument("more coefficients than the series order");
    }
    Series s(ring, order);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (ring.is_exact()) {
            s.exact_[i] = coeffs[i];
        } else {
            s.residues_[i] = static_cast<std::uint64_t>(ring.reduce(coeffs[i]));
        }
    }
    return s;
}

Series Series::make(CoeffRing ring, std::initializer_list<wide_int> coeffs, std::size_t order)
{
    return make(ring, std::span<const wide_int>(coeffs.begin(), coeffs.size()), order);
}

Series Series::make(CoeffRing ring, std::span<const std::string> coeffs, std::size_t order)
{
    std::vector<wide_int> values;
    values.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        values.push_back(parse_wide_int(c));
    }
    return make(ring, values, order);
}

Series Series::one(CoeffRing ring, std::size_t order)
{
    return monomial(ring, 1, 0, order);
}

Series Series::monomial(CoeffRing ring, wide_int c, std::size_t exponent, std::size_t order)
{
    Series s(ring, order);
    if (exponent < order) {
        if (ring.is_exact()) {
            s.exact_[exponent] = c;
        } else {
            s.residues_[exponent] = static_cast<std::uint64_t>(ring.reduce(c));
        }
    }
    return s;
}

Series Series::from_exact(std::vector<wide_int> coeffs)
{
    Series s(CoeffRing::exact(), 0);
    s.order_ = coeffs.size();
    s.exact_ = std::move(coeffs);
    return s;
}

Series Series::from_residues(CoeffRing ring, std::vector<std::uint64_t> residues)
{
    if (ring.is_exact()) {
        throw std::invalid_argument("from_residues needs a modular ring");
    }
    for (auto r : residues) {
        if (r >= ring.modulus()) {
            throw std::invalid_argument("residue out of range for " + ring.to_string());
        }
    }
    Series s(ring, 0);
    s.order_ = residues.size();
    s.residues_ = std::move(residues);
    return s;
}

wide_int Series::coeff(std::size_t n) const
{
    if (n >= order_) {
        throw std::out_of_range("coefficient index " + std::to_string(n) + " beyond order " +
                                std::to_string(order_));
    }
    return ring_.is_exact() ? exact_[n] : static_cast<wide_int>(residues_[n]);
}

std::size_t Series::nonzero_count() const noexcept
{
    if (ring_.is_exact()) {
        return static_cast<std::size_t>(std::count_if(exact_.begin(), exact_.end(), [](wide_int v) { return v != 0; }));
    }
    return static_cast<std::size_t>(
        std::count_if(residues_.begin(), residues_.end(), [](std::uint64_t v) { return v != 0; }));
}

std::string Series::to_string(std::size_t max_terms) const
{
    std::ostringstream os;
    std::size_t shown = 0;
    for (std::size_t n = 0; n < order_ && shown < max_terms; ++n) {
        const wide_int c = coeff(n);
        if (c == 0) {
            continue;
        }
        if (shown > 0) {
            os << (c < 0 ? " - " : " + ");
        } else if (c < 0) {
            os << "-";
        }
        const wide_int mag = c < 0 ? -c : c;
        if (n == 0) {
            os << qcong::to_string(mag);
        } else {
            if (mag != 1) {
                os << qcong::to_string(mag) << "*";
            }
            os << "q";
            if (n > 1) {
                os << "^" << n;
            }
        }
        ++shown;
    }
    if (shown == 0) {
        os << "0";
    }
    os << " + O(q^" << order_ << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Modular kernels

namespace {

// Arithmetic mod 2^k: wrap in 64 bits and mask at the end. Valid because
// 2^k divides 2^64, so reduction commutes with every ring operation.
struct Pow2Arith {
    std::uint64_t mask;
    std::uint64_t madd(std::uint64_t acc, std::uint64_t x, std::uint64_t y) const noexcept { return acc + x * y; }
    std::uint64_t mulr(std::uint64_t x, std::uint64_t y) const noexcept { return x * y; }
    std::uint64_t subr(std::uint64_t a, std::uint64_t b) const noexcept { return a - b; }
    std::uint64_t fin(std::uint64_t v) const noexcept { return v & mask; }
};

// Moduli below 2^32: products fit a machine word.
struct SmallArith {
    std::uint64_t m;
    std::uint64_t madd(std::uint64_t acc, std::uint64_t x, std::uint64_t y) const noexcept
    {
        const std::uint64_t s = acc + (x * y) % m;
        return s >= m ? s - m : s;
    }
    std::uint64_t mulr(std::uint64_t x, std::uint64_t y) const noexcept { return (x * y) % m; }
    std::uint64_t subr(std::uint64_t a, std::uint64_t b) const noexcept { return a >= b ? a - b : a + (m - b); }
    std::uint64_t fin(std::uint64_t v) const noexcept { return v; }
};

struct BigArith {
    std::uint64_t m;
    std::uint64_t madd(std::uint64_t acc, std::uint64_t x, std::uint64_t y) const noexcept
    {
        return static_cast<std::uint64_t>((static_cast<wide_uint>(x) * y + acc) % m);
    }
    std::uint64_t mulr(std::uint64_t x, std::uint64_t y) const noexcept
    {
        return static_cast<std::uint64_t>((static_cast<wide_uint>(x) * y) % m);
    }
    std::uint64_t subr(std::uint64_t a, std::uint64_t b) const noexcept { return a >= b ? a - b : a + (m - b); }
    std::uint64_t fin(std::uint64_t v) const noexcept { return v; }
};

template <class F>
decltype(auto) with_arith(const CoeffRing& ring, F&& f)
{
    const std::uint64_t m = ring.modulus();
    if (ring.is_power_of_two()) {
        return f(Pow2Arith{m - 1});
    }
    if (m <= (std::uint64_t{1} << 32)) {
        return f(SmallArith{m});
    }
    return f(BigArith{m});
}

void require_same_ring(const Series& a, const Series& b, const char* op)
{
    if (!(a.ring() == b.ring())) {
        throw RingMismatch(std::string(op) + ": ring mismatch " + a.ring().to_string() + " vs " +
                           b.ring().to_string());
    }
}

template <class T>
std::size_t nonzeros(std::span<const T> v, std::size_t upto)
{
    return static_cast<std::size_t>(std::count_if(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(upto),
                                                  [](const T& x) { return x != 0; }));
}

template <class Arith>
std::vector<std::uint64_t> mul_residues(const Arith& ar, std::span<const std::uint64_t> a,
                                        std::span<const std::uint64_t> b, std::size_t n, bool skip_zeros)
{
    std::span<const std::uint64_t> outer = a;
    std::span<const std::uint64_t> inner = b;
    if (skip_zeros && nonzeros(b, n) < nonzeros(a, n)) {
        std::swap(outer, inner);
    }
    std::vector<std::uint64_t> r(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        const std::uint64_t y = outer[j];
        if (skip_zeros && y == 0) {
            continue;
        }
        std::uint64_t* dst = r.data() + j;
        const std::size_t len = n - j;
        for (std::size_t i = 0; i < len; ++i) {
            dst[i] = ar.madd(dst[i], inner[i], y);
        }
    }
    for (auto& v : r) {
        v = ar.fin(v);
    }
    return r;
}

std::vector<wide_int> mul_exact(std::span<const wide_int> a, std::span<const wide_int> b, std::size_t n,
                                bool skip_zeros)
{
    std::span<const wide_int> outer = a;
    std::span<const wide_int> inner = b;
    if (skip_zeros && nonzeros(b, n) < nonzeros(a, n)) {
        std::swap(outer, inner);
    }
    std::vector<wide_int> r(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        const wide_int y = outer[j];
        if (skip_zeros && y == 0) {
            continue;
        }
        for (std::size_t i = 0; i + j < n; ++i) {
            r[i + j] = checked_add(r[i + j], checked_mul(inner[i], y));
        }
    }
    return r;
}

// Inverse of c modulo m by the extended Euclidean algorithm.
std::optional<std::uint64_t> inverse_mod(std::uint64_t c, std::uint64_t m)
{
    wide_int old_r = static_cast<wide_int>(c % m);
    wide_int r = static_cast<wide_int>(m);
    wide_int old_s = 1;
    wide_int s = 0;
    while (r != 0) {
        const wide_int qt = old_r / r;
        const wide_int tr = old_r - qt * r;
        old_r = r;
        r = tr;
        const wide_int ts = old_s - qt * s;
        old_s = s;
        s = ts;
    }
    if (old_r != 1) {
        return std::nullopt;
    }
    wide_int inv = old_s % static_cast<wide_int>(m);
    if (inv < 0) {
        inv += static_cast<wide_int>(m);
    }
    return static_cast<std::uint64_t>(inv);
}

template <class Arith>
std::vector<std::uint64_t> divide_residues(const Arith& ar, std::span<const std::uint64_t> a,
                                           std::span<const std::uint64_t> b, std::size_t n, std::uint64_t inv)
{
    std::vector<std::size_t> support;
    for (std::size_t j = 1; j < n; ++j) {
        if (b[j] != 0) {
            support.push_back(j);
        }
    }
    std::vector<std::uint64_t> c(n, 0);
    for (std::size_t k = 0; k < n; ++k) {
        std::uint64_t acc = 0;
        for (const std::size_t j : support) {
            if (j > k) {
                break;
            }
            acc = ar.madd(acc, b[j], c[k - j]);
        }
        c[k] = ar.fin(ar.mulr(ar.subr(a[k], ar.fin(acc)), inv));
    }
    return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Operations

Series add(const Series& a, const Series& b)
{
    require_same_ring(a, b, "add");
    const std::size_t n = std::min(a.order(), b.order());
    if (a.ring().is_exact()) {
        std::vector<wide_int> r(n);
        for (std::size_t i = 0; i < n; ++i) {
            r[i] = checked_add(a.exact_coeffs()[i], b.exact_coeffs()[i]);
        }
        return Series::from_exact(std::move(r));
    }
    const std::uint64_t m = a.ring().modulus();
    std::vector<std::uint64_t> r(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t s = a.residues()[i] + b.residues()[i];
        r[i] = s >= m ? s - m : s;
    }
    return Series::from_residues(a.ring(), std::move(r));
}

Series negate(const Series& a)
{
    if (a.ring().is_exact()) {
        std::vector<wide_int> r(a.order());
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = checked_mul(a.exact_coeffs()[i], -1);
        }
        return Series::from_exact(std::move(r));
    }
    const std::uint64_t m = a.ring().modulus();
    std::vector<std::uint64_t> r(a.order());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const std::uint64_t v = a.residues()[i];
        r[i] = v == 0 ? 0 : m - v;
    }
    return Series::from_residues(a.ring(), std::move(r));
}

Series sub(const Series& a, const Series& b)
{
    require_same_ring(a, b, "sub");
    return add(a, negate(b));
}

Series scale(const Series& a, wide_int c)
{
    if (a.ring().is_exact()) {
        std::vector<wide_int> r(a.order());
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = checked_mul(a.exact_coeffs()[i], c);
        }
        return Series::from_exact(std::move(r));
    }
    const auto cr = static_cast<std::uint64_t>(a.ring().reduce(c));
    return with_arith(a.ring(), [&](const auto& ar) {
        std::vector<std::uint64_t> r(a.order());
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = ar.fin(ar.mulr(a.residues()[i], cr));
        }
        return Series::from_residues(a.ring(), std::move(r));
    });
}

Series shift(const Series& a, std::size_t s)
{
    if (a.ring().is_exact()) {
        std::vector<wide_int> r(s, 0);
        r.insert(r.end(), a.exact_coeffs().begin(), a.exact_coeffs().end());
        return Series::from_exact(std::move(r));
    }
    std::vector<std::uint64_t> r(s, 0);
    r.insert(r.end(), a.residues().begin(), a.residues().end());
    return Series::from_residues(a.ring(), std::move(r));
}

Series truncate(const Series& a, std::size_t order)
{
    const std::size_t n = std::min(order, a.order());
    if (a.ring().is_exact()) {
        return Series::from_exact({a.exact_coeffs().begin(), a.exact_coeffs().begin() + static_cast<std::ptrdiff_t>(n)});
    }
    return Series::from_residues(a.ring(),
                                 {a.residues().begin(), a.residues().begin() + static_cast<std::ptrdiff_t>(n)});
}

namespace {

Series mul_impl(const Series& a, const Series& b, bool skip_zeros)
{
    require_same_ring(a, b, "mul");
    const std::size_t n = std::min(a.order(), b.order());
    if (a.ring().is_exact()) {
        return Series::from_exact(mul_exact(a.exact_coeffs(), b.exact_coeffs(), n, skip_zeros));
    }
    return with_arith(a.ring(), [&](const auto& ar) {
        return Series::from_residues(a.ring(), mul_residues(ar, a.residues(), b.residues(), n, skip_zeros));
    });
}

}  // namespace

Series mul(const Series& a, const Series& b) { return mul_impl(a, b, true); }

Series mul_schoolbook(const Series& a, const Series& b) { return mul_impl(a, b, false); }

Series pow(const Series& a, std::uint64_t e)
{
    Series result = Series::one(a.ring(), a.order());
    if (e == 0) {
        return result;
    }
    Series base = a;
    bool first = true;
    while (true) {
        if (e & 1) {
            result = first ? base : mul(result, base);
            first = false;
        }
        e >>= 1;
        if (e == 0) {
            break;
        }
        base = mul(base, base);
    }
    return result;
}

Series divide(const Series& a, const Series& b)
{
    require_same_ring(a, b, "divide");
    const std::size_t n = std::min(a.order(), b.order());
    if (n == 0) {
        return Series(a.ring(), 0);
    }
    if (a.ring().is_exact()) {
        const wide_int b0 = b.exact_coeffs()[0];
        if (b0 != 1 && b0 != -1) {
            throw NonUnitError("constant term " + to_string(b0) + " is not a unit in the exact ring");
        }
        const auto bb = b.exact_coeffs();
        const auto aa = a.exact_coeffs();
        std::vector<std::size_t> support;
        for (std::size_t j = 1; j < n; ++j) {
            if (bb[j] != 0) {
                support.push_back(j);
            }
        }
        std::vector<wide_int> c(n, 0);
        for (std::size_t k = 0; k < n; ++k) {
            wide_int acc = aa[k];
            for (const std::size_t j : support) {
                if (j > k) {
                    break;
                }
                acc = checked_sub(acc, checked_mul(bb[j], c[k - j]));
            }
            c[k] = b0 == 1 ? acc : checked_mul(acc, -1);
        }
        return Series::from_exact(std::move(c));
    }
    const auto inv = inverse_mod(b.residues()[0], a.ring().modulus());
    if (!inv) {
        throw NonUnitError("constant term " + std::to_string(b.residues()[0]) + " is not a unit in " +
                           a.ring().to_string());
    }
    return with_arith(a.ring(), [&](const auto& ar) {
        return Series::from_residues(a.ring(), divide_residues(ar, a.residues(), b.residues(), n, *inv));
    });
}

Series invert(const Series& a)
{
    return divide(Series::one(a.ring(), a.order()), a);
}

Series substitute_power(const Series& a, std::uint64_t m, std::optional<std::size_t> max_order)
{
    if (m == 0) {
        throw std::invalid_argument("substitute_power needs m >= 1");
    }
    std::size_t order = 0;
    if (__builtin_mul_overflow(a.order(), m, &order)) {
        if (!max_order) {
            throw std::length_error("substitute_power: order overflow");
        }
        order = *max_order;
    }
    if (max_order) {
        order = std::min(order, *max_order);
    }
    if (a.ring().is_exact()) {
        std::vector<wide_int> r(order, 0);
        for (std::size_t i = 0; i < a.order() && i * m < order; ++i) {
            r[i * m] = a.exact_coeffs()[i];
        }
        return Series::from_exact(std::move(r));
    }
    std::vector<std::uint64_t> r(order, 0);
    for (std::size_t i = 0; i < a.order() && i * m < order; ++i) {
        r[i * m] = a.residues()[i];
    }
    return Series::from_residues(a.ring(), std::move(r));
}

Series reduce_mod(const Series& a, std::uint64_t m)
{
    const CoeffRing target = CoeffRing::mod(m);
    std::vector<std::uint64_t> r(a.order());
    if (a.ring().is_exact()) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = static_cast<std::uint64_t>(target.reduce(a.exact_coeffs()[i]));
        }
    } else {
        if (a.ring().modulus() % m != 0) {
            throw std::invalid_argument("reduce_mod: " + std::to_string(m) + " does not divide " +
                                        std::to_string(a.ring().modulus()));
        }
        for (std::size_t i = 0; i < r.size(); ++i) {
            r[i] = a.residues()[i] % m;
        }
    }
    return Series::from_residues(target, std::move(r));
}

std::optional<std::size_t> first_difference(const Series& a, const Series& b, std::size_t upto)
{
    require_same_ring(a, b, "eq_upto");
    if (upto > a.order() || upto > b.order()) {
        throw std::invalid_argument("eq_upto: comparison bound " + std::to_string(upto) +
                                    " exceeds series order");
    }
    for (std::size_t i = 0; i < upto; ++i) {
        const bool same = a.ring().is_exact() ? a.exact_coeffs()[i] == b.exact_coeffs()[i]
                                              : a.residues()[i] == b.residues()[i];
        if (!same) {
            return i;
        }
    }
    return std::nullopt;
}

bool eq_upto(const Series& a, const Series& b, std::size_t upto)
{
    return !first_difference(a, b, upto).has_value();
}

}  // namespace qcong
