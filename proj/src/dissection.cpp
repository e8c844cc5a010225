#include "qcong/dissection.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <regex>
#include <stdexcept>

#include "qcong/number_theory.hpp"

namespace qcong {

namespace {

constexpr std::array<std::uint64_t, 16> kCertPrimes = {
    4611686018427387847ULL, 4611686018427387817ULL, 4611686018427387787ULL, 4611686018427387761ULL,
    4611686018427387751ULL, 4611686018427387737ULL, 4611686018427387733ULL, 4611686018427387709ULL,
    4611686018427387701ULL, 4611686018427387631ULL, 4611686018427387617ULL, 4611686018427387587ULL,
    4611686018427387461ULL, 4611686018427387421ULL, 4611686018427387409ULL, 4611686018427387329ULL,
};

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

void require_prime(std::uint64_t p, std::uint64_t min, const char* what)
{
    if (p < min || !is_prime(p)) {
        throw std::invalid_argument(std::string(what) + ": " + std::to_string(p) + " must be a prime >= " +
                                    std::to_string(min));
    }
}

// Least nonnegative residue of v modulo m.
std::int64_t mod_floor(std::int64_t v, std::int64_t m)
{
    const std::int64_t r = v % m;
    return r < 0 ? r + m : r;
}

void fill_mismatch(VerificationReport& rep, const Series& lhs, const Series& rhs, std::size_t order)
{
    const auto diff_at = first_difference(lhs, rhs, order);
    if (!diff_at) {
        rep.status = Status::Pass;
        return;
    }
    const Series d = sub(lhs, rhs);
    rep.status = Status::Fail;
    rep.counterexample = Counterexample{*diff_at, *diff_at, d.coeff(*diff_at)};
}

}  // namespace

APSpec::APSpec(std::uint64_t step, std::uint64_t offset) : a(step), b(offset)
{
    if (step == 0 || offset >= step) {
        throw std::invalid_argument("progression needs 0 <= offset < step");
    }
}

Series extract_progression(const Series& s, std::uint64_t step, std::uint64_t offset)
{
    if (step == 0) {
        throw std::invalid_argument("progression step must be positive");
    }
    const std::size_t order = offset >= s.order() ? 0 : (s.order() - offset + step - 1) / step;
    if (s.ring().is_exact()) {
        std::vector<wide_int> out(order);
        const auto src = s.exact_coeffs();
        for (std::size_t n = 0; n < order; ++n) {
            out[n] = src[step * n + offset];
        }
        return Series::from_exact(std::move(out));
    }
    std::vector<std::uint64_t> out(order);
    const auto src = s.residues();
    for (std::size_t n = 0; n < order; ++n) {
        out[n] = src[step * n + offset];
    }
    return Series::from_residues(s.ring(), std::move(out));
}

Series extract_ap(const Series& s, APSpec ap)
{
    return extract_progression(s, ap.a, ap.b);
}

IdentityId::IdentityId(Kind kind) : kind_(kind)
{
    if (kind == Kind::BinomialPL) {
        throw std::invalid_argument("binomial identities need (k, p, l); use IdentityId::binomial_pl");
    }
}

IdentityId IdentityId::binomial_pl(std::uint64_t k, std::uint64_t p, unsigned l)
{
    if (k == 0 || l == 0) {
        throw std::invalid_argument("binomial identity needs positive k and l");
    }
    require_prime(p, 2, "binomial identity prime");
    checked_pow(p, l);
    IdentityId id(Kind::Phi2Dissect);
    id.kind_ = Kind::BinomialPL;
    id.k_ = k;
    id.p_ = p;
    id.l_ = l;
    return id;
}

namespace {

struct NamedKind {
    const char* name;
    IdentityId::Kind kind;
};

constexpr std::array<NamedKind, 8> kNamedKinds = {{
    {"PHI_2DISSECT", IdentityId::Kind::Phi2Dissect},
    {"DIS_F1SQ", IdentityId::Kind::DisF1Sq},
    {"DIS_INV_F1SQ", IdentityId::Kind::DisInvF1Sq},
    {"DIS_F1_4", IdentityId::Kind::DisF1_4},
    {"DIS_INV_F1_4", IdentityId::Kind::DisInvF1_4},
    {"DIS_F1F2", IdentityId::Kind::DisF1F2},
    {"DIS_F1CUBED", IdentityId::Kind::DisF1Cubed},
    {"HS1_PRODUCT", IdentityId::Kind::Hs1Product},
}};

}  // namespace

IdentityId IdentityId::parse(std::string_view name)
{
    for (const auto& nk : kNamedKinds) {
        if (name == nk.name) {
            return IdentityId(nk.kind);
        }
    }
    static const std::regex binom(R"(BINOMIAL_PL\(k=(\d+),p=(\d+),l=(\d+)\))");
    std::cmatch m;
    const std::string text(name);
    if (std::regex_match(text.c_str(), m, binom)) {
        return binomial_pl(std::stoull(m[1]), std::stoull(m[2]), static_cast<unsigned>(std::stoul(m[3])));
    }
    throw std::invalid_argument("unknown identity: " + text);
}

std::string IdentityId::to_string() const
{
    for (const auto& nk : kNamedKinds) {
        if (nk.kind == kind_) {
            return nk.name;
        }
    }
    return "BINOMIAL_PL(k=" + std::to_string(k_) + ",p=" + std::to_string(p_) + ",l=" + std::to_string(l_) + ")";
}

IdentitySides identity_sides(const IdentityId& id, std::size_t order)
{
    using K = IdentityId::Kind;
    switch (id.kind()) {
    case K::Phi2Dissect:
        return {SeriesExpr::term(1, 0, {}, {{ThetaSpec::phi(1), 1}}),
                SeriesExpr::term(1, 0, {}, {{ThetaSpec::phi(4), 1}}) +
                    SeriesExpr::term(2, 1, {}, {{ThetaSpec::psi(8), 1}})};
    case K::DisF1Sq:
        return {SeriesExpr::eta({{1, 2}}),
                SeriesExpr::eta({{2, 1}, {8, 5}, {4, -2}, {16, -2}}) - SeriesExpr::eta({{2, 1}, {16, 2}, {8, -1}}, 2, 1)};
    case K::DisInvF1Sq:
        return {SeriesExpr::eta({{1, -2}}), SeriesExpr::eta({{8, 5}, {2, -5}, {16, -2}}) +
                                                SeriesExpr::eta({{4, 2}, {16, 2}, {2, -5}, {8, -1}}, 2, 1)};
    case K::DisF1_4:
        return {SeriesExpr::eta({{1, 4}}),
                SeriesExpr::eta({{4, 10}, {2, -2}, {8, -4}}) - SeriesExpr::eta({{2, 2}, {8, 4}, {4, -2}}, 4, 1)};
    case K::DisInvF1_4:
        return {SeriesExpr::eta({{1, -4}}),
                SeriesExpr::eta({{4, 14}, {2, -14}, {8, -4}}) + SeriesExpr::eta({{4, 2}, {8, 4}, {2, -10}}, 4, 1)};
    case K::DisF1F2:
        return {SeriesExpr::eta({{1, 1}, {2, 1}}), SeriesExpr::eta({{6, 1}, {9, 4}, {3, -1}, {18, -2}}) -
                                                       SeriesExpr::eta({{9, 1}, {18, 1}}, 1, 1) -
                                                       SeriesExpr::eta({{3, 1}, {18, 4}, {6, -1}, {9, -2}}, 2, 2)};
    case K::DisF1Cubed:
        return {SeriesExpr::eta({{1, 3}}), SeriesExpr::eta({{6, 1}, {9, 6}, {3, -1}, {18, -3}}) -
                                               SeriesExpr::eta({{9, 3}}, 3, 1) +
                                               SeriesExpr::eta({{3, 2}, {18, 6}, {6, -2}, {9, -3}}, 4, 3)};
    case K::Hs1Product: {
        // Factors phi(q^{2^i}) with 2^i >= order are 1 to this order.
        std::vector<ThetaPower> factors;
        for (std::uint64_t i = 0; (std::uint64_t{1} << i) < order; ++i) {
            factors.push_back({ThetaSpec::phi(std::uint64_t{1} << i), i < 2 ? 1 : std::uint64_t{1} << (i - 1)});
        }
        return {SeriesExpr::term(1, 0, {}, std::move(factors)), SeriesExpr::family(FamilySpec::pbar_o())};
    }
    case K::BinomialPL: {
        const auto pl = checked_pow(id.p(), id.l());
        const auto pl1 = checked_pow(id.p(), id.l() - 1);
        if (pl > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
            throw std::invalid_argument("binomial identity exponent too large");
        }
        return {SeriesExpr::eta({{id.k(), static_cast<int>(pl)}}),
                SeriesExpr::eta({{checked_mul_u64(id.p(), id.k()), static_cast<int>(pl1)}}), pl};
    }
    }
    throw std::logic_error("unhandled identity kind");
}

std::vector<IdentityId> identity_catalog()
{
    std::vector<IdentityId> out;
    for (const auto& nk : kNamedKinds) {
        out.emplace_back(nk.kind);
    }
    for (std::uint64_t k : {1, 2}) {
        for (unsigned l = 1; l <= 3; ++l) {
            out.push_back(IdentityId::binomial_pl(k, 2, l));
        }
        for (unsigned l = 1; l <= 2; ++l) {
            out.push_back(IdentityId::binomial_pl(k, 3, l));
        }
    }
    return out;
}

std::span<const std::uint64_t> certification_primes() noexcept
{
    return kCertPrimes;
}

VerificationReport verify_expr_identity(const std::string& label, const SeriesExpr& lhs, const SeriesExpr& rhs,
                                        std::uint64_t modulus, std::size_t order)
{
    if (order < 2) {
        throw std::invalid_argument("identity checks need order >= 2");
    }
    const auto start = Clock::now();
    VerificationReport rep;
    rep.label = label;
    rep.family = "IDENTITY";
    rep.params = {{"lhs", lhs.to_string()}, {"rhs", rhs.to_string()}};
    rep.modulus = modulus;
    rep.terms_checked = order;

    if (modulus != 0) {
        const CoeffRing ring = CoeffRing::mod(modulus);
        rep.params.emplace_back("ring", ring.to_string());
        fill_mismatch(rep, evaluate(lhs, order, ring), evaluate(rhs, order, ring), order);
        rep.elapsed_ms = ms_since(start);
        return rep;
    }

    try {
        const CoeffRing ring = CoeffRing::exact();
        Series l = evaluate(lhs, order, ring);
        Series r = evaluate(rhs, order, ring);
        rep.params.emplace_back("ring", "exact");
        fill_mismatch(rep, l, r, order);
        rep.elapsed_ms = ms_since(start);
        return rep;
    } catch (const OverflowError&) {
    }

    // |lhs - rhs| <= bound at every index, so agreement modulo a set of primes
    // whose product exceeds bound (times two for sign) proves exact equality.
    const long double bound = magnitude_bound(lhs, order) + magnitude_bound(rhs, order);
    const long double needed_bits = std::log2(bound) + 2.0L;
    long double have_bits = 0;
    std::size_t used = 0;
    for (std::uint64_t p : kCertPrimes) {
        if (have_bits > needed_bits) {
            break;
        }
        const CoeffRing ring = CoeffRing::mod(p);
        fill_mismatch(rep, evaluate(lhs, order, ring), evaluate(rhs, order, ring), order);
        ++used;
        have_bits += std::log2(static_cast<long double>(p));
        if (rep.status == Status::Fail) {
            rep.params.emplace_back("ring", "multimodular");
            rep.params.emplace_back("failing_prime", ring.to_string());
            rep.elapsed_ms = ms_since(start);
            return rep;
        }
    }
    rep.params.emplace_back("ring", "multimodular");
    rep.params.emplace_back("primes", static_cast<std::int64_t>(used));
    if (have_bits <= needed_bits) {
        // Agreement in every available prime but no proof; never claim a pass.
        rep.status = Status::Skipped;
        rep.params.emplace_back("note", "coefficient bound exceeds certification capacity");
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
}

VerificationReport verify_identity(const IdentityId& id, std::size_t order)
{
    const IdentitySides sides = identity_sides(id, order);
    return verify_expr_identity(id.to_string(), sides.lhs, sides.rhs, sides.modulus, order);
}

std::int64_t pdissect_f1_excluded_k(std::uint64_t p)
{
    require_prime(p, 5, "f1 p-dissection");
    const auto ps = static_cast<std::int64_t>(p);
    return p % 6 == 1 ? (ps - 1) / 6 : (-ps - 1) / 6;
}

SeriesExpr pdissect_f1_rhs(std::uint64_t p)
{
    const std::int64_t kx = pdissect_f1_excluded_k(p);
    const auto pw = static_cast<wide_int>(p);
    const std::uint64_t p2 = checked_mul_u64(p, p);
    SeriesExpr rhs = SeriesExpr::eta({{p2, 1}}, (kx % 2 == 0) ? 1 : -1, (p2 - 1) / 24);
    const auto half = static_cast<std::int64_t>((p - 1) / 2);
    for (std::int64_t k = -half; k <= half; ++k) {
        if (k == kx) {
            continue;
        }
        const wide_int lin = (6 * static_cast<wide_int>(k) + 1) * pw;
        const ThetaSpec th = ThetaSpec::from_fractions(-1, 3 * pw * pw + lin, 2, -1, 3 * pw * pw - lin, 2);
        const auto shift = static_cast<std::uint64_t>((3 * k * k + k) / 2);
        rhs = rhs + SeriesExpr::term(k % 2 == 0 ? 1 : -1, shift, {}, {{th, 1}});
    }
    return rhs;
}

bool pdissect_f1_side_condition(std::uint64_t p)
{
    const std::int64_t kx = pdissect_f1_excluded_k(p);
    const auto ps = static_cast<std::int64_t>(p);
    const std::int64_t target = mod_floor((ps * ps - 1) / 24, ps);
    const std::int64_t half = (ps - 1) / 2;
    for (std::int64_t k = -half; k <= half; ++k) {
        if (k != kx && mod_floor((3 * k * k + k) / 2, ps) == target) {
            return false;
        }
    }
    return true;
}

Series pdissect_f1cubed_rhs(std::uint64_t p, std::size_t order)
{
    require_prime(p, 3, "f1^3 p-dissection");
    const auto pw = static_cast<wide_int>(p);
    std::vector<wide_int> c(order, 0);
    for (wide_int k = 0; k < pw; ++k) {
        if (k == (pw - 1) / 2) {
            continue;
        }
        const wide_int base = k * (k + 1) / 2;
        for (wide_int n = 0;; ++n) {
            const wide_int e = base + pw * n * (pw * n + 2 * k + 1) / 2;
            if (e >= static_cast<wide_int>(order)) {
                break;
            }
            const wide_int sign = ((k + n) % 2 == 0) ? 1 : -1;
            auto& slot = c[static_cast<std::size_t>(e)];
            slot = checked_add(slot, sign * (2 * pw * n + 2 * k + 1));
        }
    }
    const CoeffRing ring = CoeffRing::exact();
    const std::uint64_t p2 = checked_mul_u64(p, p);
    const wide_int lead = (((p - 1) / 2) % 2 == 0) ? pw : -pw;
    const Series tail = evaluate(SeriesExpr::eta({{p2, 3}}, lead, (p2 - 1) / 8), order, ring);
    return add(Series::from_exact(std::move(c)), tail);
}

bool pdissect_f1cubed_side_condition(std::uint64_t p)
{
    require_prime(p, 3, "f1^3 p-dissection");
    const std::uint64_t target = ((p * p - 1) / 8) % p;
    for (std::uint64_t k = 0; k < p; ++k) {
        if (k != (p - 1) / 2 && (k * (k + 1) / 2) % p == target) {
            return false;
        }
    }
    return true;
}

VerificationReport pdissect_f1_check(std::uint64_t p, std::size_t order)
{
    const auto start = Clock::now();
    const bool side_ok = pdissect_f1_side_condition(p);
    VerificationReport rep = verify_expr_identity("PDISSECT_F1(p=" + std::to_string(p) + ")",
                                                  SeriesExpr::eta({{1, 1}}), pdissect_f1_rhs(p), 0, order);
    rep.params.insert(rep.params.begin(), {"p", static_cast<std::int64_t>(p)});
    rep.params.emplace_back("excluded_k", pdissect_f1_excluded_k(p));
    rep.params.emplace_back("side_condition", side_ok ? "holds" : "violated");
    if (!side_ok && rep.status == Status::Pass) {
        rep.status = Status::Fail;
        rep.counterexample = Counterexample{0, 0, 1};
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
}

VerificationReport pdissect_f1cubed_check(std::uint64_t p, std::size_t order)
{
    if (order < 2) {
        throw std::invalid_argument("identity checks need order >= 2");
    }
    const auto start = Clock::now();
    const bool side_ok = pdissect_f1cubed_side_condition(p);
    VerificationReport rep;
    rep.label = "PDISSECT_F1CUBED(p=" + std::to_string(p) + ")";
    rep.family = "IDENTITY";
    rep.params = {{"p", static_cast<std::int64_t>(p)},
                  {"lhs", "f1^3"},
                  {"ring", "exact"},
                  {"side_condition", side_ok ? "holds" : "violated"}};
    rep.terms_checked = order;
    const CoeffRing ring = CoeffRing::exact();
    fill_mismatch(rep, eta_quotient({{1, 3}}, order, ring), pdissect_f1cubed_rhs(p, order), order);
    if (!side_ok && rep.status == Status::Pass) {
        rep.status = Status::Fail;
        rep.counterexample = Counterexample{0, 0, 1};
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
}

bool binom_2power_check(unsigned m)
{
    if (m > 20) {
        throw OverflowError("binomial 2-power check supports m <= 20");
    }
    const std::uint64_t top = std::uint64_t{1} << m;
    const std::uint64_t mod = top << 1;
    // C(2^m, n) tracked as 2^val * odd with odd reduced mod 2^{m+1}.
    std::int64_t val = 0;
    std::uint64_t odd = 1;
    auto odd_inverse = [mod](std::uint64_t x) {
        // Newton iteration for the inverse of an odd number modulo a power of two.
        std::uint64_t inv = x;
        for (int i = 0; i < 6; ++i) {
            inv *= 2 - x * inv;
        }
        return inv & (mod - 1);
    };
    for (std::uint64_t n = 1; n <= top; ++n) {
        std::uint64_t num = top - n + 1;
        std::uint64_t den = n;
        const unsigned vn = v2(num);
        const unsigned vd = v2(den);
        num >>= vn;
        den >>= vd;
        val += static_cast<std::int64_t>(vn) - static_cast<std::int64_t>(vd);
        odd = (odd * (num & (mod - 1))) & (mod - 1);
        odd = (odd * odd_inverse(den & (mod - 1))) & (mod - 1);
        const std::int64_t total = val + static_cast<std::int64_t>(n);
        const std::uint64_t residue =
            total >= static_cast<std::int64_t>(m + 1) ? 0 : (odd << total) & (mod - 1);
        if (residue != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace qcong
