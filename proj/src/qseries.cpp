#include "qcong/qseries.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qcong {

namespace {

Series pentagonal_f1(std::size_t order, CoeffRing ring)
{
    // f_1 = sum_{j in Z} (-1)^j q^{j(3j-1)/2}
    std::vector<wide_int> c(order, 0);
    if (order > 0) {
        c[0] = 1;
    }
    for (std::uint64_t j = 1;; ++j) {
        const std::uint64_t g1 = j * (3 * j - 1) / 2;
        const std::uint64_t g2 = j * (3 * j + 1) / 2;
        if (g1 >= order) {
            break;
        }
        const wide_int sign = (j % 2 == 0) ? 1 : -1;
        c[g1] += sign;
        if (g2 < order) {
            c[g2] += sign;
        }
    }
    return Series::make(ring, c, order);
}

}  // namespace

Series euler_f(std::uint64_t k, std::size_t order, CoeffRing ring)
{
    if (k == 0) {
        throw std::invalid_argument("euler_f needs k >= 1");
    }
    const std::size_t base_order = (order + k - 1) / k;
    return substitute_power(pentagonal_f1(base_order, ring), k, order);
}

// ---------------------------------------------------------------------------
// EtaQuotient

EtaQuotient::EtaQuotient(std::initializer_list<std::pair<std::uint64_t, int>> factors)
{
    for (const auto& [k, e] : factors) {
        accumulate(k, e);
    }
}

void EtaQuotient::accumulate(std::uint64_t k, int e)
{
    if (k == 0) {
        throw std::invalid_argument("eta factor f_k needs k >= 1");
    }
    const int total = factors_[k] + e;
    if (total == 0) {
        factors_.erase(k);
    } else {
        factors_[k] = total;
    }
}

int EtaQuotient::exponent(std::uint64_t k) const
{
    const auto it = factors_.find(k);
    return it == factors_.end() ? 0 : it->second;
}

std::uint64_t EtaQuotient::total_degree() const noexcept
{
    std::uint64_t d = 0;
    for (const auto& [k, e] : factors_) {
        d += static_cast<std::uint64_t>(e < 0 ? -e : e);
    }
    return d;
}

EtaQuotient EtaQuotient::operator*(const EtaQuotient& other) const
{
    EtaQuotient r = *this;
    for (const auto& [k, e] : other.factors_) {
        r.accumulate(k, e);
    }
    return r;
}

EtaQuotient EtaQuotient::pow(int e) const
{
    EtaQuotient r;
    for (const auto& [k, x] : factors_) {
        r.accumulate(k, x * e);
    }
    return r;
}

std::string EtaQuotient::to_string() const
{
    auto render = [](const std::vector<std::pair<std::uint64_t, int>>& fs) {
        std::string s;
        for (const auto& [k, e] : fs) {
            if (!s.empty()) {
                s += "*";
            }
            s += "f" + std::to_string(k);
            if (e != 1) {
                s += "^" + std::to_string(e);
            }
        }
        return s;
    };
    std::vector<std::pair<std::uint64_t, int>> num;
    std::vector<std::pair<std::uint64_t, int>> den;
    for (const auto& [k, e] : factors_) {
        (e > 0 ? num : den).emplace_back(k, e > 0 ? e : -e);
    }
    std::string s = num.empty() ? "1" : render(num);
    if (!den.empty()) {
        s += den.size() == 1 && den[0].second == 1 ? "/" + render(den) : "/(" + render(den) + ")";
    }
    return s;
}

Series eta_quotient(const EtaQuotient& spec, std::size_t order, CoeffRing ring)
{
    // One unit step multiplies or divides by a sparse f_k. Near q = 1, f_k
    // behaves like exp(-pi^2 / (6 k (1 - q))), so each step moves the growth
    // rate of the running product by -1/k (multiply) or +1/k (divide). Steps
    // are ordered greedily to keep that rate near zero, which keeps exact
    // intermediates close to the size of the final coefficients.
    std::map<std::uint64_t, int> remaining = spec.factors();
    std::map<std::uint64_t, Series> factor_cache;
    Series acc = Series::one(ring, order);
    double rate = 0.0;
    while (!remaining.empty()) {
        auto best = remaining.end();
        double best_rate = 0.0;
        for (auto it = remaining.begin(); it != remaining.end(); ++it) {
            const double step = (it->second > 0 ? -1.0 : 1.0) / static_cast<double>(it->first);
            const double next = rate + step;
            if (best == remaining.end() || std::abs(next) < std::abs(best_rate)) {
                best = it;
                best_rate = next;
            }
        }
        const std::uint64_t k = best->first;
        auto cached = factor_cache.find(k);
        if (cached == factor_cache.end()) {
            cached = factor_cache.emplace(k, euler_f(k, order, ring)).first;
        }
        if (best->second > 0) {
            acc = mul(acc, cached->second);
            --best->second;
        } else {
            acc = divide(acc, cached->second);
            ++best->second;
        }
        rate = best_rate;
        if (best->second == 0) {
            remaining.erase(best);
        }
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Theta functions

Series phi(std::uint64_t m, std::size_t order, CoeffRing ring)
{
    if (m == 0) {
        throw std::invalid_argument("phi needs m >= 1");
    }
    std::vector<wide_int> c(order, 0);
    if (order > 0) {
        c[0] = 1;
    }
    for (std::uint64_t n = 1; m * n * n < order; ++n) {
        c[m * n * n] = 2;
    }
    return Series::make(ring, c, order);
}

Series psi(std::uint64_t m, std::size_t order, CoeffRing ring)
{
    if (m == 0) {
        throw std::invalid_argument("psi needs m >= 1");
    }
    std::vector<wide_int> c(order, 0);
    for (std::uint64_t n = 0; m * n * (n + 1) / 2 < order; ++n) {
        c[m * n * (n + 1) / 2] = 1;
    }
    return Series::make(ring, c, order);
}

ThetaSpec::ThetaSpec(int sign_a, wide_int exp_a, int sign_b, wide_int exp_b)
    : sign_a_(sign_a), exp_a_(exp_a), sign_b_(sign_b), exp_b_(exp_b)
{
    if ((sign_a != 1 && sign_a != -1) || (sign_b != 1 && sign_b != -1)) {
        throw std::invalid_argument("theta signs must be +1 or -1");
    }
    if (exp_a < 0 || exp_b < 0) {
        throw std::invalid_argument("theta exponents must be nonnegative");
    }
    if (exp_a + exp_b <= 0) {
        throw std::invalid_argument("f(a,b) needs |ab| < 1, i.e. exp_a + exp_b > 0");
    }
}

ThetaSpec ThetaSpec::from_fractions(int sign_a, wide_int num_a, wide_int den_a, int sign_b, wide_int num_b,
                                    wide_int den_b)
{
    if (den_a == 0 || den_b == 0) {
        throw std::invalid_argument("theta exponent with zero denominator");
    }
    // The k = 1 and k = -1 terms have exponents a and b themselves.
    if (num_a % den_a != 0 || num_b % den_b != 0) {
        throw std::invalid_argument("theta exponents " + qcong::to_string(num_a) + "/" + qcong::to_string(den_a) +
                                    ", " + qcong::to_string(num_b) + "/" + qcong::to_string(den_b) +
                                    " are not integers");
    }
    return ThetaSpec(sign_a, num_a / den_a, sign_b, num_b / den_b);
}

std::string ThetaSpec::to_string() const
{
    auto arg = [](int sign, wide_int e) {
        std::string s = sign < 0 ? "-q" : "q";
        if (e != 1) {
            s += "^" + qcong::to_string(e);
        }
        return s;
    };
    if (sign_a_ == 1 && sign_b_ == 1 && exp_a_ == exp_b_) {
        return "phi(q^" + qcong::to_string(exp_a_) + ")";
    }
    if (sign_a_ == 1 && sign_b_ == 1 && exp_b_ == 3 * exp_a_) {
        return "psi(q^" + qcong::to_string(exp_a_) + ")";
    }
    return "f(" + arg(sign_a_, exp_a_) + "," + arg(sign_b_, exp_b_) + ")";
}

Series theta_f(const ThetaSpec& spec, std::size_t order, CoeffRing ring)
{
    const wide_int a = spec.exp_a();
    const wide_int b = spec.exp_b();
    const auto limit = static_cast<wide_int>(order);
    std::vector<wide_int> c(order, 0);
    auto add_term = [&](wide_int k) -> bool {
        const wide_int tri_a = k * (k + 1) / 2;
        const wide_int tri_b = k * (k - 1) / 2;
        const wide_int e = checked_add(checked_mul(a, tri_a), checked_mul(b, tri_b));
        if (e >= limit) {
            return false;
        }
        int sign = 1;
        if (spec.sign_a() < 0 && (tri_a % 2 != 0)) {
            sign = -sign;
        }
        if (spec.sign_b() < 0 && (tri_b % 2 != 0)) {
            sign = -sign;
        }
        c[static_cast<std::size_t>(e)] += sign;
        return true;
    };
    // The exponent is nondecreasing in |k| on both sides of k = 0, so each
    // direction stops at the first term past the truncation order.
    for (wide_int k = 0; add_term(k); ++k) {
    }
    for (wide_int k = -1; add_term(k); --k) {
    }
    return Series::make(ring, c, order);
}

// ---------------------------------------------------------------------------
// Counting families

FamilySpec::FamilySpec(Family f, unsigned k) : family_(f), k_(k)
{
    if (k_ == 0) {
        throw std::invalid_argument("tuple size k must be >= 1");
    }
}

FamilySpec FamilySpec::parse(std::string_view name, unsigned k)
{
    std::string upper(name);
    for (auto& ch : upper) {
        ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    }
    if (upper == "P") {
        return p();
    }
    if (upper == "PBAR") {
        return pbar();
    }
    if (upper == "PBAR_O" || upper == "PBARO") {
        return pbar_o();
    }
    if (upper == "OPT") {
        return opt();
    }
    if (upper == "PBAR_K") {
        return pbar_k(k);
    }
    if (upper == "OPT_K") {
        return opt_k(k);
    }
    // Literal tuple sizes: OPT_5, PBAR_2.
    for (const auto& [prefix, fam] : {std::pair<std::string, Family>{"OPT_", Family::OptK}, {"PBAR_", Family::PBarK}}) {
        if (upper.rfind(prefix, 0) == 0 && upper.size() > prefix.size()) {
            const std::string digits = upper.substr(prefix.size());
            if (digits.find_first_not_of("0123456789") == std::string::npos && digits.size() < 7) {
                return FamilySpec(fam, static_cast<unsigned>(std::stoul(digits)));
            }
        }
    }
    throw std::invalid_argument("unknown family: " + std::string(name));
}

bool FamilySpec::odd_parts() const noexcept
{
    return family_ == Family::Opt || family_ == Family::OptK || family_ == Family::PBarO;
}

bool FamilySpec::overlined() const noexcept { return family_ != Family::P; }

EtaQuotient FamilySpec::eta() const
{
    const int k = static_cast<int>(k_);
    switch (family_) {
    case Family::P:
        return {{1, -1}};
    case Family::PBar:
        return {{2, 1}, {1, -2}};
    case Family::PBarK:
        return {{2, k}, {1, -2 * k}};
    case Family::Opt:
        return {{2, 9}, {1, -6}, {4, -3}};
    case Family::OptK:
        return {{2, 3 * k}, {1, -2 * k}, {4, -k}};
    case Family::PBarO:
        return {{2, 3}, {1, -2}, {4, -1}};
    }
    throw std::logic_error("unhandled family");
}

std::string FamilySpec::name() const
{
    switch (family_) {
    case Family::P:
        return "P";
    case Family::PBar:
        return "PBAR";
    case Family::PBarK:
        return "PBAR_" + std::to_string(k_);
    case Family::Opt:
        return "OPT";
    case Family::OptK:
        return "OPT_" + std::to_string(k_);
    case Family::PBarO:
        return "PBAR_O";
    }
    throw std::logic_error("unhandled family");
}

Series family_series(const FamilySpec& spec, std::size_t order, CoeffRing ring)
{
    return eta_quotient(spec.eta(), order, ring);
}

Series pbar_o_product(std::size_t order, CoeffRing ring)
{
    Series acc = Series::one(ring, order);
    std::uint64_t exponent = 1;
    for (std::uint64_t i = 0, m = 1; m < order; ++i, m *= 2) {
        if (i >= 2) {
            exponent *= 2;
        }
        acc = mul(acc, pow(phi(m, order, ring), exponent));
    }
    return acc;
}

}  // namespace qcong
