#include "qcong/oracle.hpp"

#include <chrono>
#include <functional>

namespace qcong {

namespace {

// Objects of one component, by size: every non-increasing list of allowed
// parts, times the 2^{distinct sizes} overline choices when overlined.
std::vector<wide_int> enumerate_component(const FamilySpec& family, std::size_t n_max)
{
    std::vector<wide_int> counts(n_max + 1, 0);
    const std::size_t stride = family.odd_parts() ? 2 : 1;
    std::vector<std::size_t> parts;
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t total, std::size_t largest) {
        std::size_t distinct = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            distinct += (i == 0 || parts[i] != parts[i - 1]) ? 1 : 0;
        }
        const std::size_t marks = family.overlined() ? distinct : 0;
        // Each subset of the distinct sizes carries an overline: list them.
        for (std::size_t mask = 0; mask < (std::size_t{1} << marks); ++mask) {
            counts[total] += 1;
        }
        for (std::size_t part = 1; part <= largest && total + part <= n_max; part += stride) {
            parts.push_back(part);
            extend(total + part, part);
            parts.pop_back();
        }
    };
    extend(0, n_max);
    return counts;
}

// Visits every ordered composition (n_1, ..., n_k) with sum <= n_max.
void compose(const std::vector<wide_int>& single, unsigned k, std::size_t used, wide_int weight,
             std::vector<wide_int>& out)
{
    if (k == 0) {
        out[used] = checked_add(out[used], weight);
        return;
    }
    for (std::size_t m = 0; used + m < out.size(); ++m) {
        if (single[m] != 0) {
            compose(single, k - 1, used + m, checked_mul(weight, single[m]), out);
        }
    }
}

}  // namespace

OracleResult enum_count(const FamilySpec& family, std::size_t n_max)
{
    if (n_max > kEnumBudget) {
        throw BudgetExceeded("exhaustive enumeration is limited to n <= " + std::to_string(kEnumBudget));
    }
    const auto single = enumerate_component(family, n_max);
    std::vector<wide_int> values(n_max + 1, 0);
    compose(single, family.k(), 0, 1, values);
    return {family, std::move(values), OracleMethod::Enum};
}

OracleResult dp_count(const FamilySpec& family, std::size_t n_max)
{
    const wide_int c = family.overlined() ? 2 : 1;
    std::vector<wide_int> values(n_max + 1, 0);
    values[0] = 1;
    std::vector<wide_int> next(n_max + 1);
    for (std::size_t j = 1; j <= n_max; j += family.odd_parts() ? 2 : 1) {
        std::vector<std::size_t> support;  // exponents 0, j, 2j, ... of the multiplicity polynomial
        for (std::size_t e = 0; e <= n_max; e += j) {
            support.push_back(e);
        }
        for (unsigned comp = 0; comp < family.k(); ++comp) {
            for (std::size_t n = 0; n <= n_max; ++n) {
                wide_int acc = values[n];
                for (std::size_t i = 1; i < support.size() && support[i] <= n; ++i) {
                    acc = checked_add(acc, checked_mul(c, values[n - support[i]]));
                }
                next[n] = acc;
            }
            values.swap(next);
        }
    }
    return {family, std::move(values), OracleMethod::Dp};
}

VerificationReport cross_check(const FamilySpec& family, std::size_t n_max)
{
    const auto start = std::chrono::steady_clock::now();
    VerificationReport rep;
    rep.label = "cross-check " + family.name();
    rep.family = family.name();
    rep.params = {{"n_max", static_cast<std::int64_t>(n_max)}};
    rep.terms_checked = n_max + 1;
    const auto dp = dp_count(family, n_max);
    const Series s = family_series(family, n_max + 1, CoeffRing::exact());
    rep.status = Status::Pass;
    for (std::size_t n = 0; n <= n_max; ++n) {
        if (s.coeff(n) != dp.values[n]) {
            rep.status = Status::Fail;
            rep.counterexample = Counterexample{n, n, checked_sub(s.coeff(n), dp.values[n])};
            break;
        }
    }
    rep.elapsed_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

}  // namespace qcong
