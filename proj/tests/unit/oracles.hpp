#pragma once

// Independent reference computations shared by the unit tests. Nothing here
// calls into the library's series kernels.

#include <cstdint>
#include <vector>

#include "qcong/wide_int.hpp"

namespace qcong::testing {

/// prod_{i >= 1} (1 - q^{k i}) by repeated multiplication, truncated to order.
inline std::vector<wide_int> direct_euler(std::uint64_t k, std::size_t order)
{
    std::vector<wide_int> c(order, 0);
    c[0] = 1;
    for (std::size_t step = k; step < order; step += k) {
        for (std::size_t n = order; n-- > step;) {
            c[n] -= c[n - step];
        }
    }
    return c;
}

/// Plain O(N^2) product, no sparsity tricks.
inline std::vector<wide_int> naive_mul(const std::vector<wide_int>& a, const std::vector<wide_int>& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<wide_int> c(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; i + j < n; ++j) {
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

/// Multiply by 1/(1 - q^step) in place (prefix sums with stride).
inline void divide_by_one_minus(std::vector<wide_int>& c, std::size_t step)
{
    for (std::size_t n = step; n < c.size(); ++n) {
        c[n] += c[n - step];
    }
}

/// Number of partitions p(n) by the standard part-size DP.
inline std::vector<wide_int> partition_numbers(std::size_t order)
{
    std::vector<wide_int> c(order, 0);
    c[0] = 1;
    for (std::size_t s = 1; s < order; ++s) {
        divide_by_one_minus(c, s);
    }
    return c;
}

inline wide_int mod_floor(wide_int v, wide_int m)
{
    const wide_int r = v % m;
    return r < 0 ? r + m : r;
}

/// Coefficients of prod_{s odd} ((1 + q^s)/(1 - q^s))^k reduced mod m, by
/// one factor at a time.
inline std::vector<wide_int> opt_k_direct(unsigned k, std::size_t order, wide_int m)
{
    std::vector<wide_int> c(order, 0);
    c[0] = 1;
    for (std::size_t s = 1; s < order; s += 2) {
        for (unsigned i = 0; i < k; ++i) {
            for (std::size_t n = order; n-- > s;) {
                c[n] = mod_floor(c[n] + c[n - s], m);
            }
            for (std::size_t n = s; n < order; ++n) {
                c[n] = mod_floor(c[n] + c[n - s], m);
            }
        }
    }
    return c;
}

}  // namespace qcong::testing
