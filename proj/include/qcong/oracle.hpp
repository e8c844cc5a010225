#pragma once

// Combinatorial counters for the families, independent of the q-series layer.
// A tuple family counts ordered k-tuples whose components may be empty.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qcong/qseries.hpp"
#include "qcong/report.hpp"

namespace qcong {

enum class OracleMethod { Enum, Dp };

struct OracleResult {
    FamilySpec family;
    /// values[n] is the count for n = 0 .. n_max.
    std::vector<wide_int> values;
    OracleMethod method;
};

class BudgetExceeded : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kEnumBudget = 25;

/// Generates every single-component object of each size (non-increasing part
/// lists, with an optional overline on the first occurrence of each distinct
/// size), then combines sizes over every ordered composition of n into k
/// parts. Throws BudgetExceeded when n_max > kEnumBudget.
OracleResult enum_count(const FamilySpec& family, std::size_t n_max);

/// Multiplies, for each allowed part size j and each component, by the
/// multiplicity polynomial 1 + c q^j + c q^{2j} + ... (c = 2 when overlined).
/// Throws OverflowError when a count exceeds 128 bits.
OracleResult dp_count(const FamilySpec& family, std::size_t n_max);

/// Pass iff the exact family series agrees with dp_count for n <= n_max.
VerificationReport cross_check(const FamilySpec& family, std::size_t n_max);

}  // namespace qcong
