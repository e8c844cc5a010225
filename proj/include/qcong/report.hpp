#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "qcong/wide_int.hpp"

namespace qcong {

enum class Status { Pass, Fail, Skipped };

std::string_view to_string(Status s) noexcept;

struct Counterexample {
    std::uint64_t n = 0;      // progression position
    std::uint64_t index = 0;  // exponent of q, step * n + offset
    wide_int value = 0;       // offending residue (or exact difference)
};

using ParamValue = std::variant<std::int64_t, std::string>;
using Params = std::vector<std::pair<std::string, ParamValue>>;

/// Outcome of one claim or identity check.
///
/// A failing report always carries a counterexample whose value is nonzero
/// modulo `modulus` (or nonzero outright when modulus is 0, the exact ring).
struct VerificationReport {
    std::string label;
    std::string family;
    Params params;
    std::uint64_t step = 1;
    std::uint64_t offset = 0;
    std::uint64_t modulus = 0;
    std::uint64_t terms_checked = 0;
    Status status = Status::Skipped;
    std::optional<Counterexample> counterexample;
    std::int64_t elapsed_ms = 0;
};

}  // namespace qcong
