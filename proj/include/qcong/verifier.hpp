#pragma once

// Congruence claims over arithmetic progressions, the named suites that
// instantiate them, and empirical 2-adic divisibility scans.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcong/expr.hpp"
#include "qcong/report.hpp"

namespace qcong {

enum class ClaimKind {
    /// Coefficients at step*n + offset vanish modulo `modulus`.
    Vanishing,
    /// The extracted subseries is congruent to `target` (itself extracted
    /// along target_step*n + target_offset) modulo `modulus`.
    Congruence,
    /// For 1 <= n < N, coefficient n vanishes modulo `modulus` exactly when n
    /// is neither a square nor twice a square.
    SquareSupport,
};

struct ProgressionClaim {
    std::string label;
    /// Display name of the source series ("OPT", "OPT_5", an expression, ...).
    std::string family;
    SeriesExpr source;
    std::uint64_t step = 1;
    std::uint64_t offset = 0;
    std::uint64_t modulus = 2;
    ClaimKind kind = ClaimKind::Vanishing;
    SeriesExpr target;
    std::uint64_t target_step = 1;
    std::uint64_t target_offset = 0;
    Params params;
    /// Set when a side condition of the template fails; the claim is reported
    /// as skipped without being checked.
    std::optional<std::string> skip_reason;
};

/// Vanishing claim on a counting family.
ProgressionClaim progression_claim(const FamilySpec& family, std::uint64_t step, std::uint64_t offset,
                                   std::uint64_t modulus, std::string label, Params params = {});

/// The deliberately false claim OPT(4n+1) == 0 (mod 4), used to exercise
/// failure reporting.
ProgressionClaim false_claim_fixture();

/// Claims with fewer progression terms below N than this are skipped.
inline constexpr std::uint64_t kMinTerms = 10;

/// Number of n >= 0 with step*n + offset < order.
std::uint64_t progression_terms(std::uint64_t step, std::uint64_t offset, std::size_t order) noexcept;

/// Checks one claim against a series already computed in Mod(claim.modulus)
/// to at least `order` terms.
VerificationReport check_claim_on(const ProgressionClaim& claim, const Series& source, std::size_t order);

VerificationReport check_claim(const ProgressionClaim& claim, std::size_t order);

enum class SuiteId { T1, T2, T3, T4, T5, T6, T7, T8, T9, T10, Lemma7, Regressions, All };

SuiteId parse_suite(std::string_view name);
std::string to_string(SuiteId id);

/// Parameter boxes for the named suites; unset fields use the defaults.
struct ParamBox {
    std::optional<std::vector<std::uint64_t>> alpha;   // T1-T3, T4, T9, T10
    std::optional<std::vector<std::uint64_t>> delta;   // T4, T9, T10
    std::optional<std::vector<std::uint64_t>> primes;  // T4 (both families), T7, T9, T10
    std::optional<std::vector<std::uint64_t>> k;       // T5 tuple sizes; T6-T8, T10 index k of OPT_{2k+1}
    std::optional<std::vector<std::uint64_t>> t;       // LEMMA7 odd exponents
};

/// The claims of a suite in their deterministic order.
std::vector<ProgressionClaim> suite_claims(SuiteId suite, const ParamBox& box = {});

/// Progression index of the T4 mod-4 family in nested form:
/// 2*3^{2a}*p^{2d+1}*(p*n + t) + 3^{2a}*p^{2(d+1)}.
std::uint64_t t4_mod4_index(std::uint64_t p, unsigned alpha, unsigned delta, std::uint64_t t, std::uint64_t n);
/// 8*3^{2a}*p^{2d+1}*(p*n + r) + 3^{2a}*p^{2(d+1)}.
std::uint64_t t4_mod8_index(std::uint64_t p, unsigned alpha, unsigned delta, std::uint64_t r, std::uint64_t n);
/// 8*3^{2a}*p^{2d+1}*(p*n + t) + 2*3^{2a}*p^{2(d+1)} + 3^{2a} - 1.
std::uint64_t t9_index(std::uint64_t p, unsigned alpha, unsigned delta, std::uint64_t t, std::uint64_t n);

struct SuiteOptions {
    /// 0 picks the hardware concurrency.
    unsigned threads = 0;
    /// When false every elapsed_ms is reported as 0, for byte-stable output.
    bool timing = true;
};

/// Checks every claim, computing each distinct source series once and
/// sharing it read-only across workers. Reports follow claim order.
std::vector<VerificationReport> run_claims(const std::vector<ProgressionClaim>& claims, std::size_t order,
                                           const SuiteOptions& options = {});

std::vector<VerificationReport> run_suite(SuiteId suite, std::size_t order, const SuiteOptions& options = {},
                                          const ParamBox& box = {});

struct ScanResult {
    std::string family;
    std::uint64_t step = 1;
    std::uint64_t offset = 0;
    /// Largest e <= 63 with 2^e dividing every checked coefficient. Index 0
    /// (the constant term 1) is never checked.
    unsigned exponent = 0;
    std::uint64_t terms = 0;
    /// First index attaining the minimal valuation (absent when every
    /// coefficient vanishes modulo 2^63 or no terms were checked).
    std::optional<std::uint64_t> witness_index;
    /// The witness coefficient modulo 2^63.
    std::uint64_t witness_residue = 0;
};

ScanResult scan_divisibility(const SeriesExpr& source, std::string family, std::uint64_t step, std::uint64_t offset,
                             std::size_t order);
ScanResult scan_divisibility(const FamilySpec& family, std::uint64_t step, std::uint64_t offset, std::size_t order);

struct ConjectureScanRow {
    unsigned i = 0;
    std::uint64_t r = 0;
    std::uint64_t j = 0;
    unsigned conjectured = 0;
    ScanResult scan;
    bool shortfall() const noexcept { return scan.exponent < conjectured; }
};

/// Exponent conjectured for OPT_{2^i r}(8n + j), j = 1..7.
unsigned conjectured_exponent(unsigned i, std::uint64_t j);

/// The grid i in {1, 2}, r in {1, 3}, j = 1..7 by default.
std::vector<ConjectureScanRow> conjecture_scan(std::size_t order, const std::vector<unsigned>& is = {1, 2},
                                               const std::vector<std::uint64_t>& rs = {1, 3},
                                               const SuiteOptions& options = {});

}  // namespace qcong
