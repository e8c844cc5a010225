#pragma once

// Command-line front end: expand, verify, scan, cross-check, identities.

#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qcong/report.hpp"

namespace qcong {

enum ExitCode : int {
    kExitOk = 0,
    kExitClaimFailed = 1,
    kExitUsage = 2,
    kExitInternal = 3,
};

enum class OutputFormat { Text, Json, Csv };

OutputFormat parse_format(std::string_view name);

/// Environment variable holding the default worker count (0 = all cores).
inline constexpr const char* kThreadsEnv = "QCONG_THREADS";

inline constexpr const char* kEmpiricalBanner = "EMPIRICAL — checked range only";

class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// JSON array, CSV with a header row, or an aligned text table. JSON and CSV
/// depend only on the reports, so equal inputs give byte-identical output.
std::string render_reports(const std::vector<VerificationReport>& reports, OutputFormat format);

/// Writes to `path`, or to `fallback` when path is empty or "-".
/// Throws OutputError if the file cannot be written.
void write_output(const std::string& text, const std::string& path, std::ostream& fallback);

void emit_report(const std::vector<VerificationReport>& reports, OutputFormat format, const std::string& path,
                 std::ostream& fallback);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qcong
