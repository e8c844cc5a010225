#include "qcong/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "qcong/dissection.hpp"
#include "qcong/oracle.hpp"
#include "qcong/verifier.hpp"

namespace qcong {

namespace {

using ordered_json = nlohmann::ordered_json;

// Integers that fit are emitted as JSON numbers, the rest as decimal strings.
ordered_json wide_json(wide_int v)
{
    if (auto small = to_int64(v)) {
        return *small;
    }
    return to_string(v);
}

ordered_json params_json(const Params& params)
{
    ordered_json obj = ordered_json::object();
    for (const auto& [k, v] : params) {
        if (const auto* i = std::get_if<std::int64_t>(&v)) {
            obj[k] = *i;
        } else {
            obj[k] = std::get<std::string>(v);
        }
    }
    return obj;
}

std::string params_text(const Params& params)
{
    std::string s;
    for (const auto& [k, v] : params) {
        if (!s.empty()) {
            s += ";";
        }
        s += k + "=";
        if (const auto* i = std::get_if<std::int64_t>(&v)) {
            s += std::to_string(*i);
        } else {
            s += std::get<std::string>(v);
        }
    }
    return s;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char c : s) {
        q += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return q + "\"";
}

std::string render_json(const std::vector<VerificationReport>& reports)
{
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json o;
        o["label"] = r.label;
        o["family"] = r.family;
        o["params"] = params_json(r.params);
        o["step"] = r.step;
        o["offset"] = r.offset;
        o["modulus"] = r.modulus;
        o["terms_checked"] = r.terms_checked;
        o["status"] = std::string(to_string(r.status));
        if (r.counterexample) {
            o["counterexample"] = {{"n", r.counterexample->n},
                                   {"index", r.counterexample->index},
                                   {"value", wide_json(r.counterexample->value)}};
        } else {
            o["counterexample"] = nullptr;
        }
        o["elapsed_ms"] = r.elapsed_ms;
        arr.push_back(std::move(o));
    }
    return arr.dump(2) + "\n";
}

std::string render_csv(const std::vector<VerificationReport>& reports)
{
    std::string s = "label,family,params,step,offset,modulus,terms_checked,status,"
                    "counterexample_n,counterexample_index,counterexample_value,elapsed_ms\n";
    for (const auto& r : reports) {
        s += csv_field(r.label) + "," + csv_field(r.family) + "," + csv_field(params_text(r.params)) + ",";
        s += std::to_string(r.step) + "," + std::to_string(r.offset) + "," + std::to_string(r.modulus) + ",";
        s += std::to_string(r.terms_checked) + "," + std::string(to_string(r.status)) + ",";
        if (r.counterexample) {
            s += std::to_string(r.counterexample->n) + "," + std::to_string(r.counterexample->index) + "," +
                 to_string(r.counterexample->value);
        } else {
            s += ",,";
        }
        s += "," + std::to_string(r.elapsed_ms) + "\n";
    }
    return s;
}

std::string render_table(const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) {
            width[i] = std::max(width[i], row[i].size());
        }
    }
    std::string s;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            line += row[i];
            if (i + 1 < row.size()) {
                line += std::string(width[i] - row[i].size() + 2, ' ');
            }
        }
        s += line + "\n";
    }
    return s;
}

std::string render_text(const std::vector<VerificationReport>& reports)
{
    std::vector<std::vector<std::string>> rows = {
        {"status", "label", "terms", "step", "offset", "mod", "counterexample", "ms"}};
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& r : reports) {
        ++counts[static_cast<int>(r.status)];
        std::string cex = "-";
        if (r.counterexample) {
            cex = "n=" + std::to_string(r.counterexample->n) + " index=" + std::to_string(r.counterexample->index) +
                  " value=" + to_string(r.counterexample->value);
        }
        rows.push_back({std::string(to_string(r.status)), r.label, std::to_string(r.terms_checked),
                        std::to_string(r.step), std::to_string(r.offset), std::to_string(r.modulus), cex,
                        std::to_string(r.elapsed_ms)});
    }
    return render_table(rows) + std::to_string(counts[0]) + " pass, " + std::to_string(counts[1]) + " fail, " +
           std::to_string(counts[2]) + " skipped\n";
}

bool any_failed(const std::vector<VerificationReport>& reports)
{
    return std::any_of(reports.begin(), reports.end(), [](const auto& r) { return r.status == Status::Fail; });
}

unsigned default_threads()
{
    const char* env = std::getenv(kThreadsEnv);
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v > 1024) {
        throw std::invalid_argument(std::string(kThreadsEnv) + " must be an integer in [0, 1024]");
    }
    return static_cast<unsigned>(v);
}

struct Common {
    std::size_t order = 2000;
    std::string format = "text";
    std::string output;
};

void add_common(CLI::App* cmd, Common& c, std::size_t default_order)
{
    c.order = default_order;
    cmd->add_option("--order,-N", c.order, "Number of coefficients q^0 .. q^{N-1}")
        ->check(CLI::Range(std::size_t{2}, std::size_t{10'000'000}))
        ->capture_default_str();
    cmd->add_option("--format", c.format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}))
        ->capture_default_str();
    cmd->add_option("--output,-o", c.output, "Output file (default: standard output)");
}

FamilySpec family_from(const std::string& name, unsigned k)
{
    return FamilySpec::parse(name, k);
}

int cmd_expand(const Common& c, const std::string& family, unsigned k, std::optional<std::uint64_t> modulus,
               std::ostream& out)
{
    const FamilySpec fam = family_from(family, k);
    const CoeffRing ring = modulus ? CoeffRing::mod(*modulus) : CoeffRing::exact();
    const Series s = family_series(fam, c.order, ring);
    const OutputFormat fmt = parse_format(c.format);
    std::string text;
    if (fmt == OutputFormat::Json) {
        ordered_json o;
        o["family"] = fam.name();
        o["order"] = c.order;
        o["modulus"] = modulus ? ordered_json(*modulus) : ordered_json(nullptr);
        ordered_json coeffs = ordered_json::array();
        for (std::size_t n = 0; n < s.order(); ++n) {
            coeffs.push_back(wide_json(s.coeff(n)));
        }
        o["coefficients"] = std::move(coeffs);
        text = o.dump(2) + "\n";
    } else if (fmt == OutputFormat::Csv) {
        text = "n,coefficient\n";
        for (std::size_t n = 0; n < s.order(); ++n) {
            text += std::to_string(n) + "," + to_string(s.coeff(n)) + "\n";
        }
    } else {
        std::vector<std::vector<std::string>> rows = {{"n", fam.name() + "(n)" + (modulus ? " mod " + std::to_string(*modulus) : "")}};
        for (std::size_t n = 0; n < s.order(); ++n) {
            rows.push_back({std::to_string(n), to_string(s.coeff(n))});
        }
        text = render_table(rows);
    }
    write_output(text, c.output, out);
    return kExitOk;
}

int cmd_verify(const Common& c, const std::string& suite, const ParamBox& box, const SuiteOptions& opts,
               bool inject_false, std::ostream& out)
{
    auto claims = suite_claims(parse_suite(suite), box);
    if (inject_false) {
        claims.push_back(false_claim_fixture());
    }
    const auto reports = run_claims(claims, c.order, opts);
    emit_report(reports, parse_format(c.format), c.output, out);
    return any_failed(reports) ? kExitClaimFailed : kExitOk;
}

ordered_json scan_json(const ScanResult& r)
{
    ordered_json o;
    o["family"] = r.family;
    o["step"] = r.step;
    o["offset"] = r.offset;
    o["exponent"] = r.exponent;
    o["terms"] = r.terms;
    o["witness_index"] = r.witness_index ? ordered_json(*r.witness_index) : ordered_json(nullptr);
    o["witness_residue"] = r.witness_index ? ordered_json(r.witness_residue) : ordered_json(nullptr);
    return o;
}

std::string witness_text(const ScanResult& r)
{
    return r.witness_index ? std::to_string(*r.witness_index) : "-";
}

int cmd_scan(const Common& c, const std::string& family, unsigned k, std::uint64_t step, std::uint64_t offset,
             bool conjecture, const std::vector<unsigned>& is, const std::vector<std::uint64_t>& rs,
             const SuiteOptions& opts, std::ostream& out)
{
    const OutputFormat fmt = parse_format(c.format);
    std::string text;
    if (conjecture) {
        const auto rows = conjecture_scan(c.order, is, rs, opts);
        if (fmt == OutputFormat::Json) {
            ordered_json arr = ordered_json::array();
            for (const auto& row : rows) {
                ordered_json o;
                o["i"] = row.i;
                o["r"] = row.r;
                o["j"] = row.j;
                o["conjectured"] = row.conjectured;
                o["shortfall"] = row.shortfall();
                o["scan"] = scan_json(row.scan);
                arr.push_back(std::move(o));
            }
            text = ordered_json{{"banner", kEmpiricalBanner}, {"order", c.order}, {"results", arr}}.dump(2) + "\n";
        } else if (fmt == OutputFormat::Csv) {
            text = std::string("# ") + kEmpiricalBanner + "\n";
            text += "i,r,j,family,step,offset,conjectured,exponent,terms,witness_index,shortfall\n";
            for (const auto& row : rows) {
                text += std::to_string(row.i) + "," + std::to_string(row.r) + "," + std::to_string(row.j) + "," +
                        row.scan.family + ",8," + std::to_string(row.j) + "," + std::to_string(row.conjectured) +
                        "," + std::to_string(row.scan.exponent) + "," + std::to_string(row.scan.terms) + "," +
                        (row.scan.witness_index ? std::to_string(*row.scan.witness_index) : "") + "," +
                        (row.shortfall() ? "true" : "false") + "\n";
            }
        } else {
            std::vector<std::vector<std::string>> table = {
                {"family", "progression", "conjectured", "observed", "terms", "witness", "note"}};
            for (const auto& row : rows) {
                table.push_back({row.scan.family, "8n+" + std::to_string(row.j),
                                 "2^" + std::to_string(row.conjectured), "2^" + std::to_string(row.scan.exponent),
                                 std::to_string(row.scan.terms), witness_text(row.scan),
                                 row.shortfall() ? "SHORTFALL" : ""});
            }
            text = std::string(kEmpiricalBanner) + " (indices < " + std::to_string(c.order) + ")\n" +
                   render_table(table);
        }
    } else {
        if (step == 0) {
            throw std::invalid_argument("--step must be positive");
        }
        const auto r = scan_divisibility(family_from(family, k), step, offset, c.order);
        if (fmt == OutputFormat::Json) {
            text = ordered_json{{"banner", kEmpiricalBanner}, {"order", c.order}, {"results", {scan_json(r)}}}.dump(2) +
                   "\n";
        } else if (fmt == OutputFormat::Csv) {
            text = std::string("# ") + kEmpiricalBanner + "\nfamily,step,offset,exponent,terms,witness_index\n" +
                   r.family + "," + std::to_string(r.step) + "," + std::to_string(r.offset) + "," +
                   std::to_string(r.exponent) + "," + std::to_string(r.terms) + "," +
                   (r.witness_index ? std::to_string(*r.witness_index) : "") + "\n";
        } else {
            text = std::string(kEmpiricalBanner) + " (indices < " + std::to_string(c.order) + ")\n" +
                   render_table({{"family", "progression", "observed", "terms", "witness"},
                                 {r.family, std::to_string(r.step) + "n+" + std::to_string(r.offset),
                                  "2^" + std::to_string(r.exponent), std::to_string(r.terms), witness_text(r)}});
        }
    }
    write_output(text, c.output, out);
    return kExitOk;
}

int cmd_cross_check(const Common& c, const std::string& family, unsigned k, std::optional<std::size_t> n_max,
                    std::ostream& out)
{
    std::vector<VerificationReport> reports;
    if (!family.empty()) {
        reports.push_back(cross_check(family_from(family, k), n_max.value_or(200)));
    } else {
        reports.push_back(cross_check(FamilySpec::opt(), n_max.value_or(300)));
        for (unsigned kk = 1; kk <= 5; ++kk) {
            reports.push_back(cross_check(FamilySpec::opt_k(kk), n_max.value_or(200)));
        }
        for (unsigned kk = 1; kk <= 2; ++kk) {
            reports.push_back(cross_check(FamilySpec::pbar_k(kk), n_max.value_or(200)));
        }
    }
    emit_report(reports, parse_format(c.format), c.output, out);
    return any_failed(reports) ? kExitClaimFailed : kExitOk;
}

int cmd_identities(const Common& c, const std::vector<std::string>& names, std::ostream& out)
{
    std::vector<VerificationReport> reports;
    if (!names.empty()) {
        for (const auto& n : names) {
            reports.push_back(verify_identity(IdentityId::parse(n), c.order));
        }
    } else {
        for (const auto& id : identity_catalog()) {
            reports.push_back(verify_identity(id, c.order));
        }
        for (std::uint64_t p : {5, 7, 11}) {
            reports.push_back(pdissect_f1_check(p, c.order));
        }
        for (std::uint64_t p : {3, 5, 7, 11}) {
            reports.push_back(pdissect_f1cubed_check(p, c.order));
        }
    }
    emit_report(reports, parse_format(c.format), c.output, out);
    return any_failed(reports) ? kExitClaimFailed : kExitOk;
}

}  // namespace

OutputFormat parse_format(std::string_view name)
{
    if (name == "text") {
        return OutputFormat::Text;
    }
    if (name == "json") {
        return OutputFormat::Json;
    }
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    throw std::invalid_argument("unknown format: " + std::string(name));
}

std::string render_reports(const std::vector<VerificationReport>& reports, OutputFormat format)
{
    switch (format) {
    case OutputFormat::Json:
        return render_json(reports);
    case OutputFormat::Csv:
        return render_csv(reports);
    case OutputFormat::Text:
        break;
    }
    return render_text(reports);
}

void write_output(const std::string& text, const std::string& path, std::ostream& fallback)
{
    if (path.empty() || path == "-") {
        fallback << text;
        fallback.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw OutputError("cannot open output file: " + path);
    }
    file << text;
    file.flush();
    if (!file) {
        throw OutputError("cannot write output file: " + path);
    }
}

void emit_report(const std::vector<VerificationReport>& reports, OutputFormat format, const std::string& path,
                 std::ostream& fallback)
{
    write_output(render_reports(reports, format), path, fallback);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Verify 2-adic congruences for overpartition families by q-series expansion", "qcong"};
    app.require_subcommand(1);

    Common expand_opts, verify_opts, scan_opts, xcheck_opts, ident_opts;
    std::string family;
    unsigned k = 1;
    std::optional<std::uint64_t> modulus;
    std::string suite = "ALL";
    ParamBox box;
    std::vector<std::uint64_t> alpha, delta, primes, ks, ts;
    std::optional<unsigned> threads;
    bool no_timing = false;
    bool inject_false = false;
    std::uint64_t step = 1;
    std::uint64_t offset = 0;
    bool conjecture = false;
    std::vector<unsigned> scan_is = {1, 2};
    std::vector<std::uint64_t> scan_rs = {1, 3};
    std::optional<std::size_t> n_max;
    std::vector<std::string> identity_names;

    auto add_threads = [&](CLI::App* cmd) {
        cmd->add_option("--threads,-j", threads, std::string("Worker threads, 0 = all cores (default from ") +
                                                     kThreadsEnv + ")");
    };
    auto add_family = [&](CLI::App* cmd, bool required) {
        auto* opt = cmd->add_option("--family,-f", family, "P, PBAR, PBAR_K, OPT, OPT_K or PBAR_O");
        if (required) {
            opt->required();
        }
        cmd->add_option("--k", k, "Tuple size for OPT_K and PBAR_K")->check(CLI::Range(1u, 1000u));
    };

    auto* expand = app.add_subcommand("expand", "Print coefficients of a family generating function");
    add_family(expand, true);
    add_common(expand, expand_opts, 2000);
    expand->add_option("--mod,-m", modulus, "Reduce coefficients modulo m (2 <= m <= 2^63)")
        ->check(CLI::Range(std::uint64_t{2}, CoeffRing::kMaxModulus));

    auto* verify = app.add_subcommand("verify", "Check a congruence suite");
    add_common(verify, verify_opts, 2000);
    verify->add_option("--suite,-s", suite, "T1..T10, LEMMA7, REGRESSIONS or ALL")->capture_default_str();
    verify->add_option("--alpha", alpha, "Override the alpha values")->delimiter(',');
    verify->add_option("--delta", delta, "Override the delta values")->delimiter(',');
    verify->add_option("--primes", primes, "Override the primes")->delimiter(',');
    verify->add_option("--k", ks, "Override the k values")->delimiter(',');
    verify->add_option("--t", ts, "Override the LEMMA7 exponents")->delimiter(',');
    verify->add_flag("--no-timing", no_timing, "Report elapsed_ms as 0 for reproducible output");
    verify->add_flag("--inject-false", inject_false, "Append the false claim OPT(4n+1) == 0 (mod 4)");
    add_threads(verify);

    auto* scan = app.add_subcommand("scan", "Empirical 2-adic divisibility scan");
    add_common(scan, scan_opts, 2000);
    add_family(scan, false);
    scan->add_option("--step", step, "Progression step")->capture_default_str();
    scan->add_option("--offset", offset, "Progression offset")->capture_default_str();
    scan->add_flag("--conjecture", conjecture, "Scan OPT_{2^i r}(8n+j) against the conjectured exponents");
    scan->add_option("--i", scan_is, "i values for --conjecture")->delimiter(',');
    scan->add_option("--r", scan_rs, "Odd r values for --conjecture")->delimiter(',');
    add_threads(scan);

    auto* xcheck = app.add_subcommand("cross-check", "Compare series coefficients with the counting DP");
    add_common(xcheck, xcheck_opts, 2000);
    add_family(xcheck, false);
    xcheck->add_option("--nmax", n_max, "Largest n compared");

    auto* idents = app.add_subcommand("identities", "Check the dissection identity catalog");
    add_common(idents, ident_opts, 1000);
    idents->add_option("--id", identity_names, "Identity names, e.g. PHI_2DISSECT or BINOMIAL_PL(k=1,p=2,l=3)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        SuiteOptions opts;
        opts.threads = threads ? *threads : default_threads();
        opts.timing = !no_timing;
        if (!alpha.empty()) {
            box.alpha = alpha;
        }
        if (!delta.empty()) {
            box.delta = delta;
        }
        if (!primes.empty()) {
            box.primes = primes;
        }
        if (!ks.empty()) {
            box.k = ks;
        }
        if (!ts.empty()) {
            box.t = ts;
        }
        if (expand->parsed()) {
            return cmd_expand(expand_opts, family, k, modulus, out);
        }
        if (verify->parsed()) {
            return cmd_verify(verify_opts, suite, box, opts, inject_false, out);
        }
        if (scan->parsed()) {
            if (!conjecture && family.empty()) {
                throw std::invalid_argument("scan needs --family or --conjecture");
            }
            return cmd_scan(scan_opts, family, k, step, offset, conjecture, scan_is, scan_rs, opts, out);
        }
        if (xcheck->parsed()) {
            return cmd_cross_check(xcheck_opts, family, k, n_max, out);
        }
        return cmd_identities(ident_opts, identity_names, out);
    } catch (const OverflowError& e) {
        err << "error: " << e.what() << " (retry with --mod)\n";
        return kExitInternal;
    } catch (const OutputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace qcong
