#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qcong/number_theory.hpp"
#include "qcong/verifier.hpp"

using namespace qcong;
using qcong::testing::opt_k_direct;

namespace {

std::int64_t param(const ProgressionClaim& c, const std::string& key)
{
    for (const auto& [k, v] : c.params) {
        if (k == key) {
            return std::get<std::int64_t>(v);
        }
    }
    FAIL("missing param " << key);
    return -1;
}

bool all_pass(const std::vector<VerificationReport>& reps)
{
    return std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.status != Status::Fail; });
}

std::size_t count(const std::vector<VerificationReport>& reps, Status s)
{
    return static_cast<std::size_t>(
        std::count_if(reps.begin(), reps.end(), [s](const auto& r) { return r.status == s; }));
}

ProgressionClaim opt4_congruence(std::uint64_t step, std::uint64_t offset, SeriesExpr target)
{
    auto c = progression_claim(FamilySpec::opt_k(4), step, offset, 16, "OPT_4 chain");
    c.kind = ClaimKind::Congruence;
    c.target = std::move(target);
    return c;
}

}  // namespace

TEST_CASE("progression term counts")
{
    CHECK(progression_terms(4, 3, 20) == 5);  // 3 7 11 15 19
    CHECK(progression_terms(4, 3, 19) == 4);
    CHECK(progression_terms(1, 0, 10) == 10);
    CHECK(progression_terms(5, 12, 10) == 0);
    CHECK(progression_terms(0, 0, 10) == 0);
}

TEST_CASE("the injected false claim fails at index 1 with value 2")
{
    auto rep = check_claim(false_claim_fixture(), 100);
    CHECK(rep.status == Status::Fail);
    REQUIRE(rep.counterexample);
    CHECK(rep.counterexample->n == 0);
    CHECK(rep.counterexample->index == 1);
    CHECK(rep.counterexample->value == 2);
    CHECK(opt_k_direct(3, 2, 1000)[1] == 6);
}

TEST_CASE("vanishing claims agree with the direct product")
{
    const std::size_t order = 400;
    for (unsigned k : {1u, 3u, 5u, 7u}) {
        auto direct = opt_k_direct(k, order, 16);
        for (std::uint64_t j = 1; j <= 7; ++j) {
            for (std::uint64_t m : {2, 4, 8, 16}) {
                bool vanishes = true;
                for (std::size_t i = j; i < order; i += 8) {
                    vanishes = vanishes && direct[i] % static_cast<wide_int>(m) == 0;
                }
                auto rep = check_claim(progression_claim(FamilySpec::opt_k(k), 8, j, m, "probe"), order);
                CHECK(rep.terms_checked == progression_terms(8, j, order));
                CHECK((rep.status == Status::Pass) == vanishes);
            }
        }
    }
}

TEST_CASE("too few terms is skipped, not passed")
{
    auto rep = check_claim(progression_claim(FamilySpec::opt(), 100, 3, 4, "sparse"), 800);
    CHECK(rep.terms_checked == 8);
    CHECK(rep.status == Status::Skipped);
}

TEST_CASE("suite names")
{
    for (auto id : {SuiteId::T1, SuiteId::T7, SuiteId::T10, SuiteId::Lemma7, SuiteId::Regressions, SuiteId::All}) {
        CHECK(parse_suite(to_string(id)) == id);
    }
    CHECK_THROWS_AS(parse_suite("T11"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite("t1"), std::invalid_argument);
}

TEST_CASE("T4 instances have the expected progressions")
{
    ParamBox box;
    box.primes = {3};
    box.alpha = {0};
    box.delta = {0};
    auto claims = suite_claims(SuiteId::T4, box);
    REQUIRE(claims.size() == 2 + 2);
    CHECK(claims[0].step == 18);
    CHECK(claims[0].offset == 15);
    CHECK(claims[0].modulus == 4);
    CHECK(claims[1].offset == 21);
    // p = 3 is below the mod-8 family's range
    CHECK(claims[2].skip_reason);
    CHECK(claims[2].modulus == 8);

    box.primes = {5};
    claims = suite_claims(SuiteId::T4, box);
    REQUIRE(claims.size() == 8);
    CHECK(claims[4].step == 200);
    CHECK(claims[4].offset == 65);
    CHECK(claims[4].modulus == 8);
}

TEST_CASE("mod-8 side conditions")
{
    ParamBox box;
    box.alpha = {0};
    box.delta = {0};
    box.primes = {11, 9};  // (-2/11) = 1 and 9 is composite
    CHECK(legendre(-2, 11) == 1);
    for (const auto& c : suite_claims(SuiteId::T4, box)) {
        if (c.modulus == 8) {
            CHECK(c.skip_reason);
        }
    }
    auto reps = run_suite(SuiteId::T4, 500, {}, box);
    CHECK(count(reps, Status::Pass) == 0);
    CHECK(count(reps, Status::Fail) == 0);
}

TEST_CASE("T7 instance p=5, r=2 is 10n+7")
{
    ParamBox box;
    box.k = {0};
    box.primes = {5};
    auto claims = suite_claims(SuiteId::T7, box);
    REQUIRE(claims.size() == 2);  // nonresidues 2 and 3
    CHECK(param(claims[0], "r") == 2);
    CHECK(claims[0].step == 10);
    CHECK(claims[0].offset == 7);
    CHECK(claims[1].offset == 3);
    CHECK(all_pass(run_claims(claims, 4000)));
}

TEST_CASE("claim templates match the nested index forms")
{
    std::mt19937_64 rng(20261015);
    const std::uint64_t primes[] = {3, 5, 7, 11, 13};
    for (int trial = 0; trial < 100; ++trial) {
        const std::uint64_t p = primes[rng() % 5];
        const unsigned a = rng() % 2;
        const unsigned d = rng() % 2;
        const std::uint64_t n = rng() % 50;
        ParamBox box;
        box.primes = {p};
        box.alpha = {a};
        box.delta = {d};
        for (const auto& c : suite_claims(SuiteId::T4, box)) {
            if (c.skip_reason) {
                continue;
            }
            if (c.modulus == 4) {
                const auto t = static_cast<std::uint64_t>(param(c, "t"));
                CHECK(c.step * n + c.offset == t4_mod4_index(p, a, d, t, n));
            } else {
                const auto r = static_cast<std::uint64_t>(param(c, "r"));
                CHECK(c.step * n + c.offset == t4_mod8_index(p, a, d, r, n));
            }
        }
        for (const auto& c : suite_claims(SuiteId::T9, box)) {
            const auto t = static_cast<std::uint64_t>(param(c, "t"));
            CHECK(c.step * n + c.offset == t9_index(p, a, d, t, n));
        }
        box.k = {1};
        for (const auto& c : suite_claims(SuiteId::T10, box)) {
            const auto t = static_cast<std::uint64_t>(param(c, "t"));
            CHECK(c.step * n + c.offset == t4_mod4_index(p, a, d, t, n));
        }
    }
    CHECK(t4_mod4_index(3, 0, 0, 1, 0) == 15);
    CHECK(t4_mod4_index(3, 0, 0, 1, 1) == 33);
}

TEST_CASE("T5 moduli")
{
    auto claims = suite_claims(SuiteId::T5);
    REQUIRE(claims.size() == 5);
    const std::uint64_t expected[] = {4, 8, 4, 16, 8};  // k = 2, 4, 6, 8, 12
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(claims[i].modulus == expected[i]);
        CHECK(claims[i].offset == 1);
    }
    CHECK(all_pass(run_claims(claims, 1500)));
    ParamBox box;
    box.k = {3};
    CHECK(suite_claims(SuiteId::T5, box)[0].skip_reason);
}

TEST_CASE("odd tuple sizes inherit the square support of PBAR_O mod 4")
{
    // OPT_{2k+1} == PBAR_O (mod 4), so the support characterization transfers.
    for (unsigned k : {1u, 3u, 5u, 7u}) {
        auto c = progression_claim(FamilySpec::opt_k(k), 1, 1, 4, "support");
        c.kind = ClaimKind::SquareSupport;
        CHECK(check_claim(c, 1500).status == Status::Pass);
    }
    auto even = progression_claim(FamilySpec::opt_k(2), 1, 1, 4, "support");
    even.kind = ClaimKind::SquareSupport;
    CHECK(check_claim(even, 100).status == Status::Fail);
    CHECK(all_pass(run_suite(SuiteId::T6, 2000)));
}

TEST_CASE("T7 and T8 claims transfer to PBAR_O mod 4")
{
    std::vector<ProgressionClaim> on_opt;
    std::vector<ProgressionClaim> on_pbar;
    for (auto id : {SuiteId::T7, SuiteId::T8}) {
        for (auto c : suite_claims(id)) {
            c.modulus = std::min<std::uint64_t>(c.modulus, 4);
            on_opt.push_back(c);
            c.source = SeriesExpr::family(FamilySpec::pbar_o());
            on_pbar.push_back(c);
        }
    }
    auto a = run_claims(on_opt, 2500);
    auto b = run_claims(on_pbar, 2500);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        INFO(a[i].label);
        CHECK(a[i].status == b[i].status);
        CHECK(a[i].status == Status::Pass);
    }
}

TEST_CASE("T8 at k=1: OPT_3(8n+7) == 0 mod 16")
{
    ParamBox box;
    box.k = {1};
    auto reps = run_suite(SuiteId::T8, 4000, {}, box);
    REQUIRE(reps.size() == 7);
    CHECK(reps[6].modulus == 16);
    CHECK(reps[6].offset == 7);
    CHECK(reps[6].status == Status::Pass);
    CHECK(all_pass(reps));
}

TEST_CASE("T1-T3 and the LEMMA7 classes")
{
    for (auto id : {SuiteId::T1, SuiteId::T2, SuiteId::T3}) {
        auto reps = run_suite(id, 5000);
        CHECK(reps.size() == 5);
        CHECK(count(reps, Status::Pass) == 5);
    }
    auto lemma = run_suite(SuiteId::Lemma7, 1000);
    CHECK(lemma.size() == 21);
    CHECK(count(lemma, Status::Pass) == 21);
}

TEST_CASE("regression chains")
{
    auto reps = run_suite(SuiteId::Regressions, 3000);
    CHECK(reps.size() > 60);
    for (const auto& r : reps) {
        INFO(r.label);
        CHECK(r.status != Status::Fail);
    }
    CHECK(count(reps, Status::Pass) > 50);
}

TEST_CASE("the displayed OPT_4 intermediate chain is false; its corrected forms hold")
{
    auto shown = check_claim(opt4_congruence(2, 1, SeriesExpr::eta({{32, 1}}, 8)), 3000);
    CHECK(shown.status == Status::Fail);
    REQUIRE(shown.counterexample);
    CHECK(shown.counterexample->index == 9);
    CHECK(check_claim(opt4_congruence(8, 1, SeriesExpr::eta({{2, 3}}, 8)), 3000).status == Status::Fail);

    CHECK(check_claim(opt4_congruence(2, 1, SeriesExpr::eta({{1, 4}, {2, 4}}, 8)), 3000).status == Status::Pass);
    CHECK(check_claim(opt4_congruence(2, 1, SeriesExpr::eta({{4, 1}, {8, 1}}, 8)), 3000).status == Status::Pass);
    CHECK(check_claim(opt4_congruence(8, 1, SeriesExpr::eta({{1, 1}, {2, 1}}, 8)), 3000).status == Status::Pass);
    CHECK(check_claim(opt4_congruence(4, 3, {}), 3000).status == Status::Pass);
}

TEST_CASE("T9 and T10 sample")
{
    ParamBox box;
    box.primes = {3, 5};
    box.alpha = {0};
    box.delta = {0};
    auto t9 = run_suite(SuiteId::T9, 6000, {}, box);
    CHECK(count(t9, Status::Pass) == 6);
    auto t10 = run_suite(SuiteId::T10, 6000, {}, box);
    CHECK(count(t10, Status::Pass) == 12);
}

TEST_CASE("parallel runs reproduce the serial reports")
{
    auto claims = suite_claims(SuiteId::All);
    claims.push_back(false_claim_fixture());
    auto one = run_claims(claims, 1200, {1, false});
    auto many = run_claims(claims, 1200, {8, false});
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].label == many[i].label);
        CHECK(one[i].status == many[i].status);
        CHECK(one[i].terms_checked == many[i].terms_checked);
        CHECK(one[i].elapsed_ms == 0);
        CHECK(one[i].counterexample.has_value() == many[i].counterexample.has_value());
    }
    CHECK(one.back().status == Status::Fail);
}

TEST_CASE("2-adic scans")
{
    auto opt = scan_divisibility(FamilySpec::opt(), 2, 0, 500);
    CHECK(opt.terms == 249);
    CHECK(opt.exponent >= 1);

    auto two = scan_divisibility(FamilySpec::opt_k(2), 8, 2, 2000);
    CHECK(two.exponent >= 3);
    auto four = scan_divisibility(FamilySpec::opt_k(4), 8, 7, 2000);
    CHECK(four.exponent >= 6);

    // Independent valuation from the direct product mod 2^20.
    auto direct = opt_k_direct(2, 600, wide_int{1} << 20);
    unsigned least = 63;
    for (std::size_t i = 4; i < 600; i += 8) {
        least = std::min(least, v2(direct[i], 20));
    }
    CHECK(scan_divisibility(FamilySpec::opt_k(2), 8, 4, 600).exponent == least);
}

TEST_CASE("conjecture scan reports the j=4 shortfall at i=1 with a witness")
{
    auto rows = conjecture_scan(2000);
    REQUIRE(rows.size() == 28);
    std::size_t shortfalls = 0;
    for (const auto& row : rows) {
        INFO("i=" << row.i << " r=" << row.r << " j=" << row.j);
        CHECK(row.scan.step == 8);
        CHECK(row.scan.offset == row.j);
        if (row.shortfall()) {
            ++shortfalls;
            CHECK(row.i == 1);
            CHECK(row.j == 4);
            REQUIRE(row.scan.witness_index);
            CHECK(*row.scan.witness_index == 4);
            CHECK(row.scan.exponent == 5);
        }
    }
    CHECK(shortfalls == 2);
    CHECK(opt_k_direct(2, 5, 1000)[4] == 32);
    CHECK(conjectured_exponent(1, 4) == 6);
    CHECK_THROWS(conjectured_exponent(1, 8));
}
