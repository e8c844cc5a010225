#include <doctest.h>

#include "oracles.hpp"
#include "qcong/qseries.hpp"

using namespace qcong;
using qcong::testing::direct_euler;

namespace {

std::vector<wide_int> coeffs_of(const Series& s)
{
    std::vector<wide_int> out;
    for (std::size_t n = 0; n < s.order(); ++n) {
        out.push_back(s.coeff(n));
    }
    return out;
}

}  // namespace

TEST_CASE("euler_f matches the direct product")
{
    const auto ex = CoeffRing::exact();
    CHECK(coeffs_of(euler_f(1, 16, ex)) ==
          std::vector<wide_int>{1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1});
    CHECK(coeffs_of(euler_f(2, 3, ex)) == std::vector<wide_int>{1, 0, -1});
    for (std::uint64_t k : {1, 2, 3, 4, 8, 16}) {
        auto f = euler_f(k, 700, ex);
        CHECK(f.coeff(0) == 1);
        CHECK(coeffs_of(f) == direct_euler(k, 700));
        auto via_sub = substitute_power(euler_f(1, (700 + k - 1) / k, ex), k, 700);
        CHECK(eq_upto(f, via_sub, 700));
    }
    CHECK(euler_f(5, 1, CoeffRing::mod(4)).coeff(0) == 1);
    CHECK_THROWS(euler_f(0, 10, ex));
}

TEST_CASE("eta quotient specs")
{
    EtaQuotient e{{2, 9}, {1, -6}, {4, -3}, {2, -1}, {8, 0}};
    CHECK(e.exponent(2) == 8);
    CHECK(e.exponent(8) == 0);
    CHECK(e.factors().count(8) == 0);
    CHECK(e.total_degree() == 17);
    CHECK(EtaQuotient{{2, 9}, {1, -6}, {4, -3}}.to_string() == "f2^9/(f1^6*f4^3)");
    CHECK(EtaQuotient{{1, -1}}.to_string() == "1/f1");
    CHECK(EtaQuotient{}.to_string() == "1");
    CHECK((EtaQuotient{{1, 2}} * EtaQuotient{{1, -2}}).is_one());
    CHECK(EtaQuotient{{2, 1}, {1, -2}}.pow(3) == EtaQuotient{{2, 3}, {1, -6}});
    CHECK_THROWS(EtaQuotient{{0, 1}});
}

TEST_CASE("eta quotient expansions")
{
    const auto ex = CoeffRing::exact();
    CHECK(coeffs_of(eta_quotient({{1, -1}}, 5, ex)) == std::vector<wide_int>{1, 1, 2, 3, 5});
    CHECK(coeffs_of(eta_quotient({{2, 1}, {1, -2}}, 4, ex)) == std::vector<wide_int>{1, 2, 4, 8});
    CHECK(eta_quotient({{2, 9}, {1, -6}, {4, -3}}, 10, ex).coeff(1) == 6);

    // Independent route: multiply by (1-q^j) factors and divide by prefix sums.
    std::vector<wide_int> ref(200, 0);
    ref[0] = 1;
    for (std::size_t s = 2; s < 200; s += 2) {
        for (std::size_t n = 199; n >= s; --n) {
            ref[n] -= ref[n - s];
        }
    }
    for (int rep = 0; rep < 2; ++rep) {
        for (std::size_t s = 1; s < 200; ++s) {
            qcong::testing::divide_by_one_minus(ref, s);
        }
    }
    CHECK(coeffs_of(eta_quotient({{2, 1}, {1, -2}}, 200, ex)) == ref);

    // Exact and modular agree after reduction.
    auto opt_exact = eta_quotient({{2, 9}, {1, -6}, {4, -3}}, 300, ex);
    auto opt_mod = eta_quotient({{2, 9}, {1, -6}, {4, -3}}, 300, CoeffRing::mod(1 << 20));
    CHECK(eq_upto(reduce_mod(opt_exact, 1 << 20), opt_mod, 300));
}

TEST_CASE("phi and psi")
{
    const auto ex = CoeffRing::exact();
    CHECK(coeffs_of(phi(1, 10, ex)) == std::vector<wide_int>{1, 2, 0, 0, 2, 0, 0, 0, 0, 2});
    CHECK(coeffs_of(psi(1, 7, ex)) == std::vector<wide_int>{1, 1, 0, 1, 0, 0, 1});
    const std::size_t n = 2000;
    auto rhs = phi(4, n, ex) + shift(scale(psi(8, n, ex), 2), 1);
    CHECK(eq_upto(phi(1, n, ex), truncate(rhs, n), n));
}

TEST_CASE("theta_f")
{
    const auto ex = CoeffRing::exact();
    CHECK(eq_upto(theta_f(ThetaSpec(1, 1, 1, 1), 300, ex), phi(1, 300, ex), 300));
    CHECK(eq_upto(theta_f(ThetaSpec(1, 1, 1, 3), 300, ex), psi(1, 300, ex), 300));
    CHECK(eq_upto(theta_f(ThetaSpec(-1, 1, -1, 2), 500, ex), euler_f(1, 500, ex), 500));
    CHECK(eq_upto(theta_f(ThetaSpec::phi(3), 300, ex), phi(3, 300, ex), 300));
    CHECK(eq_upto(theta_f(ThetaSpec::psi(2), 300, ex), psi(2, 300, ex), 300));
    // f(1, q) = 2 psi(q)
    CHECK(eq_upto(theta_f(ThetaSpec(1, 0, 1, 1), 100, ex), scale(psi(1, 100, ex), 2), 100));

    CHECK_THROWS_AS(ThetaSpec(0, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(ThetaSpec(1, 0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(ThetaSpec(1, -1, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(ThetaSpec::from_fractions(-1, 3, 2, -1, 1, 2), std::invalid_argument);
    auto ok = ThetaSpec::from_fractions(-1, 3 * 25 + 5, 2, -1, 3 * 25 - 5, 2);
    CHECK(ok.exp_a() == 40);
    CHECK(ok.exp_b() == 35);
    CHECK(ThetaSpec::phi(4).to_string() == "phi(q^4)");
}

TEST_CASE("family specs")
{
    CHECK(FamilySpec::opt().eta() == EtaQuotient{{2, 9}, {1, -6}, {4, -3}});
    CHECK(FamilySpec::opt_k(3).eta() == FamilySpec::opt().eta());
    CHECK(FamilySpec::pbar_o().eta() == EtaQuotient{{2, 3}, {1, -2}, {4, -1}});
    CHECK(FamilySpec::pbar_k(2).eta() == EtaQuotient{{2, 2}, {1, -4}});
    CHECK(FamilySpec::p().eta() == EtaQuotient{{1, -1}});
    CHECK(FamilySpec::parse("OPT_5") == FamilySpec::opt_k(5));
    CHECK(FamilySpec::parse("OPT_K", 4) == FamilySpec::opt_k(4));
    CHECK(FamilySpec::parse("PBAR_2") == FamilySpec::pbar_k(2));
    CHECK(FamilySpec::parse("PBAR_O") == FamilySpec::pbar_o());
    CHECK(FamilySpec::parse("opt") == FamilySpec::opt());
    CHECK_THROWS(FamilySpec::parse("NOPE"));
    CHECK_THROWS(FamilySpec::opt_k(0));
    CHECK(FamilySpec::opt_k(5).name() == "OPT_5");
    CHECK(FamilySpec::opt().name() == "OPT");
    CHECK(FamilySpec::opt().odd_parts());
    CHECK_FALSE(FamilySpec::pbar().odd_parts());
}

TEST_CASE("family series")
{
    const auto ex = CoeffRing::exact();
    auto opt = family_series(FamilySpec::opt(), 300, ex);
    CHECK(opt.coeff(3) == 44);
    CHECK(opt.coeff(3) % 4 == 0);
    CHECK(family_series(FamilySpec::pbar_o(), 5, ex).coeff(1) == 2);
    CHECK(family_series(FamilySpec::pbar(), 5, ex).coeff(3) == 8);
    CHECK(family_series(FamilySpec::p(), 5, ex).coeff(4) == 5);

    for (auto spec : {FamilySpec::p(), FamilySpec::pbar(), FamilySpec::pbar_k(2), FamilySpec::opt(),
                      FamilySpec::opt_k(1), FamilySpec::opt_k(2), FamilySpec::opt_k(5), FamilySpec::pbar_o()}) {
        auto s = family_series(spec, 300, ex);
        for (std::size_t n = 0; n < 300; ++n) {
            CHECK(s.coeff(n) >= 0);
        }
    }
    for (std::size_t n = 1; n < 300; ++n) {
        CHECK(opt.coeff(n) % 2 == 0);
    }
}

TEST_CASE("odd tuple sizes agree modulo 4")
{
    const auto m4 = CoeffRing::mod(4);
    auto base = family_series(FamilySpec::opt_k(1), 2000, m4);
    for (unsigned k : {3, 5, 7}) {
        CHECK(eq_upto(family_series(FamilySpec::opt_k(k), 2000, m4), base, 2000));
    }
}

TEST_CASE("product form of the odd-part overpartition series")
{
    // Exact coefficients pass 128 bits near n = 1000, so order 2000 runs modulo
    // 2^63 and a large prime; the exact comparison stops at 500.
    const auto ex = CoeffRing::exact();
    CHECK(eq_upto(pbar_o_product(500, ex), family_series(FamilySpec::pbar_o(), 500, ex), 500));
    for (auto ring : {CoeffRing::mod(std::uint64_t{1} << 63), CoeffRing::mod(4611686018427387847ULL)}) {
        CHECK(eq_upto(pbar_o_product(2000, ring), family_series(FamilySpec::pbar_o(), 2000, ring), 2000));
    }
}
