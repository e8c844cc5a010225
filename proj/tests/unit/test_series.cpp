#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qcong/qseries.hpp"
#include "qcong/series.hpp"

using namespace qcong;
using qcong::testing::direct_euler;
using qcong::testing::naive_mul;

namespace {

std::vector<wide_int> coeffs_of(const Series& s)
{
    std::vector<wide_int> out;
    for (std::size_t n = 0; n < s.order(); ++n) {
        out.push_back(s.coeff(n));
    }
    return out;
}

Series random_series(CoeffRing ring, std::size_t order, std::mt19937_64& rng, bool unit_constant = false,
                     int spread = 50)
{
    std::uniform_int_distribution<int> dist(-spread, spread);
    std::vector<wide_int> c(order);
    for (auto& x : c) {
        x = dist(rng);
    }
    if (unit_constant) {
        c[0] = 1;
    }
    return Series::make(ring, std::span<const wide_int>(c), order);
}

}  // namespace

TEST_CASE("coefficient rings")
{
    CHECK_THROWS_AS(CoeffRing::mod(1), std::invalid_argument);
    CHECK_THROWS_AS(CoeffRing::mod(0), std::invalid_argument);
    CHECK_NOTHROW(CoeffRing::mod(std::uint64_t{1} << 63));
    CHECK_THROWS_AS(CoeffRing::mod((std::uint64_t{1} << 63) + 1), std::invalid_argument);
    CHECK(CoeffRing::mod(16).is_power_of_two());
    CHECK_FALSE(CoeffRing::mod(12).is_power_of_two());
    CHECK(CoeffRing::mod(16).reduce(-2) == 14);
    CHECK(CoeffRing::exact().reduce(-2) == -2);
}

TEST_CASE("make reduces and zero-fills")
{
    auto a = Series::make(CoeffRing::mod(4), {5}, 3);
    CHECK(coeffs_of(a) == std::vector<wide_int>{1, 0, 0});
    auto z = Series::make(CoeffRing::exact(), std::initializer_list<wide_int>{}, 2);
    CHECK(z.order() == 2);
    CHECK(z.is_zero());
    auto b = Series::make(CoeffRing::mod(16), {1, -2}, 2);
    CHECK(coeffs_of(b) == std::vector<wide_int>{1, 14});
    CHECK_THROWS(Series::make(CoeffRing::exact(), {1, 2, 3}, 2));
    std::vector<std::string> huge = {"170141183460469231731687303715884105728"};
    CHECK_THROWS_AS(Series::make(CoeffRing::exact(), std::span<const std::string>(huge), 1), OverflowError);
    CHECK_THROWS_AS(a.coeff(3), std::out_of_range);
}

TEST_CASE("add, sub and truncation")
{
    const auto ex = CoeffRing::exact();
    auto s = Series::make(ex, {1, 1}, 2) + Series::make(ex, {1, -1}, 2);
    CHECK(coeffs_of(s) == std::vector<wide_int>{2, 0});
    auto a = Series::make(ex, {1, 2, 3, 4, 5}, 5);
    CHECK(eq_upto(a + Series(ex, 5), a, 5));
    CHECK((a + Series::make(ex, {1, 1, 1}, 3)).order() == 3);
    CHECK_THROWS_AS(a + Series(CoeffRing::mod(4), 5), RingMismatch);
    CHECK_THROWS_AS(add(Series(CoeffRing::mod(4), 5), Series(CoeffRing::mod(8), 5)), RingMismatch);
    CHECK(eq_upto(a - a, Series(ex, 5), 5));
}

TEST_CASE("multiplication")
{
    const auto ex = CoeffRing::exact();
    auto p = Series::make(ex, {1, 2}, 3) * Series::make(ex, {1, 3}, 3);
    CHECK(coeffs_of(p) == std::vector<wide_int>{1, 5, 6});

    const std::size_t n = 10;
    std::vector<wide_int> ones(n - 1, 1);
    auto geo = Series::make(ex, std::span<const wide_int>(ones), n - 1);
    auto tele = Series::make(ex, {1, -1}, n - 1) * geo;
    CHECK(eq_upto(tele, Series::one(ex, n - 1), n - 1));

    auto f1 = euler_f(1, 500, ex);
    CHECK(eq_upto(f1 * f1, pow(f1, 2), 500));
    CHECK(coeffs_of(f1 * f1) == naive_mul(coeffs_of(f1), coeffs_of(f1)));

    std::mt19937_64 rng(7);
    for (auto ring : {ex, CoeffRing::mod(16), CoeffRing::mod(1000003), CoeffRing::mod(std::uint64_t{1} << 63),
                      CoeffRing::mod(4611686018427387847ULL)}) {
        auto x = random_series(ring, 120, rng);
        auto y = random_series(ring, 120, rng);
        CHECK(eq_upto(mul(x, y), mul_schoolbook(x, y), 120));
        if (!ring.is_exact()) {
            auto xe = random_series(ex, 120, rng);
            auto ye = random_series(ex, 120, rng);
            CHECK(eq_upto(reduce_mod(mul(xe, ye), ring.modulus()),
                          mul(reduce_mod(xe, ring.modulus()), reduce_mod(ye, ring.modulus())), 120));
        }
    }
}

TEST_CASE("ring laws on random series")
{
    std::mt19937_64 rng(11);
    for (auto ring : {CoeffRing::exact(), CoeffRing::mod(16)}) {
        for (int trial = 0; trial < 5; ++trial) {
            auto a = random_series(ring, 200, rng);
            auto b = random_series(ring, 200, rng);
            auto c = random_series(ring, 200, rng);
            CHECK(eq_upto(a + b, b + a, 200));
            CHECK(eq_upto((a + b) + c, a + (b + c), 200));
            CHECK(eq_upto(a * b, b * a, 200));
            CHECK(eq_upto((a * b) * c, a * (b * c), 200));
            CHECK(eq_upto(a * (b + c), a * b + a * c, 200));
            CHECK(eq_upto(pow(a, 3), a * a * a, 200));
        }
    }
}

TEST_CASE("pow")
{
    const auto ex = CoeffRing::exact();
    auto s = Series::make(ex, {3, 1, 4}, 6);
    CHECK(eq_upto(pow(s, 0), Series::one(ex, 6), 6));
    CHECK(coeffs_of(pow(Series::make(ex, {1, 1}, 4), 2)) == std::vector<wide_int>{1, 2, 1, 0});
}

TEST_CASE("invert and divide")
{
    const auto ex = CoeffRing::exact();
    auto geo = invert(Series::make(ex, {1, -1}, 8));
    CHECK(coeffs_of(geo) == std::vector<wide_int>(8, 1));
    CHECK(eq_upto(invert(Series::one(ex, 5)), Series::one(ex, 5), 5));
    CHECK(invert(euler_f(1, 20, ex)).coeff(4) == 5);
    CHECK(coeffs_of(invert(euler_f(1, 300, ex))) == qcong::testing::partition_numbers(300));

    // 1/f1^6 outgrows 128 bits before order 300, so the exact check runs at 100
    // and the order-300 check modulo 2^63.
    auto f6 = pow(euler_f(1, 100, ex), 6);
    CHECK(eq_upto(f6 * invert(f6), Series::one(ex, 100), 100));
    const auto big = CoeffRing::mod(std::uint64_t{1} << 63);
    auto g6 = pow(euler_f(1, 300, big), 6);
    CHECK(eq_upto(g6 * invert(g6), Series::one(big, 300), 300));
    CHECK_THROWS_AS(invert(pow(euler_f(1, 300, ex), 6)), OverflowError);

    std::mt19937_64 rng(3);
    for (auto ring : {ex, CoeffRing::mod(16), CoeffRing::mod(1000003)}) {
        // Small entries keep the exact inverse inside 128 bits.
        auto a = random_series(ring, 60, rng, true, 1);
        auto b = random_series(ring, 60, rng);
        CHECK(eq_upto(a * invert(a), Series::one(ring, 60), 60));
        CHECK(eq_upto(divide(b, a) * a, b, 60));
    }

    CHECK_THROWS_AS(invert(Series::make(ex, {2, 1}, 3)), NonUnitError);
    CHECK_THROWS_AS(invert(Series::make(CoeffRing::mod(16), {2, 1}, 3)), NonUnitError);
    CHECK_THROWS_AS(invert(Series(ex, 3)), NonUnitError);
    auto m = invert(Series::make(CoeffRing::mod(15), {7, 1}, 4));
    CHECK(eq_upto(m * Series::make(CoeffRing::mod(15), {7, 1}, 4), Series::one(CoeffRing::mod(15), 4), 4));
    auto neg = invert(Series::make(ex, {-1, 1}, 4));
    CHECK(coeffs_of(neg) == std::vector<wide_int>{-1, -1, -1, -1});
}

TEST_CASE("substitute_power")
{
    const auto ex = CoeffRing::exact();
    auto s = substitute_power(Series::make(ex, {1, 1}, 2), 2);
    CHECK(s.order() == 4);
    CHECK(coeffs_of(s) == std::vector<wide_int>{1, 0, 1, 0});
    auto f1 = euler_f(1, 100, ex);
    CHECK(eq_upto(substitute_power(f1, 1), f1, 100));
    auto f4 = substitute_power(f1, 4);
    CHECK(coeffs_of(f4) == direct_euler(4, 400));
    CHECK(substitute_power(f1, 4, 250).order() == 250);

    std::mt19937_64 rng(5);
    auto a = random_series(ex, 80, rng);
    auto b = random_series(ex, 80, rng);
    CHECK(eq_upto(substitute_power(a * b, 3), substitute_power(a, 3) * substitute_power(b, 3), 240));
}

TEST_CASE("reduce_mod")
{
    const auto ex = CoeffRing::exact();
    auto r = reduce_mod(Series::make(ex, {2, -3}, 2), 2);
    CHECK(coeffs_of(r) == std::vector<wide_int>{0, 1});
    auto r16 = Series::make(CoeffRing::mod(16), {14}, 1);
    CHECK(reduce_mod(r16, 4).coeff(0) == 2);
    CHECK_THROWS_AS(reduce_mod(r16, 3), std::invalid_argument);
    CHECK_THROWS_AS(reduce_mod(Series::one(ex, 2), 1), std::invalid_argument);

    CHECK(eq_upto(reduce_mod(pow(euler_f(1, 1000, CoeffRing::mod(4)), 4), 4),
                  reduce_mod(pow(euler_f(2, 1000, CoeffRing::mod(4)), 2), 4), 1000));

    std::mt19937_64 rng(9);
    auto a = random_series(CoeffRing::mod(16), 100, rng);
    auto b = random_series(CoeffRing::mod(16), 100, rng);
    CHECK(eq_upto(reduce_mod(a + b, 4), reduce_mod(a, 4) + reduce_mod(b, 4), 100));
    CHECK(eq_upto(reduce_mod(a * b, 4), reduce_mod(a, 4) * reduce_mod(b, 4), 100));
}

TEST_CASE("eq_upto and first_difference")
{
    const auto ex = CoeffRing::exact();
    auto one = Series::one(ex, 20);
    auto bumped = one + Series::monomial(ex, 1, 10, 20);
    CHECK(eq_upto(one, one, 20));
    CHECK(eq_upto(one, bumped, 10));
    CHECK_FALSE(eq_upto(one, bumped, 11));
    CHECK(first_difference(one, bumped, 20) == std::optional<std::size_t>(10));
    CHECK_FALSE(first_difference(one, bumped, 10).has_value());
    CHECK_THROWS_AS(eq_upto(one, Series::one(CoeffRing::mod(4), 20), 5), RingMismatch);
}

TEST_CASE("exact overflow is detected")
{
    const auto ex = CoeffRing::exact();
    const wide_int big = kWideMax / 2 + 1;
    auto a = Series::make(ex, {big}, 1);
    CHECK_THROWS_AS(a + a, OverflowError);
    CHECK_THROWS_AS(a * Series::make(ex, {2}, 1), OverflowError);
    CHECK_THROWS_AS(scale(a, 3), OverflowError);
    CHECK_THROWS_AS(pow(invert(euler_f(1, 2000, ex)), 4), OverflowError);
    CHECK_NOTHROW(a + Series::make(ex, {big - 2}, 1));
}

TEST_CASE("shift and text")
{
    const auto ex = CoeffRing::exact();
    auto s = shift(Series::make(ex, {1, 2}, 2), 3);
    CHECK(s.order() == 5);
    CHECK(coeffs_of(s) == std::vector<wide_int>{0, 0, 0, 1, 2});
    CHECK(truncate(s, 4).order() == 4);
    CHECK(Series::make(ex, {1, -1, 0, 3}, 4).to_string() == "1 - q + 3*q^3 + O(q^4)");
}
