#include "qcong/verifier.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qcong/dissection.hpp"
#include "qcong/number_theory.hpp"

namespace qcong {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start)
{
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::int64_t as_param(std::uint64_t v)
{
    return static_cast<std::int64_t>(v);
}

std::uint64_t pow9(unsigned alpha)
{
    return checked_pow(9, alpha);
}

// Runs fn(i) for i in [0, count) on up to `threads` workers. The first
// exception (by index) is rethrown after all workers finish.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn)
{
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::vector<std::exception_ptr> errors(count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

std::string cache_key(const ProgressionClaim& c)
{
    return c.source.to_string() + "#" + std::to_string(c.modulus);
}

bool is_power_of_two(std::uint64_t m)
{
    return m != 0 && (m & (m - 1)) == 0;
}

}  // namespace

std::uint64_t progression_terms(std::uint64_t step, std::uint64_t offset, std::size_t order) noexcept
{
    if (step == 0 || offset >= order) {
        return 0;
    }
    return (order - offset + step - 1) / step;
}

ProgressionClaim progression_claim(const FamilySpec& family, std::uint64_t step, std::uint64_t offset,
                                   std::uint64_t modulus, std::string label, Params params)
{
    if (step == 0) {
        throw std::invalid_argument("claim step must be positive");
    }
    if (modulus < 2) {
        throw std::invalid_argument("claim modulus must be at least 2");
    }
    ProgressionClaim c;
    c.label = std::move(label);
    c.family = family.name();
    c.source = SeriesExpr::family(family);
    c.step = step;
    c.offset = offset;
    c.modulus = modulus;
    c.params = std::move(params);
    return c;
}

ProgressionClaim false_claim_fixture()
{
    return progression_claim(FamilySpec::opt(), 4, 1, 4, "INJECTED OPT(4n+1) == 0 mod 4");
}

VerificationReport check_claim_on(const ProgressionClaim& claim, const Series& source, std::size_t order)
{
    const auto start = Clock::now();
    VerificationReport rep;
    rep.label = claim.label;
    rep.family = claim.family;
    rep.params = claim.params;
    rep.step = claim.step;
    rep.offset = claim.offset;
    rep.modulus = claim.modulus;

    if (claim.skip_reason) {
        rep.status = Status::Skipped;
        rep.params.emplace_back("skip_reason", *claim.skip_reason);
        return rep;
    }
    if (source.ring() != CoeffRing::mod(claim.modulus) || source.order() < order) {
        throw std::invalid_argument("claim source series has the wrong ring or order");
    }

    if (claim.kind == ClaimKind::SquareSupport) {
        rep.terms_checked = order > 1 ? order - 1 : 0;
        rep.status = Status::Pass;
        for (std::size_t n = 1; n < order; ++n) {
            const bool vanishes = source.coeff(n) == 0;
            const bool expected = !is_square(n) && !(n % 2 == 0 && is_square(n / 2));
            if (vanishes != expected) {
                rep.status = Status::Fail;
                rep.counterexample = Counterexample{n, n, source.coeff(n)};
                break;
            }
        }
        rep.elapsed_ms = ms_since(start);
        return rep;
    }

    const std::uint64_t terms = progression_terms(claim.step, claim.offset, order);
    rep.terms_checked = terms;
    if (terms < kMinTerms) {
        rep.status = Status::Skipped;
        rep.params.emplace_back("skip_reason", "fewer than " + std::to_string(kMinTerms) + " terms below order");
        rep.elapsed_ms = ms_since(start);
        return rep;
    }

    const Series ext = extract_progression(truncate(source, order), claim.step, claim.offset);
    Series expected(source.ring(), ext.order());
    if (claim.kind == ClaimKind::Congruence) {
        const std::uint64_t tord = checked_add_u64(checked_mul_u64(claim.target_step, ext.order() - 1),
                                                   claim.target_offset + 1);
        const Series t = evaluate(claim.target, tord, source.ring());
        expected = truncate(extract_progression(t, claim.target_step, claim.target_offset), ext.order());
    }
    rep.status = Status::Pass;
    if (const auto at = first_difference(ext, expected, ext.order())) {
        rep.status = Status::Fail;
        const wide_int diff = source.ring().reduce(ext.coeff(*at) - expected.coeff(*at));
        rep.counterexample = Counterexample{*at, claim.step * *at + claim.offset, diff};
    }
    rep.elapsed_ms = ms_since(start);
    return rep;
}

VerificationReport check_claim(const ProgressionClaim& claim, std::size_t order)
{
    if (claim.skip_reason) {
        return check_claim_on(claim, Series(CoeffRing::mod(claim.modulus), order), order);
    }
    return check_claim_on(claim, evaluate(claim.source, order, CoeffRing::mod(claim.modulus)), order);
}

SuiteId parse_suite(std::string_view name)
{
    static const std::array<std::pair<std::string_view, SuiteId>, 13> names = {{
        {"T1", SuiteId::T1},
        {"T2", SuiteId::T2},
        {"T3", SuiteId::T3},
        {"T4", SuiteId::T4},
        {"T5", SuiteId::T5},
        {"T6", SuiteId::T6},
        {"T7", SuiteId::T7},
        {"T8", SuiteId::T8},
        {"T9", SuiteId::T9},
        {"T10", SuiteId::T10},
        {"LEMMA7", SuiteId::Lemma7},
        {"REGRESSIONS", SuiteId::Regressions},
        {"ALL", SuiteId::All},
    }};
    for (const auto& [n, id] : names) {
        if (n == name) {
            return id;
        }
    }
    throw std::invalid_argument("unknown suite: " + std::string(name));
}

std::string to_string(SuiteId id)
{
    switch (id) {
    case SuiteId::T1:
        return "T1";
    case SuiteId::T2:
        return "T2";
    case SuiteId::T3:
        return "T3";
    case SuiteId::T4:
        return "T4";
    case SuiteId::T5:
        return "T5";
    case SuiteId::T6:
        return "T6";
    case SuiteId::T7:
        return "T7";
    case SuiteId::T8:
        return "T8";
    case SuiteId::T9:
        return "T9";
    case SuiteId::T10:
        return "T10";
    case SuiteId::Lemma7:
        return "LEMMA7";
    case SuiteId::Regressions:
        return "REGRESSIONS";
    case SuiteId::All:
        return "ALL";
    }
    return "?";
}

std::uint64_t t4_mod4_index(std::uint64_t p, unsigned alpha, unsigned delta, std::uint64_t t, std::uint64_t n)
{
    const std::uint64_t a = checked_mul_u64(checked_mul_u64(2, pow9(alpha)), checked_pow(p, 2 * delta + 1));
    const std::uint64_t inner = checked_add_u64(checked_mul_u64(p, n), t);
    return checked_add_u64(checked_mul_u64(a, inner), checked_mul_u64(pow9(alpha), checked_pow(p, 2 * (delta + 1))));
}

std::uint64_t t4_mod8_index(std::uint64_t p, unsigned alpha, unsigned delta, std::uint64_t r, std::uint64_t n)
{
    const std::uint64_t a = checked_mul_u64(checked_mul_u64(8, pow9(alpha)), checked_pow(p, 2 * delta + 1));
    const std::uint64_t inner = checked_add_u64(checked_mul_u64(p, n), r);
    return checked_add_u64(checked_mul_u64(a, inner), checked_mul_u64(pow9(alpha), checked_pow(p, 2 * (delta + 1))));
}

std::uint64_t t9_index(std::uint64_t p, unsigned alpha, unsigned delta, std::uint64_t t, std::uint64_t n)
{
    const std::uint64_t a = checked_mul_u64(checked_mul_u64(8, pow9(alpha)), checked_pow(p, 2 * delta + 1));
    const std::uint64_t inner = checked_add_u64(checked_mul_u64(p, n), t);
    const std::uint64_t tail =
        checked_mul_u64(checked_mul_u64(2, pow9(alpha)), checked_pow(p, 2 * (delta + 1))) + pow9(alpha) - 1;
    return checked_add_u64(checked_mul_u64(a, inner), tail);
}

namespace {

using U64s = std::vector<std::uint64_t>;

const U64s& pick(const std::optional<U64s>& override, const U64s& fallback)
{
    return override ? *override : fallback;
}

std::string bracket(const Params& params)
{
    std::string s = "[";
    bool first = true;
    for (const auto& [k, v] : params) {
        if (!first) {
            s += ",";
        }
        first = false;
        s += k + "=";
        if (const auto* i = std::get_if<std::int64_t>(&v)) {
            s += std::to_string(*i);
        } else {
            s += std::get<std::string>(v);
        }
    }
    return s + "]";
}

ProgressionClaim labeled(const std::string& head, const FamilySpec& fam, std::uint64_t step, std::uint64_t offset,
                         std::uint64_t modulus, Params params)
{
    if (!is_power_of_two(modulus)) {
        throw std::logic_error("suite claims use power-of-two moduli");
    }
    const std::string label = head + (params.empty() ? "" : bracket(params));
    return progression_claim(fam, step, offset, modulus, label, std::move(params));
}

// Reported as skipped, with the template's side condition in skip_reason.
ProgressionClaim skipped(const std::string& head, const FamilySpec& fam, std::uint64_t modulus, Params params,
                         std::string reason)
{
    ProgressionClaim c = labeled(head, fam, 1, 0, modulus, std::move(params));
    c.skip_reason = std::move(reason);
    return c;
}

void add_sellers(std::vector<ProgressionClaim>& out, const char* head, std::uint64_t base_step,
                 std::uint64_t base_offset, std::uint64_t modulus, const U64s& alphas)
{
    for (auto a : alphas) {
        const std::uint64_t scale = checked_pow(2, static_cast<unsigned>(a));
        out.push_back(labeled(head, FamilySpec::opt(), checked_mul_u64(scale, base_step),
                              checked_mul_u64(scale, base_offset), modulus, {{"alpha", as_param(a)}}));
    }
}

// Shared shape of T4 (mod 4) and T10: step 2*9^a*p^{2d+2},
// offset 2*9^a*p^{2d+1}*t + 9^a*p^{2d+2}.
void add_mod4_family(std::vector<ProgressionClaim>& out, const std::string& head, const FamilySpec& fam,
                     Params prefix, std::uint64_t p, const U64s& alphas, const U64s& deltas)
{
    for (auto a : alphas) {
        for (auto d : deltas) {
            for (std::uint64_t t = 1; t < std::max<std::uint64_t>(p, 2); ++t) {
                Params params = prefix;
                params.emplace_back("p", as_param(p));
                params.emplace_back("alpha", as_param(a));
                params.emplace_back("delta", as_param(d));
                params.emplace_back("t", as_param(t));
                if (p < 3 || !is_prime(p)) {
                    out.push_back(skipped(head, fam, 4, std::move(params), "p must be a prime >= 3"));
                    continue;
                }
                const auto ai = static_cast<unsigned>(a);
                const auto di = static_cast<unsigned>(d);
                const std::uint64_t nine = pow9(ai);
                const std::uint64_t step = checked_mul_u64(checked_mul_u64(2, nine), checked_pow(p, 2 * di + 2));
                const std::uint64_t offset =
                    checked_add_u64(checked_mul_u64(checked_mul_u64(checked_mul_u64(2, nine), checked_pow(p, 2 * di + 1)), t),
                                    checked_mul_u64(nine, checked_pow(p, 2 * di + 2)));
                out.push_back(labeled(head, fam, step, offset, 4, std::move(params)));
            }
        }
    }
}

void add_t1_t3(std::vector<ProgressionClaim>& out, SuiteId id, const ParamBox& box)
{
    static const U64s alphas = {0, 1, 2, 3, 4};
    const U64s& a = pick(box.alpha, alphas);
    if (id == SuiteId::T1) {
        add_sellers(out, "T1 OPT(2^alpha(4n+3)) mod 4", 4, 3, 4, a);
    } else if (id == SuiteId::T2) {
        add_sellers(out, "T2 OPT(2^alpha(8n+5)) mod 8", 8, 5, 8, a);
    } else {
        add_sellers(out, "T3 OPT(2^alpha(8n+7)) mod 16", 8, 7, 16, a);
    }
}

void add_t4(std::vector<ProgressionClaim>& out, const ParamBox& box)
{
    static const U64s mod4_primes = {3, 5, 7};
    static const U64s mod8_primes = {5, 7, 13};
    static const U64s zero_one = {0, 1};
    const U64s& alphas = pick(box.alpha, zero_one);
    const U64s& deltas = pick(box.delta, zero_one);
    for (auto p : pick(box.primes, mod4_primes)) {
        add_mod4_family(out, "T4 OPT mod 4", FamilySpec::opt(), {}, p, alphas, deltas);
    }
    for (auto p : pick(box.primes, mod8_primes)) {
        for (auto a : alphas) {
            for (auto d : deltas) {
                for (std::uint64_t r = 1; r < std::max<std::uint64_t>(p, 2); ++r) {
                    Params params = {{"p", as_param(p)}, {"alpha", as_param(a)}, {"delta", as_param(d)},
                                     {"r", as_param(r)}};
                    const char* head = "T4 OPT mod 8";
                    if (p <= 3 || !is_prime(p)) {
                        out.push_back(skipped(head, FamilySpec::opt(), 8, std::move(params), "p must be a prime > 3"));
                        continue;
                    }
                    if (legendre(-2, p) != -1) {
                        out.push_back(
                            skipped(head, FamilySpec::opt(), 8, std::move(params), "legendre(-2, p) is not -1"));
                        continue;
                    }
                    const auto ai = static_cast<unsigned>(a);
                    const auto di = static_cast<unsigned>(d);
                    const std::uint64_t nine = pow9(ai);
                    const std::uint64_t step = checked_mul_u64(checked_mul_u64(8, nine), checked_pow(p, 2 * di + 2));
                    const std::uint64_t offset = checked_add_u64(
                        checked_mul_u64(checked_mul_u64(checked_mul_u64(8, nine), checked_pow(p, 2 * di + 1)), r),
                        checked_mul_u64(nine, checked_pow(p, 2 * di + 2)));
                    out.push_back(labeled(head, FamilySpec::opt(), step, offset, 8, std::move(params)));
                }
            }
        }
    }
}

void add_t5(std::vector<ProgressionClaim>& out, const ParamBox& box)
{
    static const U64s ks = {2, 4, 6, 8, 12};
    for (auto k : pick(box.k, ks)) {
        const char* head = "T5 OPT_k(n) mod 2^(m+1)";
        if (k == 0 || k % 2 == 1) {
            out.push_back(skipped(head, FamilySpec::opt_k(std::max<std::uint64_t>(k, 1)), 2, {{"k", as_param(k)}},
                                  "k must be even and positive"));
            continue;
        }
        const unsigned m = v2(static_cast<wide_int>(k));
        const std::uint64_t modulus = checked_pow(2, m + 1);
        out.push_back(labeled(head, FamilySpec::opt_k(static_cast<unsigned>(k)), 1, 1, modulus,
                              {{"k", as_param(k)}, {"m", as_param(m)}}));
    }
}

void add_t6(std::vector<ProgressionClaim>& out, const ParamBox& box)
{
    static const U64s ks = {0, 1, 2, 3};
    for (auto k : pick(box.k, ks)) {
        const auto fam = FamilySpec::opt_k(static_cast<unsigned>(2 * k + 1));
        ProgressionClaim c = labeled("T6 OPT_(2k+1) == PBAR_O mod 4", fam, 1, 0, 4, {{"k", as_param(k)}});
        c.kind = ClaimKind::Congruence;
        c.target = SeriesExpr::family(FamilySpec::pbar_o());
        out.push_back(std::move(c));
    }
}

void add_t7(std::vector<ProgressionClaim>& out, const ParamBox& box)
{
    static const U64s ks = {0, 1, 2, 3};
    static const U64s primes = {5, 7, 11};
    for (auto k : pick(box.k, ks)) {
        const auto fam = FamilySpec::opt_k(static_cast<unsigned>(2 * k + 1));
        for (auto p : pick(box.primes, primes)) {
            const char* head = "T7 OPT_(2k+1)(2pn+R) mod 4";
            if (p < 5 || !is_prime(p)) {
                out.push_back(skipped(head, fam, 4, {{"k", as_param(k)}, {"p", as_param(p)}}, "p must be a prime >= 5"));
                continue;
            }
            for (auto r : qnr_set(p)) {
                const std::uint64_t big_r = r % 2 == 1 ? r : p + r;
                out.push_back(labeled(head, fam, 2 * p, big_r, 4,
                                      {{"k", as_param(k)}, {"p", as_param(p)}, {"r", as_param(r)}}));
            }
        }
    }
}

constexpr std::array<std::uint64_t, 7> kEighthModuli = {2, 2, 4, 2, 8, 4, 16};

void add_t8(std::vector<ProgressionClaim>& out, const ParamBox& box)
{
    static const U64s ks = {0, 1, 2, 3};
    for (auto k : pick(box.k, ks)) {
        const auto fam = FamilySpec::opt_k(static_cast<unsigned>(2 * k + 1));
        for (std::uint64_t j = 1; j <= 7; ++j) {
            out.push_back(labeled("T8 OPT_(2k+1)(8n+j)", fam, 8, j, kEighthModuli[j - 1],
                                  {{"k", as_param(k)}, {"j", as_param(j)}}));
        }
    }
}

void add_t9(std::vector<ProgressionClaim>& out, const ParamBox& box)
{
    static const U64s primes = {3, 5, 7};
    static const U64s zero_one = {0, 1};
    const auto fam = FamilySpec::opt_k(4);
    for (auto p : pick(box.primes, primes)) {
        for (auto a : pick(box.alpha, zero_one)) {
            for (auto d : pick(box.delta, zero_one)) {
                for (std::uint64_t t = 1; t < std::max<std::uint64_t>(p, 2); ++t) {
                    Params params = {{"p", as_param(p)}, {"alpha", as_param(a)}, {"delta", as_param(d)},
                                     {"t", as_param(t)}};
                    const char* head = "T9 OPT_4 mod 16";
                    if (p < 3 || !is_prime(p)) {
                        out.push_back(skipped(head, fam, 16, std::move(params), "p must be a prime >= 3"));
                        continue;
                    }
                    const auto ai = static_cast<unsigned>(a);
                    const auto di = static_cast<unsigned>(d);
                    const std::uint64_t nine = pow9(ai);
                    const std::uint64_t step = checked_mul_u64(checked_mul_u64(8, nine), checked_pow(p, 2 * di + 2));
                    const std::uint64_t offset = checked_add_u64(
                        checked_add_u64(
                            checked_mul_u64(checked_mul_u64(checked_mul_u64(8, nine), checked_pow(p, 2 * di + 1)), t),
                            checked_mul_u64(checked_mul_u64(2, nine), checked_pow(p, 2 * di + 2))),
                        nine - 1);
                    out.push_back(labeled(head, fam, step, offset, 16, std::move(params)));
                }
            }
        }
    }
}

void add_t10(std::vector<ProgressionClaim>& out, const ParamBox& box)
{
    static const U64s primes = {3, 5, 7};
    static const U64s ks = {1, 2};
    static const U64s zero_one = {0, 1};
    for (auto k : pick(box.k, ks)) {
        const auto fam = FamilySpec::opt_k(static_cast<unsigned>(2 * k + 1));
        for (auto p : pick(box.primes, primes)) {
            add_mod4_family(out, "T10 OPT_(2k+1) mod 4", fam, {{"k", as_param(k)}}, p, pick(box.alpha, zero_one),
                            pick(box.delta, zero_one));
        }
    }
}

void add_lemma7(std::vector<ProgressionClaim>& out, const ParamBox& box)
{
    static const U64s ts = {1, 3, 5};
    for (auto t : pick(box.t, ts)) {
        const SeriesExpr src = SeriesExpr::term(
            1, 0, {}, {{ThetaSpec::phi(1), t}, {ThetaSpec::phi(2), t}, {ThetaSpec::phi(4), 2 * t}});
        const std::string fam = "(phi(q)*phi(q^2)*phi(q^4)^2)^" + std::to_string(t);
        for (std::uint64_t j = 1; j <= 7; ++j) {
            ProgressionClaim c;
            c.params = {{"t", as_param(t)}, {"j", as_param(j)}};
            c.label = "LEMMA7 8-dissection class" + bracket(c.params);
            c.family = fam;
            c.source = src;
            c.step = 8;
            c.offset = j;
            c.modulus = kEighthModuli[j - 1];
            if (t % 2 == 0) {
                c.skip_reason = "t must be odd";
            }
            out.push_back(std::move(c));
        }
    }
}

// Regression entries: a family progression congruent to an eta expression,
// to another progression of the same family, or vanishing outright.
struct Regression {
    std::vector<ProgressionClaim>& out;

    ProgressionClaim base(const std::string& text, const FamilySpec& fam, std::uint64_t step, std::uint64_t offset,
                          std::uint64_t modulus)
    {
        ProgressionClaim c = progression_claim(fam, step, offset, modulus, "REG " + text);
        return c;
    }

    void zero(const std::string& text, const FamilySpec& fam, std::uint64_t step, std::uint64_t offset,
              std::uint64_t modulus)
    {
        out.push_back(base(text, fam, step, offset, modulus));
    }

    void expr(const std::string& text, const FamilySpec& fam, std::uint64_t step, std::uint64_t offset,
              std::uint64_t modulus, SeriesExpr target)
    {
        ProgressionClaim c = base(text, fam, step, offset, modulus);
        c.kind = ClaimKind::Congruence;
        c.target = std::move(target);
        out.push_back(std::move(c));
    }

    void self(const std::string& text, const FamilySpec& fam, std::uint64_t step, std::uint64_t offset,
              std::uint64_t modulus, std::uint64_t target_step, std::uint64_t target_offset)
    {
        ProgressionClaim c = base(text, fam, step, offset, modulus);
        c.kind = ClaimKind::Congruence;
        c.target = SeriesExpr::family(fam);
        c.target_step = target_step;
        c.target_offset = target_offset;
        out.push_back(std::move(c));
    }
};

SeriesExpr eta(EtaQuotient e, wide_int coeff = 1, std::uint64_t shift = 0)
{
    return SeriesExpr::eta(std::move(e), coeff, shift);
}

void add_regressions(std::vector<ProgressionClaim>& out)
{
    Regression reg{out};
    const auto opt = FamilySpec::opt();

    reg.zero("OPT(n+1) == 0 mod 2", opt, 1, 1, 2);

    // Modulo 4.
    reg.expr("OPT(n) == f2^2 f8^5/(f4^3 f16^2) + 2q f2^2 f16^2/(f4 f8) mod 4", opt, 1, 0, 4,
             eta({{2, 2}, {8, 5}, {4, -3}, {16, -2}}) + eta({{2, 2}, {16, 2}, {4, -1}, {8, -1}}, 2, 1));
    reg.expr("OPT(2n+1) == 2 f1^2 f8^2/(f2 f4) mod 4", opt, 2, 1, 4, eta({{1, 2}, {8, 2}, {2, -1}, {4, -1}}, 2));
    reg.expr("OPT(2n+1) == 2 f2^6 mod 4", opt, 2, 1, 4, eta({{2, 6}}, 2));
    reg.zero("OPT(4n+3) == 0 mod 4", opt, 4, 3, 4);
    reg.expr("OPT(2n) == f1^2 f4^5/(f2^3 f8^2) mod 4", opt, 2, 0, 4, eta({{1, 2}, {4, 5}, {2, -3}, {8, -2}}));
    reg.self("OPT(2n) == OPT(n) mod 4", opt, 2, 0, 4, 1, 0);

    // Modulo 8.
    reg.expr("OPT(2n+1) == 2 f2 f8^2/(f4 f1^2) + 4 f4 f8 mod 8", opt, 2, 1, 8,
             eta({{2, 1}, {8, 2}, {4, -1}, {1, -2}}, 2) + eta({{4, 1}, {8, 1}}, 4));
    reg.expr("OPT(4n+1) == 2 f4^7/(f1^4 f2 f8^2) + 4 f2 f4 mod 8", opt, 4, 1, 8,
             eta({{4, 7}, {1, -4}, {2, -1}, {8, -2}}, 2) + eta({{2, 1}, {4, 1}}, 4));
    reg.zero("OPT(8n+5) == 0 mod 8", opt, 8, 5, 8);
    reg.expr("OPT(2n) == f2^11 f4/(f1^10 f8^2) mod 8", opt, 2, 0, 8, eta({{2, 11}, {4, 1}, {1, -10}, {8, -2}}));
    reg.expr("OPT(2n) == f2^7 f4/(f1^2 f8^2) mod 8", opt, 2, 0, 8, eta({{2, 7}, {4, 1}, {1, -2}, {8, -2}}));
    reg.expr("OPT(4n+2) == 2 f1^2 f2^3 f8^2/f4^3 mod 8", opt, 4, 2, 8, eta({{1, 2}, {2, 3}, {8, 2}, {4, -3}}, 2));
    reg.expr("OPT(8n+2) == 2 f1^4 f4^7/(f2^5 f8^2) mod 8", opt, 8, 2, 8, eta({{1, 4}, {4, 7}, {2, -5}, {8, -2}}, 2));
    reg.expr("OPT(8n+2) == 2 f4^7/(f2^3 f8^2) mod 8", opt, 8, 2, 8, eta({{4, 7}, {2, -3}, {8, -2}}, 2));
    reg.zero("OPT(16n+10) == 0 mod 8", opt, 16, 10, 8);
    reg.expr("OPT(4n) == f1^2 f2 f4^3/f8^2 mod 8", opt, 4, 0, 8, eta({{1, 2}, {2, 1}, {4, 3}, {8, -2}}));
    reg.expr("OPT(8n+4) == -2 f1^2 f2^3 f8^2/f4^3 mod 8", opt, 8, 4, 8, eta({{1, 2}, {2, 3}, {8, 2}, {4, -3}}, -2));
    reg.expr("OPT(16n+4) == -2 f1^4 f4^7/(f2^5 f8^2) mod 8", opt, 16, 4, 8,
             eta({{1, 4}, {4, 7}, {2, -5}, {8, -2}}, -2));
    reg.zero("OPT(32n+20) == 0 mod 8", opt, 32, 20, 8);
    reg.expr("OPT(8n) == f1^2 f2 f4^3/f8^2 mod 8", opt, 8, 0, 8, eta({{1, 2}, {2, 1}, {4, 3}, {8, -2}}));
    reg.self("OPT(8n) == OPT(4n) mod 8", opt, 8, 0, 8, 4, 0);

    // Modulo 16.
    reg.expr("OPT(n) == f1^10 f2/f4^3 mod 16", opt, 1, 0, 16, eta({{1, 10}, {2, 1}, {4, -3}}));
    reg.expr("OPT(2n+1) == -2 f2^17 f8^2/(f1^2 f4^9) - 8 f1^2 f2^3 f4^5/f8^2 mod 16", opt, 2, 1, 16,
             eta({{2, 17}, {8, 2}, {1, -2}, {4, -9}}, -2) + eta({{1, 2}, {2, 3}, {4, 5}, {8, -2}}, -8));
    reg.expr("OPT(4n+3) == -4 f4 f8^2/f2 mod 16", opt, 4, 3, 16, eta({{4, 1}, {8, 2}, {2, -1}}, -4));
    reg.zero("OPT(8n+7) == 0 mod 16", opt, 8, 7, 16);
    reg.expr("OPT(2n) == f2^15/(f1^2 f4^3 f8^2) mod 16", opt, 2, 0, 16, eta({{2, 15}, {1, -2}, {4, -3}, {8, -2}}));
    reg.expr("OPT(4n+2) == 2 f1^2 f2^3 f8^2/f4^3 mod 16", opt, 4, 2, 16, eta({{1, 2}, {2, 3}, {8, 2}, {4, -3}}, 2));
    reg.expr("OPT(8n+6) == -4 f4 f8^2/f2 mod 16", opt, 8, 6, 16, eta({{4, 1}, {8, 2}, {2, -1}}, -4));
    reg.zero("OPT(16n+14) == 0 mod 16", opt, 16, 14, 16);
    reg.expr("OPT(4n) == f1^10 f4^3/(f2^3 f8^2) mod 16", opt, 4, 0, 16, eta({{1, 10}, {4, 3}, {2, -3}, {8, -2}}));
    reg.expr("OPT(8n+4) == -8 f2^9 f4^3/(f1^2 f8^2) - 2 f2^23 f8^2/(f1^6 f4^11) mod 16", opt, 8, 4, 16,
             eta({{2, 9}, {4, 3}, {1, -2}, {8, -2}}, -8) + eta({{2, 23}, {8, 2}, {1, -6}, {4, -11}}, -2));
    reg.expr("OPT(16n+12) == 4 f1^20 f4 f8^2/f2^11 mod 16", opt, 16, 12, 16,
             eta({{1, 20}, {4, 1}, {8, 2}, {2, -11}}, 4));
    reg.expr("OPT(16n+12) == 4 f4 f8^2/f2 mod 16", opt, 16, 12, 16, eta({{4, 1}, {8, 2}, {2, -1}}, 4));
    reg.zero("OPT(32n+28) == 0 mod 16", opt, 32, 28, 16);
    reg.expr("OPT(8n) == f2^21/(f1^6 f4^5 f8^2) mod 16", opt, 8, 0, 16, eta({{2, 21}, {1, -6}, {4, -5}, {8, -2}}));
    reg.self("OPT(8n) == OPT(4n) mod 16", opt, 8, 0, 16, 4, 0);

    // T4 modulus 4: the 3-adic and p-adic chains.
    reg.expr("OPT(2n+1) == 2 f4^3 mod 4", opt, 2, 1, 4, eta({{4, 3}}, 2));
    reg.expr("OPT(6n+9) == 2 f12^3 mod 4", opt, 6, 9, 4, eta({{12, 3}}, 2));
    reg.expr("OPT(18n+9) == 2 f4^3 mod 4", opt, 18, 9, 4, eta({{4, 3}}, 2));
    for (unsigned a : {1u, 2u}) {
        const std::uint64_t nine = pow9(a);
        reg.expr("OPT(2*9^" + std::to_string(a) + "n+9^" + std::to_string(a) + ") == 2 f4^3 mod 4", opt, 2 * nine,
                 nine, 4, eta({{4, 3}}, 2));
    }
    for (std::uint64_t p : {3, 5, 7}) {
        const std::int64_t sign_unit = ((p - 1) / 2) % 2 == 0 ? 1 : -1;
        for (unsigned a : {0u, 1u}) {
            for (unsigned d : {0u, 1u}) {
                const std::uint64_t nine = pow9(a);
                const std::uint64_t pd = checked_pow(p, 2 * d);
                const std::string tag = "[p=" + std::to_string(p) + ",alpha=" + std::to_string(a) +
                                        ",delta=" + std::to_string(d) + "]";
                // 2 p^d (-1)^{d(p-1)/2} reduced mod 4 only depends on parities.
                const wide_int c1 = 2 * static_cast<wide_int>(checked_pow(p, d)) * (d % 2 == 0 ? 1 : sign_unit);
                reg.expr("OPT(2*9^a*p^(2d) n + 9^a*p^(2d)) == 2 p^d (-1)^(d(p-1)/2) f4^3 mod 4" + tag, opt,
                         2 * nine * pd, nine * pd, 4, eta({{4, 3}}, c1));
                const wide_int c2 =
                    2 * static_cast<wide_int>(checked_pow(p, d + 1)) * ((d + 1) % 2 == 0 ? 1 : sign_unit);
                reg.expr("OPT(2*9^a*p^(2d+1) n + 9^a*p^(2d+2)) == 2 p^(d+1) (-1)^((d+1)(p-1)/2) f_(4p)^3 mod 4" + tag,
                         opt, 2 * nine * pd * p, nine * pd * p * p, 4, eta({{4 * p, 3}}, c2));
            }
        }
    }

    // T4 modulus 8: the 3-adic chain.
    reg.expr("OPT(8n+1) == 2 f2^21/(f1^15 f4^6) + 4 f1 f2 mod 8", opt, 8, 1, 8,
             eta({{2, 21}, {1, -15}, {4, -6}}, 2) + eta({{1, 1}, {2, 1}}, 4));
    reg.expr("OPT(8n+1) == 6 f1 f2 mod 8", opt, 8, 1, 8, eta({{1, 1}, {2, 1}}, 6));
    reg.expr("OPT(24n+9) == -6 f3 f6 mod 8", opt, 24, 9, 8, eta({{3, 1}, {6, 1}}, -6));
    reg.expr("OPT(72n+9) == -6 f1 f2 mod 8", opt, 72, 9, 8, eta({{1, 1}, {2, 1}}, -6));
    for (unsigned a : {1u, 2u}) {
        const std::uint64_t nine = pow9(a);
        reg.expr("OPT(8*9^" + std::to_string(a) + "n+9^" + std::to_string(a) + ") == (-1)^" + std::to_string(a) +
                     " 6 f1 f2 mod 8",
                 opt, 8 * nine, nine, 8, eta({{1, 1}, {2, 1}}, a % 2 == 0 ? 6 : -6));
    }

    // Odd tuple sizes.
    for (unsigned k : {1u, 2u, 3u}) {
        const auto fam = FamilySpec::opt_k(2 * k + 1);
        const std::string tag = "[k=" + std::to_string(k) + "]";
        reg.expr("OPT_(2k+1)(n) == f2^3/(f1^2 f4) mod 4" + tag, fam, 1, 0, 4, eta({{2, 3}, {1, -2}, {4, -1}}));
        reg.expr("OPT_(2k+1)(2n+1) == 2 f2 f8^2/(f1^2 f4) mod 4" + tag, fam, 2, 1, 4,
                 eta({{2, 1}, {8, 2}, {1, -2}, {4, -1}}, 2));
        reg.expr("OPT_(2k+1)(2n+1) == 2 f4^3 mod 4" + tag, fam, 2, 1, 4, eta({{4, 3}}, 2));
    }

    // Four-tuples: the first step of the modulus-16 reduction.
    reg.expr("OPT_4(n) == f2^4 f1^8/f4^4 mod 16", FamilySpec::opt_k(4), 1, 0, 16, eta({{2, 4}, {1, 8}, {4, -4}}));

    ProgressionClaim support = progression_claim(FamilySpec::pbar_o(), 1, 1, 4,
                                                 "REG PBAR_O(n) == 0 mod 4 iff n is neither a square nor twice one");
    support.kind = ClaimKind::SquareSupport;
    out.push_back(std::move(support));
}

}  // namespace

std::vector<ProgressionClaim> suite_claims(SuiteId suite, const ParamBox& box)
{
    std::vector<ProgressionClaim> out;
    switch (suite) {
    case SuiteId::T1:
    case SuiteId::T2:
    case SuiteId::T3:
        add_t1_t3(out, suite, box);
        break;
    case SuiteId::T4:
        add_t4(out, box);
        break;
    case SuiteId::T5:
        add_t5(out, box);
        break;
    case SuiteId::T6:
        add_t6(out, box);
        break;
    case SuiteId::T7:
        add_t7(out, box);
        break;
    case SuiteId::T8:
        add_t8(out, box);
        break;
    case SuiteId::T9:
        add_t9(out, box);
        break;
    case SuiteId::T10:
        add_t10(out, box);
        break;
    case SuiteId::Lemma7:
        add_lemma7(out, box);
        break;
    case SuiteId::Regressions:
        add_regressions(out);
        break;
    case SuiteId::All:
        for (auto id : {SuiteId::T1, SuiteId::T2, SuiteId::T3, SuiteId::T4, SuiteId::T5, SuiteId::T6, SuiteId::T7,
                        SuiteId::T8, SuiteId::T9, SuiteId::T10, SuiteId::Lemma7, SuiteId::Regressions}) {
            auto part = suite_claims(id, box);
            out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
        }
        break;
    }
    return out;
}

std::vector<VerificationReport> run_claims(const std::vector<ProgressionClaim>& claims, std::size_t order,
                                           const SuiteOptions& options)
{
    if (order < 2) {
        throw std::invalid_argument("order must be at least 2");
    }
    // Distinct (source, modulus) pairs in first-use order.
    std::map<std::string, std::size_t> slot_of;
    std::vector<const ProgressionClaim*> slot_claim;
    std::vector<std::size_t> claim_slot(claims.size(), 0);
    for (std::size_t i = 0; i < claims.size(); ++i) {
        if (claims[i].skip_reason) {
            continue;
        }
        const auto [it, fresh] = slot_of.emplace(cache_key(claims[i]), slot_claim.size());
        if (fresh) {
            slot_claim.push_back(&claims[i]);
        }
        claim_slot[i] = it->second;
    }
    std::vector<std::optional<Series>> cache(slot_claim.size());
    parallel_for(slot_claim.size(), options.threads, [&](std::size_t s) {
        cache[s] = evaluate(slot_claim[s]->source, order, CoeffRing::mod(slot_claim[s]->modulus));
    });

    std::vector<VerificationReport> reports(claims.size());
    parallel_for(claims.size(), options.threads, [&](std::size_t i) {
        if (claims[i].skip_reason) {
            reports[i] = check_claim(claims[i], order);
        } else {
            reports[i] = check_claim_on(claims[i], *cache[claim_slot[i]], order);
        }
        if (!options.timing) {
            reports[i].elapsed_ms = 0;
        }
    });
    return reports;
}

std::vector<VerificationReport> run_suite(SuiteId suite, std::size_t order, const SuiteOptions& options,
                                          const ParamBox& box)
{
    return run_claims(suite_claims(suite, box), order, options);
}

namespace {

ScanResult scan_series(const Series& s, std::string family, std::uint64_t step, std::uint64_t offset)
{
    ScanResult r;
    r.family = std::move(family);
    r.step = step;
    r.offset = offset;
    r.exponent = 63;
    const Series ext = extract_progression(s, step, offset);
    // The constant term of every generating function is 1; scans cover n >= 1.
    const std::size_t first = offset == 0 ? 1 : 0;
    r.terms = ext.order() > first ? ext.order() - first : 0;
    for (std::size_t n = first; n < ext.order(); ++n) {
        const wide_int c = ext.coeff(n);
        const unsigned v = std::min(63u, v2(c, 63));
        if (v < r.exponent) {
            r.exponent = v;
            r.witness_index = step * n + offset;
            r.witness_residue = static_cast<std::uint64_t>(c);
        }
    }
    return r;
}

}  // namespace

ScanResult scan_divisibility(const SeriesExpr& source, std::string family, std::uint64_t step, std::uint64_t offset,
                             std::size_t order)
{
    if (step == 0) {
        throw std::invalid_argument("scan step must be positive");
    }
    const Series s = evaluate(source, order, CoeffRing::mod(CoeffRing::kMaxModulus));
    return scan_series(s, std::move(family), step, offset);
}

ScanResult scan_divisibility(const FamilySpec& family, std::uint64_t step, std::uint64_t offset, std::size_t order)
{
    return scan_divisibility(SeriesExpr::family(family), family.name(), step, offset, order);
}

unsigned conjectured_exponent(unsigned i, std::uint64_t j)
{
    switch (j) {
    case 1:
        return i + 1;
    case 2:
        return 2 * i + 1;
    case 3:
        return i + 3;
    case 4:
        return 2 * i + 4;
    case 5:
        return i + 2;
    case 6:
        return 2 * i + 3;
    case 7:
        return i + 4;
    default:
        throw std::invalid_argument("conjectured exponents exist for j = 1..7");
    }
}

std::vector<ConjectureScanRow> conjecture_scan(std::size_t order, const std::vector<unsigned>& is,
                                               const std::vector<std::uint64_t>& rs, const SuiteOptions& options)
{
    std::vector<ConjectureScanRow> rows;
    for (unsigned i : is) {
        if (i == 0 || i > 30) {
            throw std::invalid_argument("conjecture scan needs 1 <= i <= 30");
        }
        for (auto r : rs) {
            if (r % 2 == 0) {
                throw std::invalid_argument("conjecture scan needs odd r");
            }
            for (std::uint64_t j = 1; j <= 7; ++j) {
                ConjectureScanRow row;
                row.i = i;
                row.r = r;
                row.j = j;
                row.conjectured = conjectured_exponent(i, j);
                rows.push_back(row);
            }
        }
    }
    // One series per tuple size, then the seven progressions from each.
    std::vector<std::uint64_t> sizes;
    for (const auto& row : rows) {
        const std::uint64_t k = checked_mul_u64(checked_pow(2, row.i), row.r);
        if (std::find(sizes.begin(), sizes.end(), k) == sizes.end()) {
            sizes.push_back(k);
        }
    }
    const CoeffRing ring = CoeffRing::mod(CoeffRing::kMaxModulus);
    std::vector<std::optional<Series>> series(sizes.size());
    parallel_for(sizes.size(), options.threads, [&](std::size_t s) {
        series[s] = family_series(FamilySpec::opt_k(static_cast<unsigned>(sizes[s])), order, ring);
    });
    parallel_for(rows.size(), options.threads, [&](std::size_t idx) {
        auto& row = rows[idx];
        const std::uint64_t k = checked_pow(2, row.i) * row.r;
        const std::size_t s = static_cast<std::size_t>(std::find(sizes.begin(), sizes.end(), k) - sizes.begin());
        row.scan = scan_series(*series[s], FamilySpec::opt_k(static_cast<unsigned>(k)).name(), 8, row.j);
    });
    return rows;
}

}  // namespace qcong
