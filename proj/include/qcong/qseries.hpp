#pragma once

// Named q-series: Euler products f_k = (q^k; q^k)_inf, eta quotients,
// Ramanujan theta functions and the generating functions of the counting
// families (partitions, overpartitions, overpartition k-tuples with odd parts).

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <utility>

#include "qcong/series.hpp"

namespace qcong {

/// (q^k; q^k)_inf to the given order, from the pentagonal-number expansion of f_1.
Series euler_f(std::uint64_t k, std::size_t order, CoeffRing ring);

/// Finite product prod f_k^{e_k}. Duplicate k are merged; zero exponents dropped.
class EtaQuotient {
public:
    EtaQuotient() = default;
    EtaQuotient(std::initializer_list<std::pair<std::uint64_t, int>> factors);

    const std::map<std::uint64_t, int>& factors() const noexcept { return factors_; }
    bool is_one() const noexcept { return factors_.empty(); }
    int exponent(std::uint64_t k) const;
    /// Sum of |e_k|: the number of unit multiply/divide steps to build it.
    std::uint64_t total_degree() const noexcept;

    EtaQuotient operator*(const EtaQuotient& other) const;
    EtaQuotient pow(int e) const;

    /// e.g. "f2^9/(f1^6*f4^3)".
    std::string to_string() const;

    friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

private:
    void accumulate(std::uint64_t k, int e);

    std::map<std::uint64_t, int> factors_;
};

Series eta_quotient(const EtaQuotient& spec, std::size_t order, CoeffRing ring);

/// phi(q^m) = 1 + 2 sum_{n>=1} q^{m n^2}.
Series phi(std::uint64_t m, std::size_t order, CoeffRing ring);
/// psi(q^m) = sum_{n>=0} q^{m n(n+1)/2}.
Series psi(std::uint64_t m, std::size_t order, CoeffRing ring);

/// Ramanujan's f(a, b) on monomial arguments a = sign_a q^{exp_a}, b = sign_b q^{exp_b}.
class ThetaSpec {
public:
    ThetaSpec(int sign_a, wide_int exp_a, int sign_b, wide_int exp_b);

    /// Exponents given as fractions num/den; rejected unless both are integers,
    /// which is exactly when every term exponent k(k+1)/2 a + k(k-1)/2 b is integral.
    static ThetaSpec from_fractions(int sign_a, wide_int num_a, wide_int den_a, int sign_b, wide_int num_b,
                                    wide_int den_b);

    static ThetaSpec phi(std::uint64_t m) { return {1, static_cast<wide_int>(m), 1, static_cast<wide_int>(m)}; }
    static ThetaSpec psi(std::uint64_t m) { return {1, static_cast<wide_int>(m), 1, 3 * static_cast<wide_int>(m)}; }

    int sign_a() const noexcept { return sign_a_; }
    int sign_b() const noexcept { return sign_b_; }
    wide_int exp_a() const noexcept { return exp_a_; }
    wide_int exp_b() const noexcept { return exp_b_; }

    std::string to_string() const;

    friend bool operator==(const ThetaSpec&, const ThetaSpec&) = default;

private:
    int sign_a_;
    wide_int exp_a_;
    int sign_b_;
    wide_int exp_b_;
};

Series theta_f(const ThetaSpec& spec, std::size_t order, CoeffRing ring);

enum class Family { P, PBar, PBarK, Opt, OptK, PBarO };

class FamilySpec {
public:
    static FamilySpec p() { return {Family::P, 1}; }
    static FamilySpec pbar() { return {Family::PBar, 1}; }
    static FamilySpec pbar_k(unsigned k) { return {Family::PBarK, k}; }
    /// Overpartition triples with odd parts.
    static FamilySpec opt() { return {Family::Opt, 3}; }
    static FamilySpec opt_k(unsigned k) { return {Family::OptK, k}; }
    static FamilySpec pbar_o() { return {Family::PBarO, 1}; }

    /// Accepts P, PBAR, PBAR_K, OPT, OPT_K, PBAR_O (k used for the tuple families).
    static FamilySpec parse(std::string_view name, unsigned k = 1);

    Family family() const noexcept { return family_; }
    /// Number of tuple components (3 for OPT, 1 for the single families).
    unsigned k() const noexcept { return k_; }
    /// Parts restricted to odd sizes.
    bool odd_parts() const noexcept;
    /// First occurrence of each part size may be overlined.
    bool overlined() const noexcept;

    EtaQuotient eta() const;
    /// "OPT", "OPT_5", "PBAR_2", "PBAR_O", ...
    std::string name() const;

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;

private:
    FamilySpec(Family f, unsigned k);

    Family family_;
    unsigned k_;
};

Series family_series(const FamilySpec& spec, std::size_t order, CoeffRing ring);

/// Generating function of overpartitions into odd parts as the infinite product
/// phi(q) phi(q^2) phi(q^4)^2 phi(q^8)^4 ..., keeping the factors with 2^i < order.
Series pbar_o_product(std::size_t order, CoeffRing ring);

}  // namespace qcong
