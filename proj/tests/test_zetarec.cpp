#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <vector>

#include "weillab/geometry.hpp"
#include "weillab/poly.hpp"
#include "weillab/zetarec.hpp"

using namespace weillab;
using namespace weillab::zetarec;
using ffield::u64;
using geometry::CountSeries;

namespace {

CountSeries series_of(u32 p, u32 a, std::vector<long> counts) {
    CountSeries cs;
    cs.p = p;
    cs.a = a;
    for (long c : counts) cs.counts.push_back(c);
    return cs;
}

CountSeries powers_plus_one(u32 q, u32 max_m) {  // N_m = q^m + 1 (P^1)
    CountSeries cs;
    cs.p = q;
    cs.a = 1;
    for (u32 m = 1; m <= max_m; ++m) cs.counts.push_back(int_pow(static_cast<unsigned long>(q), m) + 1);
    return cs;
}

geometry::VarietySpec elliptic_f5() {
    // y^2 z = x^3 + x z^2 + z^3
    geometry::VarietySpec s;
    s.p = 5;
    s.a = 1;
    s.model = geometry::Model::projective;
    s.vars = {"x", "y", "z"};
    geometry::MPoly f;
    f.terms = {{1, {0, 2, 1}}, {4, {3, 0, 0}}, {4, {1, 0, 2}}, {4, {0, 0, 3}}};
    s.polys = {f};
    return s;
}

// Closed-point orbit oracle: derive the number c_e of closed points of each
// degree e from the counts by Moebius inversion, then multiply the Euler
// factors (1 - t^e)^{-c_e} term by term.
std::vector<Int> orbit_product_series(const CountSeries& counts, std::size_t T) {
    std::map<u64, Int> c_e;
    for (u64 e = 1; e <= T; ++e) {
        Int acc = 0;
        for (u64 d : divisors_of(e)) acc += Int(mobius(e / d)) * counts.counts[d - 1];
        REQUIRE(acc % Int(static_cast<unsigned long>(e)) == 0);
        c_e[e] = acc / static_cast<unsigned long>(e);
        REQUIRE(c_e[e] >= 0);
    }
    std::vector<Rat> acc(T + 1, Rat(0));
    acc[0] = 1;
    for (u64 e = 1; e <= T; ++e) {
        // (1 - t^e)^{-c} = sum_j binom(c + j - 1, j) t^{ej}
        std::vector<Rat> factor(T + 1, Rat(0));
        factor[0] = 1;
        Int c = c_e[e];
        Int binom = 1;
        for (u64 j = 1; e * j <= T; ++j) {
            binom = binom * (c + static_cast<long>(j) - 1);
            binom /= static_cast<unsigned long>(j);
            factor[e * j] = Rat(binom);
        }
        acc = poly::series_mul(acc, factor, T);
    }
    std::vector<Int> out;
    for (auto& r : acc) {
        r.canonicalize();
        REQUIRE(r.get_den() == 1);
        out.push_back(r.get_num());
    }
    return out;
}

}  // namespace

TEST_CASE("zeta series of P^1 is the geometric product expansion") {
    PowerSeriesZ s = zeta_series(powers_plus_one(2, 6), 6);
    // 1/((1-t)(1-2t)) has coefficients 2^{n+1} - 1
    for (std::size_t n = 0; n <= 6; ++n) CHECK(s.coeffs[n] == int_pow(2ul, n + 1) - 1);

    CountSeries qpow = series_of(3, 1, {3, 9, 27, 81});
    PowerSeriesZ s2 = zeta_series(qpow, 4);
    for (std::size_t n = 0; n <= 4; ++n) CHECK(s2.coeffs[n] == int_pow(3ul, n));
}

TEST_CASE("zeta series of the elliptic curve matches the closed-point orbit oracle") {
    CountSeries cs = geometry::count_series(elliptic_f5(), 6);
    PowerSeriesZ s = zeta_series(cs, 6);
    std::vector<Int> oracle = orbit_product_series(cs, 6);
    CHECK(s.coeffs == oracle);
}

TEST_CASE("inconsistent counts are rejected with the failing index") {
    CountSeries bad = series_of(2, 1, {1, 0});
    try {
        zeta_series(bad, 2);
        FAIL("expected non_integral_coefficient_error");
    } catch (const non_integral_coefficient_error& e) {
        CHECK(e.index == 2);
    }
}

TEST_CASE("hankel determinant basics") {
    std::vector<Int> pow2;
    for (int n = 0; n < 12; ++n) pow2.push_back(int_pow(2ul, n));
    for (std::size_t k = 0; k <= 6; ++k) CHECK(hankel_zero_test(pow2, 1, k));

    std::vector<Int> fact{1, 1, 2, 6, 24, 120, 720};
    // independent 3x3 cofactor expansion oracle
    auto det3 = [&](std::size_t k) -> Int {
        auto a = [&](std::size_t i, std::size_t j) -> Int { return fact[i + j + k]; };
        return Int(a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                   a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                   a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)));
    };
    REQUIRE(det3(0) != 0);
    CHECK(!hankel_zero_test(fact, 2, 0));

    CHECK_THROWS_AS(hankel_zero_test(fact, 3, 3), insufficient_terms_error);
}

TEST_CASE("hankel windows vanish exactly where the recurrence says") {
    // P^1 / F_2: deg P = 0, deg Q = 2
    PowerSeriesZ s = zeta_series(powers_plus_one(2, 10), 10);
    for (std::size_t k = 0; k <= 3; ++k) CHECK(hankel_zero_test(s.coeffs, 2, k));
    CHECK(hankel_zero_test(s.coeffs, 3, 0));
    for (std::size_t k = 1; k <= 3; ++k) CHECK(!hankel_zero_test(s.coeffs, 1, k));

    // elliptic / F_5: deg P = 2, deg Q = 2, vanishing from k >= 1 at M = 2
    CountSeries cs = geometry::count_series(elliptic_f5(), 8);
    PowerSeriesZ se = zeta_series(cs, 8);
    for (std::size_t k = 1; k <= 4; ++k) CHECK(hankel_zero_test(se.coeffs, 2, k));
    for (std::size_t k = 1; k <= 4; ++k) CHECK(!hankel_zero_test(se.coeffs, 1, k));
}

TEST_CASE("reconstructing 1/(1-qt) and P^1") {
    CountSeries qpow = series_of(7, 1, {7, 49, 343, 2401, 16807});
    ZetaFunction z = rational_reconstruct(zeta_series(qpow, 5), 2, 7, 1);
    CHECK(z.P == std::vector<Int>{1});
    CHECK(z.Q == std::vector<Int>{1, -7});

    ZetaFunction zp1 = rational_reconstruct(zeta_series(powers_plus_one(3, 5), 5), 2, 3, 1);
    CHECK(zp1.P == std::vector<Int>{1});
    CHECK(zp1.Q == std::vector<Int>{1, -4, 3});  // (1-t)(1-3t)
}

TEST_CASE("reconstructing the elliptic curve zeta over F_5") {
    CountSeries cs = geometry::count_series(elliptic_f5(), 6);
    ZetaFunction z = rational_reconstruct(zeta_series(cs, 6), 2, 5, 1);
    CHECK(z.Q == std::vector<Int>{1, -6, 5});  // (1-t)(1-5t)
    REQUIRE(z.P.size() == 3);
    // P = 1 - a t + 5 t^2 with a = q + 1 - N_1
    Int a_p = Int(5 + 1) - cs.at(1);
    CHECK(z.P == std::vector<Int>{1, -a_p, 5});
    CHECK(z.P[0] == 1);
    CHECK(z.Q[0] == 1);

    // roundtrip through every count, plus forward prediction consistency
    for (u32 m = 1; m <= 6; ++m) CHECK(expand_counts(z, m) == cs.at(m));

    // trivial expansions
    ZetaFunction line;
    line.P = {1};
    line.Q = {1, -5};
    line.p = 5;
    line.a = 1;
    for (u32 m = 1; m <= 5; ++m) CHECK(expand_counts(line, m) == int_pow(5ul, m));
}

TEST_CASE("stability: more terms never shrink the reconstruction degree") {
    CountSeries cs = geometry::count_series(elliptic_f5(), 8);
    CountSeries cs6 = cs;
    cs6.counts.resize(6);
    ZetaFunction z6 = rational_reconstruct(zeta_series(cs6, 6), 2, 5, 1);
    ZetaFunction z8 = rational_reconstruct(zeta_series(cs, 8), 2, 5, 1);
    CHECK(z6.P == z8.P);
    CHECK(z6.Q == z8.Q);
}

TEST_CASE("forward prediction: reconstructed zeta predicts unseen counts") {
    // reconstruct from m <= 6, then predict m = 7, 8 and recount honestly
    CountSeries cs = geometry::count_series(elliptic_f5(), 6);
    ZetaFunction z = rational_reconstruct(zeta_series(cs, 6), 2, 5, 1);
    for (u32 m = 7; m <= 8; ++m)
        CHECK(expand_counts(z, m) == geometry::count_points(elliptic_f5(), m));
}

TEST_CASE("corrupted data fails holdout validation loudly") {
    PowerSeriesZ s = zeta_series(powers_plus_one(3, 6), 6);
    s.coeffs[6] += 1;  // the fit comes from earlier terms; prediction must break
    CHECK_THROWS_AS(rational_reconstruct(s, 2, 3, 1), holdout_mismatch_error);

    // inconsistent counts die earlier, inside the series assembly
    CountSeries bad = powers_plus_one(3, 6);
    bad.counts[5] += 1;
    CHECK_THROWS_AS(zeta_series(bad, 6), non_integral_coefficient_error);
}

TEST_CASE("underdetermined series fail loudly rather than guess") {
    // genus-3 quartic needs 9 coefficients + holdout; give it too few
    geometry::VarietySpec s;
    s.p = 5;
    s.a = 1;
    s.model = geometry::Model::projective;
    s.vars = {"x", "y", "z"};
    geometry::MPoly f;
    f.terms = {{1, {4, 0, 0}}, {1, {0, 4, 0}}, {1, {0, 0, 4}}};
    s.polys = {f};
    CountSeries cs = geometry::count_series(s, 6);
    PowerSeriesZ ps = zeta_series(cs, 6);
    CHECK_THROWS(rational_reconstruct(ps, 2, 5, 1));
}

TEST_CASE("zeta JSON round trip") {
    ZetaFunction z;
    z.P = {1, 3, 5};
    z.Q = {1, -6, 5};
    z.p = 5;
    z.a = 1;
    ZetaFunction back = ZetaFunction::from_json_text(z.to_json_text());
    CHECK(back.P == z.P);
    CHECK(back.Q == z.Q);
    CHECK(back.p == 5);
    CHECK(back.a == 1);

    ZetaFunction z9 = ZetaFunction::from_json_text(R"({"P":["1"],"Q":["1","-9"],"q":"9"})");
    CHECK(z9.p == 3);
    CHECK(z9.a == 2);
}
