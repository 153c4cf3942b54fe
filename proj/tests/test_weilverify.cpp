#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "weillab/geometry.hpp"
#include "weillab/roots.hpp"
#include "weillab/weilverify.hpp"
#include "weillab/zetarec.hpp"

using namespace weillab;
using namespace weillab::weilverify;
using zetarec::ZetaFunction;

namespace {

ZetaFunction zf(std::vector<long> P, std::vector<long> Q, u32 p, u32 a) {
    ZetaFunction z;
    for (long c : P) z.P.push_back(c);
    for (long c : Q) z.Q.push_back(c);
    z.p = p;
    z.a = a;
    return z;
}

geometry::VarietySpec elliptic_f5() {
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

ZetaFunction reconstruct_elliptic_f5() {
    auto cs = geometry::count_series(elliptic_f5(), 6);
    return zetarec::rational_reconstruct(zetarec::zeta_series(cs, 6), 2, 5, 1);
}

}  // namespace

TEST_CASE("root finder: certified roots of small integer polynomials") {
    // (1 - t)(1 - 2t)(1 - 3t) = 1 - 6t + 11t^2 - 6t^3
    std::vector<Int> f{1, -6, 11, -6};
    auto rs = roots::find_roots_int(f, 128);
    REQUIRE(rs.roots.size() == 3);
    std::vector<double> mods;
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(rs.distance_bound[j] < 1e-25);
        mods.push_back(rs.roots[j].abs().get_d());
    }
    std::sort(mods.begin(), mods.end());
    CHECK(mods[0] == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(mods[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(mods[2] == doctest::Approx(1.0).epsilon(1e-12));

    // double root: (1 - t)^2
    std::vector<Int> g{1, -2, 1};
    auto rs2 = roots::find_roots_int(g, 256);
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(rs2.distance_bound[j] < 1e-9);
        CHECK(rs2.roots[j].abs().get_d() == doctest::Approx(1.0).epsilon(1e-8));
    }

    // complex pair: 1 + 3t + 5t^2, |alpha| = sqrt(5)
    std::vector<Int> h{1, 3, 5};
    auto rs3 = roots::find_roots_int(h, 128);
    for (std::size_t j = 0; j < 2; ++j) {
        double alpha_mod = 1.0 / rs3.roots[j].abs().get_d();
        CHECK(alpha_mod == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
    }
}

TEST_CASE("weight split of P^2 over F_5") {
    // Z = 1/((1-t)(1-5t)(1-25t))
    ZetaFunction z = zf({1}, {1, -31, 155, -125}, 5, 1);
    WeightSplit ws = weight_split(z, 2);
    CHECK(ws.factors[0].poly == std::vector<Int>{1, -1});
    CHECK(ws.factors[2].poly == std::vector<Int>{1, -5});
    CHECK(ws.factors[4].poly == std::vector<Int>{1, -25});
    CHECK(ws.factors[1].poly == std::vector<Int>{1});
    CHECK(ws.factors[3].poly == std::vector<Int>{1});
    CHECK(ws.betti_vector() == std::vector<long>{1, 0, 1, 0, 1});
}

TEST_CASE("weight split of the elliptic curve over F_5") {
    ZetaFunction z = reconstruct_elliptic_f5();
    WeightSplit ws = weight_split(z, 1);
    CHECK(ws.betti_vector() == std::vector<long>{1, 2, 1});
    CHECK(ws.factors[1].poly == z.P);
    for (const auto& r : ws.factors[1].roots) {
        CHECK(r.modulus == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
        CHECK(r.distance_bound < 1e-9);
    }
}

TEST_CASE("weight split rejects a wrong dimension declaration") {
    ZetaFunction z = zf({1}, {1, -31, 155, -125}, 5, 1);  // P^2 zeta
    CHECK_THROWS_AS(weight_split(z, 1), unclassifiable_root_error);
}

TEST_CASE("functional equation: projective spaces and the epsilon rule") {
    // P^1: eps = +1, chi = 2
    ZetaFunction zp1 = zf({1}, {1, -3, 2}, 2, 1);
    auto rep1 = functional_equation_check(zp1, 1);
    CHECK(rep1.holds);
    CHECK(rep1.epsilon == 1);
    CHECK(rep1.chi == 2);
    CHECK(rep1.epsilon_rule_checked);
    CHECK(rep1.epsilon_rule_consistent);

    // P^0: eps = -1 (N = 1 for the eigenvalue q^0 = 1), chi = 1
    ZetaFunction zp0 = zf({1}, {1, -1}, 5, 1);
    auto rep0 = functional_equation_check(zp0, 0);
    CHECK(rep0.holds);
    CHECK(rep0.epsilon == -1);
    CHECK(rep0.chi == 1);

    // P^2: eps = -1 by the multiplicity rule (N = 1 at q^{n/2} = 5), chi = 3
    ZetaFunction zp2 = zf({1}, {1, -31, 155, -125}, 5, 1);
    WeightSplit ws = weight_split(zp2, 2);
    auto rep2 = functional_equation_check(zp2, 2, &ws);
    CHECK(rep2.holds);
    CHECK(rep2.epsilon == -1);
    CHECK(rep2.chi == 3);
    CHECK(rep2.N_mult == 1);
    CHECK(rep2.epsilon_rule_checked);
    CHECK(rep2.epsilon_rule_consistent);
}

TEST_CASE("functional equation: elliptic curve is exact with chi = 0") {
    ZetaFunction z = reconstruct_elliptic_f5();
    auto rep = functional_equation_check(z, 1);
    CHECK(rep.holds);
    CHECK(rep.epsilon == 1);
    CHECK(rep.chi == 0);
    CHECK(rep.epsilon_rule_consistent);
}

TEST_CASE("functional equation fails as data on non-proper input") {
    // affine line: Z = 1/(1 - 5t), n = 1, chi = 1: n*chi odd
    ZetaFunction z = zf({1}, {1, -5}, 5, 1);
    auto rep = functional_equation_check(z, 1);
    CHECK(!rep.holds);
    CHECK(rep.hypothesis_violated);
    CHECK(rep.epsilon == 0);
}

TEST_CASE("duality pairing") {
    // P^2: {25/1} <-> P_4, {25/5} <-> P_2, {25/25} <-> P_0
    ZetaFunction zp2 = zf({1}, {1, -31, 155, -125}, 5, 1);
    WeightSplit ws2 = weight_split(zp2, 2);
    auto rep2 = duality_check(ws2);
    CHECK(rep2.holds);
    CHECK(rep2.worst_distance < 1e-12);

    // elliptic: P_1 is self-paired by alpha -> 5/alpha
    ZetaFunction ze = reconstruct_elliptic_f5();
    WeightSplit wse = weight_split(ze, 1);
    auto repe = duality_check(wse);
    CHECK(repe.holds);

    // nodal-style zeta 1/(1-5t): P_0 empty vs P_2 nonempty, duality must fail
    ZetaFunction zn = zf({1}, {1, -5}, 5, 1);
    WeightSplit wsn = weight_split(zn, 1);
    auto repn = duality_check(wsn);
    CHECK(!repn.holds);
}

TEST_CASE("complete intersection bound") {
    // elliptic: b = 2, |N_1 - 6|^2 <= 4*5
    ZetaFunction ze = reconstruct_elliptic_f5();
    WeightSplit wse = weight_split(ze, 1);
    auto rep = ci_bound_check(1, ze, wse);
    CHECK(rep.b == 2);
    CHECK(rep.holds);
    CHECK(rep.lhs_abs * rep.lhs_abs <= rep.bound_sq);

    // P^2 itself: lhs = 0
    ZetaFunction zp2 = zf({1}, {1, -31, 155, -125}, 5, 1);
    WeightSplit ws2 = weight_split(zp2, 2);
    auto rep2 = ci_bound_check(2, zp2, ws2);
    CHECK(rep2.lhs_abs == 0);
    CHECK(rep2.holds);
}

TEST_CASE("weight predicate") {
    CHECK(weight_predicate({Rat(1), Rat(-7)}, Int(7), 2.0));
    CHECK(!weight_predicate({Rat(1), Rat(-1)}, Int(7), 2.0));
    ZetaFunction ze = reconstruct_elliptic_f5();
    std::vector<Rat> p1(ze.P.begin(), ze.P.end());
    double worst = 0;
    CHECK(weight_predicate(p1, Int(5), 1.0, 1e-6, &worst));
    CHECK(worst < 1e-9);
}

TEST_CASE("scaling consistency: base change to F_25 squares the root moduli") {
    ZetaFunction z5 = reconstruct_elliptic_f5();
    // counts over F_25 are the even-index counts; exact from the zeta data
    geometry::CountSeries cs25;
    cs25.p = 5;
    cs25.a = 2;
    for (u32 m = 1; m <= 6; ++m) cs25.counts.push_back(zetarec::expand_counts(z5, 2 * m));
    ZetaFunction z25 = zetarec::rational_reconstruct(zetarec::zeta_series(cs25, 6), 2, 5, 2);
    WeightSplit ws5 = weight_split(z5, 1);
    WeightSplit ws25 = weight_split(z25, 1);
    REQUIRE(ws25.factors[1].roots.size() == 2);
    for (const auto& r : ws25.factors[1].roots) {
        double expected = ws5.factors[1].roots[0].modulus * ws5.factors[1].roots[0].modulus;
        CHECK(std::fabs(r.modulus - expected) / expected < 1e-6);
    }
    auto fe = functional_equation_check(z25, 1);
    CHECK(fe.holds);
    CHECK(duality_check(ws25).holds);
}
