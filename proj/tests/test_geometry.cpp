#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "weillab/geometry.hpp"

using namespace weillab;
using namespace weillab::geometry;
using ffield::FFElem;
using ffield::element_at;
using ffield::make_field;

namespace {

VarietySpec make_spec(u32 p, u32 a, Model model, u32 nvars,
                      std::vector<std::vector<long>> polys_terms) {
    // each term: [coeff, e_1..e_nvars]
    VarietySpec s;
    s.p = p;
    s.a = a;
    s.model = model;
    for (u32 i = 0; i < nvars; ++i) s.vars.push_back("x" + std::to_string(i));
    MPoly current;
    std::vector<MPoly> polys;
    for (const auto& row : polys_terms) {
        if (row.empty()) {  // poly separator
            polys.push_back(current);
            current = MPoly{};
            continue;
        }
        long c = ((row[0] % p) + p) % p;
        if (c) {
            Term t;
            t.coeff = static_cast<u32>(c);
            for (u32 i = 1; i <= nvars; ++i) t.exps.push_back(static_cast<u32>(row[i]));
            current.terms.push_back(t);
        }
    }
    polys.push_back(current);
    s.polys = polys;
    return s;
}

// Independent oracle: count affine solutions with FFElem value arithmetic and
// a plain nested recursion over all tuples. No strata, no odometer reuse.
Int oracle_affine_count(const VarietySpec& spec, u32 m) {
    const auto& F = make_field(spec.p, spec.a * m);
    u64 q = F.order_u64();
    u64 n = spec.n_amb();
    std::vector<FFElem> x(n, FFElem(F));
    Int count = 0;
    std::vector<u64> idx(n, 0);
    while (true) {
        for (u64 v = 0; v < n; ++v) x[v] = element_at(F, idx[v]);
        bool ok = true;
        for (const auto& f : spec.polys) {
            FFElem acc(F);
            for (const auto& t : f.terms) {
                FFElem term(F, t.coeff);
                for (u64 v = 0; v < n; ++v)
                    for (u32 e = 0; e < t.exps[v]; ++e) term = term * x[v];
                acc = acc + term;
            }
            if (!acc.is_zero()) {
                ok = false;
                break;
            }
        }
        if (ok) count += 1;
        u64 v = n;
        while (v > 0) {
            --v;
            if (++idx[v] < q) break;
            idx[v] = 0;
            if (v == 0) return count;
        }
        if (n == 0) return count;
    }
}

// Projective oracle: plain loop over normalized representatives with FFElem
// value arithmetic, one stratum at a time.
Int oracle_projective_count(const VarietySpec& spec, u32 m) {
    const auto& F = make_field(spec.p, spec.a * m);
    u64 q = F.order_u64();
    u32 n = spec.n_amb();
    Int count = 0;
    auto vanish_at = [&](const std::vector<FFElem>& x) {
        for (const auto& f : spec.polys) {
            FFElem acc(F);
            for (const auto& t : f.terms) {
                FFElem term(F, t.coeff);
                for (u32 v = 0; v < n; ++v)
                    for (u32 e = 0; e < t.exps[v]; ++e) term = term * x[v];
                acc = acc + term;
            }
            if (!acc.is_zero()) return false;
        }
        return true;
    };
    for (u32 s = 0; s < n; ++s) {
        u32 nfree = n - 1 - s;
        std::vector<u64> idx(nfree, 0);
        while (true) {
            std::vector<FFElem> x;
            for (u32 j = 0; j < s; ++j) x.emplace_back(F);
            x.emplace_back(F, 1);
            for (u32 j = 0; j < nfree; ++j) x.push_back(element_at(F, idx[j]));
            if (vanish_at(x)) count += 1;
            u32 v = nfree;
            bool done = (nfree == 0);
            while (v > 0) {
                --v;
                if (++idx[v] < q) break;
                idx[v] = 0;
                if (v == 0) done = true;
            }
            if (done) break;
        }
    }
    return count;
}

Int oracle_count(const VarietySpec& spec, u32 m) {
    return spec.model == Model::affine ? oracle_affine_count(spec, m)
                                       : oracle_projective_count(spec, m);
}

VarietySpec p2_space(u32 p) {
    return make_spec(p, 1, Model::projective, 3, {{0, 0, 0, 0}});
}

VarietySpec elliptic_f5() {
    // y^2 z = x^3 + x z^2 + z^3 over F_5
    return make_spec(5, 1, Model::projective, 3,
                     {{1, 0, 2, 1}, {-1, 3, 0, 0}, {-1, 1, 0, 2}, {-1, 0, 0, 3}});
}

VarietySpec nodal_cubic_f5() {
    // y^2 z = x^3 + x^2 z
    return make_spec(5, 1, Model::projective, 3, {{1, 0, 2, 1}, {-1, 3, 0, 0}, {-1, 2, 0, 1}});
}

VarietySpec fermat_quartic_f5() {
    return make_spec(5, 1, Model::projective, 3, {{1, 4, 0, 0}, {1, 0, 4, 0}, {1, 0, 0, 4}});
}

}  // namespace

TEST_CASE("whole affine line/plane counts") {
    VarietySpec line = make_spec(5, 1, Model::affine, 1, {{0, 0}});
    CHECK(count_points(line, 2) == 25);
    VarietySpec line3 = make_spec(3, 1, Model::affine, 1, {{0, 0}});
    CountSeries cs = count_series(line3, 2);
    CHECK(cs.counts == std::vector<Int>{3, 9});
}

TEST_CASE("P^1 over F_3 via a zero polynomial") {
    VarietySpec p1 = make_spec(3, 1, Model::projective, 2, {{0, 0, 0}});
    CHECK(count_points(p1, 1) == 4);
    VarietySpec p1f2 = make_spec(2, 1, Model::projective, 2, {{0, 0, 0}});
    CountSeries cs = count_series(p1f2, 3);
    CHECK(cs.counts == std::vector<Int>{3, 5, 9});
}

TEST_CASE("plane cubic over F_5 matches the naive representative loop") {
    // y^2 z - x^3 + x z^2
    VarietySpec c = make_spec(5, 1, Model::projective, 3, {{1, 0, 2, 1}, {-1, 3, 0, 0}, {1, 1, 0, 2}});
    // independent triple loop over the 31 normalized representatives
    long hits = 0;
    auto eval = [](long x, long y, long z) {
        long v = (y * y % 5) * z % 5 - x * x % 5 * x % 5 + x * (z * z % 5) % 5;
        return ((v % 5) + 5) % 5;
    };
    for (long y = 0; y < 5; ++y)
        for (long z = 0; z < 5; ++z)
            if (eval(1, y, z) == 0) ++hits;
    for (long z = 0; z < 5; ++z)
        if (eval(0, 1, z) == 0) ++hits;
    if (eval(0, 0, 1) == 0) ++hits;
    CHECK(count_points(c, 1) == hits);
    CHECK(count_points(c, 1) == oracle_count(c, 1));
}

TEST_CASE("elliptic curve over F_5: N_1 = 9 and oracle recount through m = 4") {
    VarietySpec e = elliptic_f5();
    CHECK(count_points(e, 1) == 9);
    CountSeries cs = count_series(e, 4);
    for (u32 m = 1; m <= 4; ++m) CHECK(cs.at(m) == oracle_count(e, m));
}

TEST_CASE("projective space count formula") {
    ffield::PrimePower q5(5, 1);
    CHECK(projective_space_count(0, q5, 1) == 1);
    CHECK(projective_space_count(2, q5, 1) == 31);
    for (u32 p : {2u, 3u, 5u, 7u}) {
        ffield::PrimePower q(p, 1);
        for (u32 n = 0; n <= 2; ++n) {
            VarietySpec pn = make_spec(p, 1, Model::projective, n + 1,
                                       {std::vector<long>(n + 2, 0)});
            for (u32 m = 1; m <= 2; ++m)
                CHECK(count_points(pn, m) == projective_space_count(n, q, m));
        }
    }
}

TEST_CASE("pivot fast path agrees with the generic enumerator") {
    for (u32 m = 1; m <= 3; ++m) {
        for (auto spec : {elliptic_f5(), nodal_cubic_f5(), fermat_quartic_f5()}) {
            auto fast = count_points_pivot(spec, m);
            REQUIRE(fast.has_value());
            CHECK(*fast == count_points_generic(spec, m));
        }
    }
    // affine pivot shape
    VarietySpec aff = make_spec(7, 1, Model::affine, 2, {{1, 0, 2}, {-1, 3, 0}, {-1, 1, 0}});
    for (u32 m = 1; m <= 2; ++m) {
        auto fast = count_points_pivot(aff, m);
        REQUIRE(fast.has_value());
        CHECK(*fast == count_points_generic(aff, m));
        CHECK(*fast == oracle_count(aff, m));
    }
}

TEST_CASE("parallel and sequential counts agree bit-exactly") {
    RunLimits seq;
    seq.threads = 1;
    RunLimits par;
    par.threads = 3;
    for (auto spec : {elliptic_f5(), fermat_quartic_f5(), p2_space(3)}) {
        for (u32 m = 1; m <= 3; ++m)
            CHECK(count_points(spec, m, seq) == count_points(spec, m, par));
    }
    VarietySpec multi = make_spec(3, 1, Model::affine, 3,
                                  {{1, 2, 0, 0}, {1, 0, 2, 0}, {1, 0, 0, 2}, {-1, 0, 0, 0}});
    for (u32 m = 1; m <= 2; ++m)
        CHECK(count_points_generic(multi, m, seq) == count_points_generic(multi, m, par));
}

TEST_CASE("projective count equals scaled affine cone count") {
    VarietySpec conic = make_spec(7, 1, Model::projective, 3,
                                  {{1, 2, 0, 0}, {1, 0, 2, 0}, {-1, 0, 0, 2}});
    for (u32 m = 1; m <= 2; ++m) {
        VarietySpec cone = conic;
        cone.model = Model::affine;
        Int qm = int_pow(7ul, m);
        CHECK(count_points(cone, m) - 1 == (qm - 1) * count_points(conic, m));
    }
}

TEST_CASE("point count of a disjoint-variable union multiplies") {
    // {f(x) = 0} x {g(y) = 0} inside A^2
    VarietySpec prod = make_spec(7, 1, Model::affine, 2,
                                 {{1, 2, 0}, {-1, 0, 0}, {}, {1, 0, 3}, {-1, 0, 0}});
    VarietySpec fx = make_spec(7, 1, Model::affine, 1, {{1, 2}, {-1, 0}});
    VarietySpec gy = make_spec(7, 1, Model::affine, 1, {{1, 3}, {-1, 0}});
    for (u32 m = 1; m <= 2; ++m)
        CHECK(count_points(prod, m) == count_points(fx, m) * count_points(gy, m));
}

TEST_CASE("budget accounting") {
    VarietySpec big = p2_space(7);
    RunLimits tight;
    tight.budget = 1000;
    CHECK_THROWS_AS(count_points(big, 2, tight), budget_exceeded_error);
    // series propagates the failing m
    RunLimits medium;
    medium.budget = 60;  // allows m=1 (57 representatives), not m=2
    CHECK(count_points(big, 1, medium) == 57);
    try {
        count_series(big, 2, medium);
        FAIL("expected budget_exceeded_error");
    } catch (const budget_exceeded_error& e) {
        CHECK(std::string(e.what()).find("m=2") != std::string::npos);
    }
}

TEST_CASE("non-homogeneous polynomials are rejected in projective model") {
    VarietySpec bad = make_spec(5, 1, Model::projective, 3, {{1, 0, 2, 1}, {-1, 1, 0, 0}});
    CHECK_THROWS_AS(count_points(bad, 1), non_homogeneous_error);
}

TEST_CASE("smoothness probe: smooth conic vs nodal cubic") {
    VarietySpec conic = make_spec(7, 1, Model::projective, 3,
                                  {{1, 2, 0, 0}, {1, 0, 2, 0}, {-1, 0, 0, 2}});
    auto rep = smoothness_probe(conic, 2);
    CHECK(!rep.singular_point_found);
    CHECK(rep.note.find("heuristic") != std::string::npos);

    auto bad = smoothness_probe(nodal_cubic_f5(), 2);
    REQUIRE(bad.singular_point_found);
    CHECK(bad.witness_m == 1);
    // the node is (0:0:1)
    REQUIRE(bad.witness.size() == 3);
    CHECK(bad.witness[0] == std::vector<u32>{0});
    CHECK(bad.witness[1] == std::vector<u32>{0});
    CHECK(bad.witness[2] == std::vector<u32>{1});

    RunLimits tiny;
    tiny.budget = 3;
    CHECK_THROWS_AS(smoothness_probe(conic, 1, tiny), budget_exceeded_error);
}

TEST_CASE("JSON round trip and parsing") {
    std::string text = R"({"p":5,"a":1,"model":"projective","vars":["x","y","z"],
        "polys":[[["1",0,2,1],["-1",3,0,0],["-1",1,0,2],["-1",0,0,3]]],
        "dim":1,"multidegree":[3]})";
    VarietySpec s = VarietySpec::from_json_text(text);
    CHECK(s.p == 5);
    CHECK(s.n_amb() == 3);
    CHECK(s.declared_dim == 1);
    CHECK(s.multidegree == std::vector<long>{3});
    CHECK(count_points(s, 1) == 9);
    // negative coefficient got reduced mod p
    CHECK(s.polys[0].terms[1].coeff == 4);

    VarietySpec back = VarietySpec::from_json_text(s.to_json_text());
    CHECK(count_points(back, 2) == count_points(s, 2));

    CHECK_THROWS_AS(VarietySpec::from_json_text(
                        R"({"p":6,"a":1,"model":"affine","vars":["x"],"polys":[]})"),
                    not_prime_error);
}

TEST_CASE("count_series over a base extension field (a > 1)") {
    // whole affine line over F_9: N_m = 9^m
    VarietySpec line = make_spec(3, 2, Model::affine, 1, {{0, 0}});
    CountSeries cs = count_series(line, 3);
    CHECK(cs.counts == std::vector<Int>{9, 81, 729});
    // a conic over F_9, cross-checked against the oracle
    VarietySpec conic = make_spec(3, 2, Model::projective, 3,
                                  {{1, 2, 0, 0}, {1, 0, 2, 0}, {1, 0, 0, 2}});
    for (u32 m = 1; m <= 2; ++m) CHECK(count_points(conic, m) == oracle_count(conic, m));
}
