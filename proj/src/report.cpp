#include <chrono>
#include <numeric>

#include "weillab/errors.hpp"
#include "weillab/expsum.hpp"
#include "weillab/modulartau.hpp"
#include "weillab/pipeline.hpp"
#include "weillab/poly.hpp"
#include "weillab/weilverify.hpp"
#include "weillab/zetarec.hpp"

namespace weillab::pipeline {

using nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

ordered_json tool_header(const char* command) {
    ordered_json j;
    j["tool"] = {{"name", "weillab"}, {"version", kToolVersion}};
    j["command"] = command;
    return j;
}

ordered_json config_echo(const Config& cfg) {
    ordered_json j;
    j["budget"] = cfg.budget;
    j["max_m"] = cfg.max_m;
    j["holdout"] = cfg.holdout;
    if (cfg.dim) j["dim"] = *cfg.dim;
    j["tolerance"] = {{"classification", cfg.tol_class},
                      {"pairing", cfg.tol_pair},
                      {"purity", cfg.tol_purity}};
    j["probe_max_m"] = cfg.probe_max_m;
    return j;
}

ordered_json int_array(const std::vector<Int>& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& x : v) arr.push_back(x.get_str());
    return arr;
}

ordered_json spec_echo(const geometry::VarietySpec& spec) {
    return ordered_json::parse(spec.to_json_text());
}

geometry::RunLimits limits_of(const Config& cfg) {
    geometry::RunLimits lim;
    lim.budget = cfg.budget;
    lim.threads = cfg.threads;
    return lim;
}

struct CheckList {
    ordered_json checks = ordered_json::array();
    bool all_hold = true;

    void add(ordered_json c) {
        if (c.contains("holds") && !c["holds"].get<bool>()) all_hold = false;
        checks.push_back(std::move(c));
    }
};

}  // namespace

Outcome run_count(const geometry::VarietySpec& spec, const Config& cfg) {
    if (cfg.max_m == 0) throw input_error("count: --max-m is required");
    Outcome out;
    out.report = tool_header("count");
    out.report["config"] = config_echo(cfg);
    out.report["spec"] = spec_echo(spec);
    auto t0 = std::chrono::steady_clock::now();
    geometry::CountSeries cs = geometry::count_series(spec, cfg.max_m, limits_of(cfg));
    out.report["counts"] = int_array(cs.counts);
    if (cfg.timings)
        out.report["timings"] = {
            {"count_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                            .count()}};
    out.exit_code = 0;
    return out;
}

Outcome run_zeta(const geometry::VarietySpec& spec, const Config& cfg) {
    if (cfg.max_m == 0) throw input_error("zeta: --max-m is required");
    Outcome out;
    out.report = tool_header("zeta");
    out.report["config"] = config_echo(cfg);
    out.report["spec"] = spec_echo(spec);
    CheckList checks;
    ordered_json hypotheses;
    hypotheses["geometric_irreducibility"] = "assumed; not checkable by enumeration";
    auto t0 = std::chrono::steady_clock::now();

    geometry::CountSeries cs = geometry::count_series(spec, cfg.max_m, limits_of(cfg));
    out.report["counts"] = int_array(cs.counts);

    zetarec::PowerSeriesZ series;
    try {
        series = zetarec::zeta_series(cs, cfg.max_m);
        checks.add({{"name", "series_integrality"}, {"mode", "exact"}, {"holds", true}});
    } catch (const non_integral_coefficient_error& e) {
        checks.add({{"name", "series_integrality"},
                    {"mode", "exact"},
                    {"holds", false},
                    {"detail", e.what()}});
        out.report["checks"] = checks.checks;
        out.report["hypotheses"] = hypotheses;
        out.exit_code = 1;
        return out;
    }

    zetarec::ZetaFunction z;
    try {
        z = zetarec::rational_reconstruct(series, cfg.holdout, spec.p, spec.a);
        checks.add({{"name", "holdout_validation"},
                    {"mode", "exact"},
                    {"holds", true},
                    {"terms_used", z.terms_used},
                    {"holdout", z.holdout}});
    } catch (const error& e) {
        checks.add({{"name", "holdout_validation"},
                    {"mode", "exact"},
                    {"holds", false},
                    {"detail", std::string(e.what()) + "; raise --max-m"}});
        out.report["checks"] = checks.checks;
        out.report["hypotheses"] = hypotheses;
        out.exit_code = 1;
        return out;
    }
    out.report["zeta"] = ordered_json::parse(z.to_json_text());
    out.report["reconstruction"] = {{"terms_used", z.terms_used},
                                    {"holdout", z.holdout},
                                    {"deg_P", poly::degree(z.P)},
                                    {"deg_Q", poly::degree(z.Q)}};

    // every input count must be reproduced by the reconstruction
    bool roundtrip = true;
    for (u32 m = 1; m <= cfg.max_m; ++m)
        if (zetarec::expand_counts(z, m) != cs.at(m)) roundtrip = false;
    checks.add({{"name", "count_roundtrip"}, {"mode", "exact"}, {"holds", roundtrip}});

    // Hankel windows must vanish where the recurrence order says they do
    {
        std::size_t kappa = static_cast<std::size_t>(poly::degree(z.Q));
        long pi_deg = poly::degree(z.P);
        std::size_t kmin =
            static_cast<std::size_t>(std::max<long>(0, pi_deg - static_cast<long>(kappa) + 1));
        if (kappa >= 1 && kmin + 2 * kappa + 1 <= series.coeffs.size()) {
            bool vanish = zetarec::hankel_zero_test(series.coeffs, kappa, kmin);
            checks.add({{"name", "hankel_vanishing"},
                        {"mode", "exact"},
                        {"holds", vanish},
                        {"window_M", kappa},
                        {"k", kmin}});
        } else {
            checks.add({{"name", "hankel_vanishing"}, {"mode", "exact"}, {"skipped", true}});
        }
    }

    long n_dim = -1;
    if (cfg.dim)
        n_dim = *cfg.dim;
    else if (spec.declared_dim)
        n_dim = *spec.declared_dim;

    if (n_dim >= 0) {
        try {
            weilverify::WeightSplit ws =
                weilverify::weight_split(z, static_cast<u32>(n_dim), cfg.tol_class);
            ordered_json jw;
            jw["n"] = ws.n;
            jw["betti"] = ws.betti_vector();
            jw["tolerance"] = ws.tolerance;
            jw["precision_bits"] = ws.precision_bits;
            ordered_json jf = ordered_json::array();
            for (const auto& f : ws.factors) {
                ordered_json e;
                e["weight"] = f.weight;
                e["poly"] = int_array(f.poly);
                ordered_json roots = ordered_json::array();
                for (const auto& r : f.roots)
                    roots.push_back({{"re", r.re},
                                     {"im", r.im},
                                     {"modulus", r.modulus},
                                     {"distance_bound", r.distance_bound}});
                e["roots"] = roots;
                jf.push_back(e);
            }
            jw["factors"] = jf;
            out.report["weight_split"] = jw;
            checks.add(
                {{"name", "weight_split"}, {"mode", "float+exact_regroup"}, {"holds", true}});

            auto fe = weilverify::functional_equation_check(z, static_cast<u32>(n_dim), &ws);
            ordered_json jfe = {{"name", "functional_equation"},
                                {"mode", "exact"},
                                {"holds", fe.holds},
                                {"chi", fe.chi},
                                {"epsilon", fe.epsilon}};
            if (fe.hypothesis_violated) {
                jfe["hypothesis_violated"] = "n*chi is odd: not smooth proper of dimension n";
                hypotheses["properness"] = "violated (functional equation)";
            }
            if (fe.N_mult >= 0) jfe["N_mult"] = fe.N_mult;
            if (fe.epsilon_rule_checked)
                jfe["epsilon_rule_consistent"] = fe.epsilon_rule_consistent;
            checks.add(jfe);

            auto du = weilverify::duality_check(ws, cfg.tol_pair);
            checks.add({{"name", "duality"},
                        {"mode", "float"},
                        {"holds", du.holds},
                        {"tolerance", du.tolerance},
                        {"worst_pair_distance", du.worst_distance}});

            bool is_ci = spec.model == geometry::Model::projective &&
                         !spec.multidegree.empty() &&
                         spec.n_amb() ==
                             static_cast<u32>(n_dim) + spec.multidegree.size() + 1;
            if (is_ci) {
                auto ci = weilverify::ci_bound_check(static_cast<u32>(n_dim), z, ws);
                checks.add({{"name", "ci_point_bound"},
                            {"mode", "exact"},
                            {"holds", ci.holds},
                            {"N_1", ci.n1.get_str()},
                            {"projective_points", ci.projective_pts.get_str()},
                            {"b", ci.b},
                            {"lhs_abs", ci.lhs_abs.get_str()},
                            {"bound_sq", ci.bound_sq.get_str()}});
            } else {
                checks.add({{"name", "ci_point_bound"},
                            {"skipped", "spec does not declare a complete intersection"}});
            }
        } catch (const unclassifiable_root_error& e) {
            checks.add({{"name", "weight_split"},
                        {"mode", "float+exact_regroup"},
                        {"holds", false},
                        {"detail", e.what()}});
            hypotheses["smooth_proper_pure_dimension"] = "violated (weight split failed)";
        } catch (const non_integer_regroup_error& e) {
            checks.add({{"name", "weight_split"},
                        {"mode", "float+exact_regroup"},
                        {"holds", false},
                        {"detail", e.what()}});
        }

        // smoothness probe is heuristic in the negative direction
        try {
            auto probe = geometry::smoothness_probe(spec, cfg.probe_max_m, limits_of(cfg));
            if (probe.singular_point_found) {
                ordered_json w = ordered_json::array();
                for (const auto& coord : probe.witness) w.push_back(coord);
                checks.add({{"name", "smoothness_probe"},
                            {"mode", "exact_witness"},
                            {"holds", false},
                            {"witness_m", probe.witness_m},
                            {"witness", w}});
                hypotheses["smoothness"] = "violated: singular point found";
            } else {
                checks.add({{"name", "smoothness_probe"},
                            {"mode", "heuristic"},
                            {"holds", true},
                            {"note", probe.note}});
                hypotheses["smoothness"] = "heuristic: no singular point found for m <= " +
                                           std::to_string(cfg.probe_max_m);
            }
        } catch (const budget_exceeded_error&) {
            checks.add({{"name", "smoothness_probe"}, {"skipped", "over budget"}});
            hypotheses["smoothness"] = "unchecked (probe over budget)";
        }
    } else {
        hypotheses["dimension"] = "not declared: Weil checks skipped";
    }

    out.report["checks"] = checks.checks;
    out.report["hypotheses"] = hypotheses;
    if (cfg.timings)
        out.report["timings"] = {
            {"total_s",
             std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
    out.exit_code = checks.all_hold ? 0 : 1;
    return out;
}

namespace {

ordered_json cyc_json(const cyclo::CycInt& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : v.coeffs()) arr.push_back(c.get_str());
    return arr;
}

ordered_json cycrat_json(const cyclo::CycRat& v) {
    ordered_json arr = ordered_json::array();
    for (const auto& c : v.coeffs()) arr.push_back(to_fraction(c));
    return arr;
}

}  // namespace

Outcome run_expsum(const geometry::VarietySpec& spec, const Config& cfg) {
    if (spec.polys.size() != 1) throw input_error("expsum: exactly one polynomial expected");
    geometry::VarietySpec aff = spec;
    aff.model = geometry::Model::affine;
    u32 nv = aff.n_amb();
    long d = aff.polys[0].total_degree();
    if (d < 1) throw input_error("expsum: polynomial must be nonconstant");
    u32 p = aff.p;

    Outcome out;
    out.report = tool_header("expsum");
    out.report["config"] = config_echo(cfg);
    out.report["spec"] = spec_echo(aff);
    CheckList checks;
    ordered_json hypotheses;

    long D = 1;
    for (u32 i = 0; i < nv; ++i) D *= (d - 1);
    out.report["d"] = d;
    out.report["n_vars"] = nv;
    out.report["expected_L_degree"] = D;

    bool d_coprime = std::gcd(static_cast<long>(p), d) == 1;
    hypotheses["d_coprime_to_p"] = d_coprime ? "holds" : "VIOLATED: p divides d";
    checks.add({{"name", "degree_coprime_to_p"}, {"mode", "exact"}, {"holds", d_coprime}});

    // largest honest extension under the budget
    geometry::RunLimits lim = limits_of(cfg);
    u32 honest_max = 0;
    for (u32 m = 1; m <= 64; ++m) {
        Int tuples = int_pow(int_pow(static_cast<unsigned long>(p), aff.a * m), nv);
        if (tuples > Int(static_cast<unsigned long>(cfg.budget))) break;
        honest_max = m;
    }
    if (honest_max == 0)
        throw budget_exceeded_error("q^n", std::to_string(cfg.budget),
                                    "expsum: even m = 1 exceeds the budget");

    u32 want_m = cfg.max_m ? cfg.max_m
                           : static_cast<u32>(D) + static_cast<u32>(cfg.holdout) + 1;
    u32 direct_m = std::min(want_m, honest_max);

    std::vector<cyclo::CycInt> sums;
    for (u32 m = 1; m <= direct_m; ++m) sums.push_back(expsum::exp_sum(aff, m, lim));
    {
        ordered_json js = ordered_json::array();
        for (const auto& s : sums) js.push_back(cyc_json(s));
        out.report["sums"] = js;
    }

    // the bound at every computed extension
    Int q = int_pow(static_cast<unsigned long>(p), aff.a);
    bool bound_all = true;
    ordered_json jb = ordered_json::array();
    for (u32 m = 1; m <= direct_m; ++m) {
        Int qm = int_pow(q, m);
        auto rep = expsum::abs_bound_check(sums[m - 1], static_cast<u32>(d), nv, qm, 1e-9);
        bound_all = bound_all && rep.holds;
        ordered_json e = {{"m", m},
                          {"holds", rep.holds},
                          {"mode", rep.exact ? "exact" : "float"},
                          {"bound", rep.bound}};
        if (rep.exact) {
            e["norm"] = rep.norm.get_str();
            e["bound_norm"] = rep.bound_norm.get_str();
        } else {
            e["abs"] = rep.abs_value;
            e["abs_error"] = rep.abs_error;
        }
        jb.push_back(e);
    }
    out.report["bound_checks"] = jb;
    checks.add({{"name", "exponential_sum_bound"}, {"mode", "mixed"}, {"holds", bound_all}});

    // separated variables: every term touches at most one variable
    bool separated = true;
    for (const auto& t : aff.polys[0].terms) {
        int seen = -1;
        for (u32 v = 0; v < nv; ++v)
            if (t.exps[v]) {
                if (seen >= 0) separated = false;
                seen = static_cast<int>(v);
            }
    }

    try {
        expsum::LFunction L;
        std::string route;
        if (want_m <= honest_max) {
            L = expsum::sheaf_lfunction(sums, p, D, cfg.holdout, nv);
            route = "direct";
        } else if (separated && nv >= 2) {
            // Kunneth route: reconstruct each one-variable factor honestly and
            // take the composed product, then validate against every honest sum
            route = "kunneth";
            std::vector<expsum::LFunction> parts;
            for (u32 v = 0; v < nv; ++v) {
                geometry::VarietySpec one;
                one.p = aff.p;
                one.a = aff.a;
                one.model = geometry::Model::affine;
                one.vars = {aff.vars[v]};
                geometry::MPoly f1;
                for (const auto& t : aff.polys[0].terms)
                    if (t.exps[v]) f1.terms.push_back({t.coeff, {t.exps[v]}});
                one.polys = {f1};
                std::vector<cyclo::CycInt> s1;
                u32 m1 = static_cast<u32>(d - 1) + static_cast<u32>(cfg.holdout) + 1;
                for (u32 m = 1; m <= m1; ++m) s1.push_back(expsum::exp_sum(one, m, lim));
                parts.push_back(expsum::sheaf_lfunction(s1, p, d - 1, cfg.holdout, 1));
            }
            // composed product across the parts: power sums multiply
            std::vector<cyclo::CycRat> s_parts(static_cast<std::size_t>(D), cyclo::CycRat(1));
            for (const auto& part : parts) {
                auto sp = poly::power_sums(part.coeffs, static_cast<std::size_t>(D));
                for (long m = 0; m < D; ++m) s_parts[m] = s_parts[m] * sp[m];
            }
            L.zeta_p = p;
            L.numerator_side = (nv % 2 == 1);
            L.coeffs = poly::poly_from_power_sums(s_parts, static_cast<std::size_t>(D));

            // validation against every honest full sum
            bool kn_ok = true;
            auto sL = poly::power_sums(L.coeffs, direct_m);
            for (u32 m = 1; m <= direct_m; ++m) {
                cyclo::CycRat predicted =
                    L.numerator_side ? cyclo::CycRat(0) - sL[m - 1] : sL[m - 1];
                if (!(predicted == cyclo::CycRat(sums[m - 1]))) kn_ok = false;
            }
            checks.add({{"name", "kunneth_sum_validation"},
                        {"mode", "exact"},
                        {"holds", kn_ok},
                        {"validated_m", direct_m}});
        } else {
            throw insufficient_terms_error(
                "expsum: required extensions exceed the budget and the polynomial is "
                "not separated; raise --budget");
        }

        out.report["l_function"] = {{"route", route},
                                    {"side", L.numerator_side ? "numerator" : "denominator"},
                                    {"degree", L.degree()}};
        {
            ordered_json jc = ordered_json::array();
            for (const auto& c : L.coeffs) jc.push_back(cycrat_json(c));
            out.report["l_function"]["coeffs"] = jc;
        }
        checks.add({{"name", "l_degree"},
                    {"mode", "exact"},
                    {"holds", L.degree() == D},
                    {"found", L.degree()},
                    {"expected", D}});
        checks.add({{"name", "l_side_parity"},
                    {"mode", "exact"},
                    {"holds", L.numerator_side == (nv % 2 == 1)}});

        double worst = 0;
        bool pure = expsum::purity_check(L, int_pow(q, 1), nv, cfg.tol_purity, &worst);
        checks.add({{"name", "purity"},
                    {"mode", "float"},
                    {"holds", pure},
                    {"tolerance", cfg.tol_purity},
                    {"worst_rel", worst}});

        // Kunneth product identity on the honest sums, when separated
        if (separated && nv >= 2) {
            bool prod_ok = true;
            for (u32 m = 1; m <= direct_m; ++m) {
                cyclo::CycInt prod = cyclo::CycInt::from_int(p, 1);
                for (u32 v = 0; v < nv; ++v) {
                    geometry::VarietySpec one;
                    one.p = aff.p;
                    one.a = aff.a;
                    one.model = geometry::Model::affine;
                    one.vars = {aff.vars[v]};
                    geometry::MPoly f1;
                    for (const auto& t : aff.polys[0].terms)
                        if (t.exps[v]) f1.terms.push_back({t.coeff, {t.exps[v]}});
                    one.polys = {f1};
                    prod = prod * expsum::exp_sum(one, m, lim);
                }
                if (!(prod == sums[m - 1])) prod_ok = false;
            }
            checks.add({{"name", "kunneth_sum_factorization"},
                        {"mode", "exact"},
                        {"holds", prod_ok}});
        }
    } catch (const degree_mismatch_error& e) {
        checks.add({{"name", "l_degree"},
                    {"mode", "exact"},
                    {"holds", false},
                    {"detail", e.what()}});
        hypotheses["smooth_top_form"] = "violated (L degree mismatch)";
    } catch (const not_pure_polynomial_error& e) {
        checks.add(
            {{"name", "l_degree"}, {"mode", "exact"}, {"holds", false}, {"detail", e.what()}});
        hypotheses["smooth_top_form"] = "violated (mixed numerator/denominator)";
    }

    out.report["checks"] = checks.checks;
    out.report["hypotheses"] = hypotheses;
    out.exit_code = checks.all_hold ? 0 : 1;
    return out;
}

Outcome run_positivity(const std::string& json_text, const Config& cfg) {
    nlohmann::json job = nlohmann::json::parse(json_text);
    Outcome out;
    out.report = tool_header("positivity");
    out.report["config"] = config_echo(cfg);
    CheckList checks;

    std::size_t T = job.value("T", 20);
    if (job.contains("factors")) {
        u32 k = job.value("k", 1);
        ordered_json results = ordered_json::array();
        std::size_t idx = 0;
        bool pos_ok = true;
        for (const auto& jf : job.at("factors")) {
            positivity::LocalFactor f;
            for (const auto& c : jf.at("poly"))
                f.poly.push_back(rat_from_fraction(c.get<std::string>()));
            f.q_x = int_from_decimal(jf.value("q_x", std::string("2")));
            f.deg_x = jf.value("deg_x", 1u);
            bool ok = true;
            std::string detail;
            try {
                positivity::tensor_logderiv_series(f, k, T);
                positivity::tensor_local_factor_series(f, k, T);
            } catch (const negative_coefficient_error& e) {
                ok = false;
                detail = e.what();
            }
            ordered_json r = {{"factor", idx++}, {"nonnegative", ok}};
            if (!ok) r["detail"] = detail;
            results.push_back(r);
            pos_ok = pos_ok && ok;
        }
        out.report["factors"] = results;
        checks.add({{"name", "tensor_positivity"},
                    {"mode", "exact"},
                    {"holds", pos_ok},
                    {"k", k},
                    {"T", T}});
    }

    if (job.contains("dominance_from_counts")) {
        const auto& jd = job.at("dominance_from_counts");
        std::vector<Int> counts;
        for (const auto& c : jd.at("counts"))
            counts.push_back(int_from_decimal(c.get<std::string>()));
        std::vector<std::pair<std::vector<Rat>, Int>> factors;
        bool orbit_ok = true;
        for (std::size_t e = 1; e <= T && e <= counts.size(); ++e) {
            Int acc = 0;
            for (auto dd : divisors_of(e)) acc += Int(mobius(e / dd)) * counts[dd - 1];
            if (acc % Int(static_cast<unsigned long>(e)) != 0 || acc < 0) {
                orbit_ok = false;
                break;
            }
            Int c_e = acc / static_cast<unsigned long>(e);
            if (c_e < 0) orbit_ok = false;
            if (c_e == 0) continue;
            std::vector<Rat> factor(T + 1, Rat(0));
            for (std::size_t j = 0; j * e <= T; ++j) factor[j * e] = 1;
            factors.push_back({factor, c_e});
        }
        bool dom = orbit_ok && positivity::dominance_check_weighted(factors, T);
        checks.add({{"name", "closed_point_dominance"},
                    {"mode", "exact"},
                    {"holds", dom},
                    {"T", T}});
    }

    out.report["checks"] = checks.checks;
    out.exit_code = checks.all_hold ? 0 : 1;
    return out;
}

Outcome run_tau(std::size_t max_n, unsigned long primes_up_to, const Config& cfg) {
    Outcome out;
    out.report = tool_header("tau");
    out.report["config"] = config_echo(cfg);
    out.report["max_n"] = max_n;
    out.report["check_primes_up_to"] = primes_up_to;
    modulartau::QExpansion d = modulartau::delta_expansion(max_n);
    ordered_json rows = ordered_json::array();
    bool all = true;
    for (unsigned long p = 2; p <= primes_up_to && p <= max_n; ++p) {
        if (!is_prime_u64(p)) continue;
        auto rep = modulartau::ramanujan_check(p, d);
        all = all && rep.bound_holds && rep.worst_rel < 1e-9;
        rows.push_back({{"p", p},
                        {"a_p", rep.a_p.get_str()},
                        {"bound_holds", rep.bound_holds},
                        {"root_modulus", rep.root_modulus[0]},
                        {"expected_modulus", rep.expected_modulus},
                        {"worst_rel", rep.worst_rel}});
    }
    out.report["table"] = rows;
    out.report["checks"] = ordered_json::array(
        {{{"name", "ramanujan_bound"}, {"mode", "exact"}, {"holds", all}}});
    out.exit_code = all ? 0 : 1;
    return out;
}

}  // namespace weillab::pipeline
