#include "weillab/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "weillab/complexmp.hpp"
#include "weillab/errors.hpp"
#include "weillab/poly.hpp"
#include "weillab/roots.hpp"

namespace weillab::expsum {

using cyclo::CycInt;
using cyclo::CycRat;
using ffield::FieldCtx;
using ffield::kMaxDegree;
using geometry::MPoly;
using geometry::Term;

cyclo::CycInt additive_character(const ffield::FFElem& x) {
    u32 p = x.ctx->p();
    return CycInt::zeta_power(p, ffield::trace_to_prime(x));
}

namespace {

inline bool next_element(const FieldCtx& F, u32* digits) {
    u32 p = F.p();
    for (u32 i = F.k(); i-- > 0;) {
        if (++digits[i] < p) return true;
        digits[i] = 0;
    }
    return false;
}

// Tr(sum of the given single-variable terms at w) for every w, tabulated.
std::vector<std::uint8_t> trace_table(const FieldCtx& F, const std::vector<Term>& terms,
                                      u32 var) {
    u64 q = F.order_u64();
    std::vector<std::uint8_t> tab(q, 0);
    u32 max_e = 1;
    for (const auto& t : terms) max_e = std::max(max_e, t.exps[var]);
    std::vector<u32> w(F.k(), 0), pows((max_e + 1) * F.k(), 0), acc(F.k()), tm(F.k());
    for (u64 i = 0; i < q; ++i) {
        F.set_one(pows.data());
        std::copy(w.begin(), w.end(), pows.begin() + F.k());
        for (u32 e = 2; e <= max_e; ++e)
            F.mul(pows.data() + (e - 1) * F.k(), w.data(), pows.data() + e * F.k());
        F.set_zero(acc.data());
        for (const auto& t : terms) {
            F.set_residue(tm.data(), t.coeff);
            F.mul(tm.data(), pows.data() + t.exps[var] * F.k(), tm.data());
            F.add(acc.data(), tm.data(), acc.data());
        }
        tab[i] = static_cast<std::uint8_t>(F.trace(acc.data()));
        next_element(F, w.data());
    }
    return tab;
}

// Counts of each trace residue over a range of the outer coordinate, all
// variables tabulated (no mixed terms).
void tabulated_counts(const FieldCtx& F, const std::vector<std::vector<std::uint8_t>>& tabs,
                      u32 const_tr, u64 lo, u64 hi, std::vector<u64>& cnt) {
    u32 p = F.p();
    u64 q = F.order_u64();
    std::size_t n = tabs.size();
    if (n == 1) {
        for (u64 i = lo; i < hi; ++i) cnt[(tabs[0][i] + const_tr) % p]++;
        return;
    }
    // odometer over the trailing n-1 coordinates for each outer value
    std::vector<u64> idx(n, 0);
    for (u64 outer = lo; outer < hi; ++outer) {
        u32 base = (tabs[0][outer] + const_tr) % p;
        std::fill(idx.begin(), idx.end(), 0);
        if (n == 2) {
            const auto& t1 = tabs[1];
            for (u64 j = 0; j < q; ++j) cnt[(base + t1[j]) % p]++;
        } else {
            while (true) {
                u32 t = base;
                for (std::size_t v = 1; v < n; ++v) t += tabs[v][idx[v]];
                cnt[t % p]++;
                std::size_t v = n;
                bool done = false;
                while (v-- > 1) {
                    if (++idx[v] < q) break;
                    idx[v] = 0;
                    if (v == 1) done = true;
                }
                if (done) break;
            }
        }
    }
}

// Fallback: evaluate the full polynomial at every tuple.
void generic_counts(const FieldCtx& F, const MPoly& f, u32 nv, u64 lo, u64 hi,
                    std::vector<u64>& cnt) {
    u32 k = F.k();
    std::vector<u32> max_e(nv, 1);
    for (const auto& t : f.terms)
        for (u32 v = 0; v < nv; ++v) max_e[v] = std::max(max_e[v], t.exps[v]);
    std::vector<std::vector<u32>> pows(nv);
    std::vector<u32> digits(static_cast<std::size_t>(nv) * k, 0);
    u64 q = F.order_u64();
    {
        u64 index = lo;
        for (u32 v = nv; v-- > 0;) {
            F.element_at(index % q, digits.data() + static_cast<std::size_t>(v) * k);
            index /= q;
        }
    }
    for (u32 v = 0; v < nv; ++v) pows[v].assign((max_e[v] + 1) * k, 0);
    auto rebuild = [&](u32 v) {
        u32* base = pows[v].data();
        F.set_one(base);
        std::copy(digits.begin() + static_cast<std::size_t>(v) * k,
                  digits.begin() + static_cast<std::size_t>(v + 1) * k, base + k);
        for (u32 e = 2; e <= max_e[v]; ++e) F.mul(base + (e - 1) * k, base + k, base + e * k);
    };
    for (u32 v = 0; v < nv; ++v) rebuild(v);

    u32 acc[kMaxDegree], tm[kMaxDegree];
    for (u64 i = lo; i < hi; ++i) {
        F.set_zero(acc);
        for (const auto& t : f.terms) {
            F.set_residue(tm, t.coeff);
            for (u32 v = 0; v < nv; ++v)
                if (t.exps[v]) F.mul(tm, pows[v].data() + t.exps[v] * k, tm);
            F.add(acc, tm, acc);
        }
        cnt[F.trace(acc)]++;
        // advance the global odometer
        u32 p = F.p();
        for (std::size_t d = digits.size(); d-- > 0;) {
            if (++digits[d] < p) {
                for (u32 v = static_cast<u32>(d / k); v < nv; ++v) rebuild(v);
                break;
            }
            digits[d] = 0;
        }
    }
}

}  // namespace

cyclo::CycInt exp_sum(const geometry::VarietySpec& spec, u32 m,
                      const geometry::RunLimits& limits, u32 psi_multiplier) {
    if (spec.polys.size() != 1)
        throw input_error("exp_sum: spec must contain exactly one polynomial");
    if (spec.model != geometry::Model::affine)
        throw input_error("exp_sum: exponential sums live on affine space");
    const MPoly& f = spec.polys[0];
    u32 nv = spec.n_amb();
    const FieldCtx& F = ffield::make_field(spec.p, spec.a * m);
    u32 p = spec.p;

    Int tuples = int_pow(F.q(), nv);
    if (tuples > Int(static_cast<unsigned long>(limits.budget)))
        throw budget_exceeded_error(tuples.get_str(), std::to_string(limits.budget),
                                    "exp_sum: enumeration over budget");
    if (!F.fits_u64()) throw input_error("exp_sum: field too large");
    u64 q = F.order_u64();

    // split terms: constants, single-variable, mixed
    u32 const_residue = 0;
    std::vector<std::vector<Term>> single(nv);
    bool mixed = false;
    for (const auto& t : f.terms) {
        int var = -1;
        bool is_mixed = false;
        for (u32 v = 0; v < nv; ++v) {
            if (t.exps[v] == 0) continue;
            if (var >= 0) is_mixed = true;
            var = static_cast<int>(v);
        }
        if (is_mixed)
            mixed = true;
        else if (var < 0)
            const_residue = (const_residue + t.coeff) % p;
        else
            single[var].push_back(t);
    }

    std::vector<u64> cnt(p, 0);
    unsigned threads = limits.threads;
    if (mixed) {
        u64 total = 1;
        for (u32 v = 0; v < nv; ++v) total *= q;
        if (threads <= 1 || total < 4096) {
            generic_counts(F, f, nv, 0, total, cnt);
        } else {
            std::vector<std::vector<u64>> parts(threads, std::vector<u64>(p, 0));
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                u64 lo = total / threads * t + std::min<u64>(t, total % threads);
                u64 hi = lo + total / threads + (t < total % threads ? 1 : 0);
                pool.emplace_back([&, t, lo, hi] { generic_counts(F, f, nv, lo, hi, parts[t]); });
            }
            for (auto& th : pool) th.join();
            for (const auto& part : parts)
                for (u32 r = 0; r < p; ++r) cnt[r] += part[r];
        }
        // constants were evaluated inside the full polynomial; but trace of the
        // constant is already included there, nothing extra to add
    } else {
        // trace of the constant term: Tr(c) = c * (k mod p)
        u32 const_tr =
            static_cast<u32>(static_cast<u64>(const_residue) * (F.k() % p) % p);
        std::vector<std::vector<std::uint8_t>> tabs;
        for (u32 v = 0; v < nv; ++v) tabs.push_back(trace_table(F, single[v], v));
        if (threads <= 1 || q < 4096) {
            tabulated_counts(F, tabs, const_tr, 0, q, cnt);
        } else {
            std::vector<std::vector<u64>> parts(threads, std::vector<u64>(p, 0));
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                u64 lo = q / threads * t + std::min<u64>(t, q % threads);
                u64 hi = lo + q / threads + (t < q % threads ? 1 : 0);
                pool.emplace_back(
                    [&, t, lo, hi] { tabulated_counts(F, tabs, const_tr, lo, hi, parts[t]); });
            }
            for (auto& th : pool) th.join();
            for (const auto& part : parts)
                for (u32 r = 0; r < p; ++r) cnt[r] += part[r];
        }
    }

    CycInt S(p);
    for (u32 r = 0; r < p; ++r)
        if (cnt[r])
            S.add_zeta_power(static_cast<u64>(r) * psi_multiplier,
                             Int(static_cast<unsigned long>(cnt[r])));
    return S;
}

BoundReport abs_bound_check(const cyclo::CycInt& S, u32 d, u32 n, const Int& q, double tol) {
    BoundReport rep;
    double dn = std::pow(static_cast<double>(d) - 1.0, n);
    rep.bound = dn * std::pow(q.get_d(), n / 2.0);
    rep.bound_norm = int_pow(Int(static_cast<long>(d) - 1), 2 * n) * int_pow(q, n);

    CycInt norm = S * S.conj();
    Int norm_int;
    if (norm.rational_integer(norm_int)) {
        rep.exact = true;
        rep.norm = norm_int;
        rep.holds = norm_int <= rep.bound_norm;
        rep.abs_value = std::sqrt(norm_int.get_d());
        rep.abs_error = 0.0;
        return rep;
    }

    // embed and measure |S| with a crude but safe error bound
    const unsigned prec = 256;
    u32 p = S.p();
    cmpx::CF z = cmpx::root_of_unity(p, 1, prec);
    cmpx::CF acc(prec);
    Int coeff_l1 = 0;
    cmpx::CF zk = cmpx::CF::from_double(1, 0, prec);
    for (std::size_t i = 0; i < S.coeffs().size(); ++i) {
        const Int& c = S.coeffs()[i];
        if (c != 0) {
            cmpx::CF term = zk * cmpx::CF(mpf_class(c, prec), mpf_class(0, prec));
            acc = acc + term;
            coeff_l1 += abs(c);
        }
        zk = zk * z;
    }
    rep.abs_value = acc.abs().get_d();
    rep.abs_error = coeff_l1.get_d() * std::exp2(-(static_cast<double>(prec) - 16));
    rep.holds = rep.abs_value + rep.abs_error <= rep.bound * (1.0 + tol);
    return rep;
}

std::vector<cyclo::CycRat> z_series(const std::vector<cyclo::CycInt>& sums,
                                    std::size_t order, u32 p) {
    if (order > sums.size())
        throw insufficient_terms_error("z_series: order exceeds available sums");
    for (const auto& s : sums)
        if (s.p() != p) throw input_error("z_series: sums carry a different cyclotomy");
    std::vector<CycRat> w;
    w.reserve(order);
    for (std::size_t m = 1; m <= order; ++m) w.push_back(CycRat(sums[m - 1]));
    return poly::series_exp_weighted(w, order);
}

namespace {

// trailing coefficients after `deg` must vanish; at least `holdout` of them
// must have been observed
bool is_polynomial_to(const std::vector<CycRat>& series, long deg, std::size_t holdout) {
    if (deg < 0) return false;
    if (series.size() < static_cast<std::size_t>(deg) + 1 + holdout) return false;
    for (std::size_t i = deg + 1; i < series.size(); ++i)
        if (!series[i].is_zero()) return false;
    return true;
}

long last_nonzero(const std::vector<CycRat>& series) {
    long d = -1;
    for (std::size_t i = 0; i < series.size(); ++i)
        if (!series[i].is_zero()) d = static_cast<long>(i);
    return d;
}

}  // namespace

LFunction sheaf_lfunction(const std::vector<cyclo::CycInt>& sums, u32 p,
                          long expected_degree, std::size_t holdout, u32 nvars) {
    if (holdout < 1) throw input_error("sheaf_lfunction: holdout must be >= 1");
    std::size_t order = sums.size();
    std::vector<CycRat> z = z_series(sums, order, p);

    bool expect_numerator = (nvars % 2 == 1);  // H_c^n carries exponent (-1)^{n+1}
    auto attempt = [&](bool numerator_side, LFunction& out) {
        std::vector<CycRat> side = numerator_side ? z : poly::series_inverse(z, order);
        long deg = last_nonzero(side);
        if (!is_polynomial_to(side, deg, holdout)) return false;
        out.zeta_p = p;
        out.numerator_side = numerator_side;
        out.coeffs.assign(side.begin(), side.begin() + deg + 1);
        return true;
    };

    LFunction L;
    if (!attempt(expect_numerator, L) && !attempt(!expect_numerator, L))
        throw not_pure_polynomial_error(
            "sheaf_lfunction: series is neither a polynomial nor a reciprocal "
            "polynomial at this order (hypothesis failure or too few sums)");
    if (L.degree() != expected_degree)
        throw degree_mismatch_error(L.degree(), expected_degree);
    return L;
}

LFunction tensor_power(const LFunction& one_var, u32 n) {
    long d = one_var.degree();
    long target_deg = 1;
    for (u32 i = 0; i < n; ++i) target_deg *= d;
    std::vector<CycRat> s1 = poly::power_sums(one_var.coeffs, target_deg);
    std::vector<CycRat> sn;
    sn.reserve(target_deg);
    for (long m = 0; m < target_deg; ++m) {
        CycRat v = s1[m];
        for (u32 i = 1; i < n; ++i) v = v * s1[m];
        sn.push_back(v);
    }
    LFunction out;
    out.zeta_p = one_var.zeta_p;
    out.numerator_side = (n % 2 == 1);
    out.coeffs = poly::poly_from_power_sums(sn, target_deg);
    return out;
}

bool purity_check(const LFunction& L, const Int& q, u32 n, double tol, double* worst_rel) {
    if (worst_rel) *worst_rel = 0.0;
    std::vector<CycRat> f = L.coeffs;
    poly::normalize(f);
    if (poly::degree(f) < 1) return true;
    const unsigned prec = 256;
    u32 p = L.zeta_p;
    cmpx::CF z = cmpx::root_of_unity(p, 1, prec);
    // embed coefficients
    std::vector<cmpx::CF> cf;
    cf.reserve(f.size());
    for (const auto& c : f) {
        cmpx::CF acc(prec);
        cmpx::CF zk = cmpx::CF::from_double(1, 0, prec);
        const auto& v = c.coeffs();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] != 0) acc = acc + zk * cmpx::CF(mpf_class(v[i], prec), mpf_class(0, prec));
            if (!c.is_scalar()) zk = zk * z;
        }
        cf.push_back(acc);
    }
    roots::RootSet rs = roots::find_roots(cf, prec);
    double target = std::pow(q.get_d(), n / 2.0);
    bool ok = true;
    for (const auto& t : rs.roots) {
        double mod = 1.0 / t.abs().get_d();
        double rel = std::fabs(mod - target) / target;
        if (worst_rel) *worst_rel = std::max(*worst_rel, rel);
        if (rel > tol) ok = false;
    }
    return ok;
}

}  // namespace weillab::expsum
