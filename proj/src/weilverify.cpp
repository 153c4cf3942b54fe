#include "weillab/weilverify.hpp"

#include <algorithm>
#include <cmath>

#include "weillab/errors.hpp"
#include "weillab/poly.hpp"
#include "weillab/roots.hpp"

namespace weillab::weilverify {

using cmpx::CF;

namespace {

Int round_to_int(const mpf_class& x, bool& ok, double margin) {
    mpf_class shifted = x + 0.5;
    mpf_class fl;
    mpf_floor(fl.get_mpf_t(), shifted.get_mpf_t());
    Int r;
    mpz_set_f(r.get_mpz_t(), fl.get_mpf_t());
    mpf_class err = x - mpf_class(r);
    if (err < 0) err = -err;
    if (err > margin) ok = false;
    return r;
}

// Expand prod (1 - alpha t) over the complex field and round to integers.
std::vector<Int> rounded_factor(const std::vector<CF>& alphas, unsigned prec, bool& ok) {
    std::vector<CF> acc{CF::from_double(1, 0, prec)};
    for (const auto& al : alphas) {
        std::vector<CF> next(acc.size() + 1, CF(prec));
        for (std::size_t i = 0; i < acc.size(); ++i) {
            next[i] = next[i] + acc[i];
            next[i + 1] = next[i + 1] - acc[i] * al;
        }
        acc = std::move(next);
    }
    std::vector<Int> out;
    out.reserve(acc.size());
    for (const auto& c : acc) {
        mpf_class im = c.im;
        if (im < 0) im = -im;
        if (im > 0.25) ok = false;
        out.push_back(round_to_int(c.re, ok, 0.25));
    }
    return out;
}

struct RetrySignal {};

// Classify the reciprocal roots of one polynomial into the weight classes of
// one parity and accumulate them into `factors`.
void classify_poly(const std::vector<Int>& f, u32 parity, u32 n, const Int& q, double tol,
                   unsigned prec, std::vector<WeightFactor>& factors,
                   std::vector<std::vector<CF>>& class_roots, bool& precision_trouble) {
    if (poly::degree(f) < 1) return;
    roots::RootSet rs = roots::find_roots_int(f, prec);
    double qd = q.get_d();
    for (std::size_t j = 0; j < rs.roots.size(); ++j) {
        CF t = rs.roots[j];
        CF alpha = CF::from_double(1, 0, prec) / t;
        double mod = alpha.abs().get_d();
        // certified modulus wobble: |d(1/t)| <= bound / |t|^2
        double tabs = t.abs().get_d();
        double wobble = tabs > 0 ? rs.distance_bound[j] / (tabs * tabs) : 1e300;
        int best_w = -1;
        double best_rel = 1e300;
        for (u32 w = parity; w <= 2 * n; w += 2) {
            double target = std::pow(qd, w / 2.0);
            double rel = std::fabs(mod - target) / target;
            if (rel < best_rel) {
                best_rel = rel;
                best_w = static_cast<int>(w);
            }
        }
        if (best_w < 0 || best_rel > tol) {
            if (best_w >= 0 && wobble > tol * std::pow(qd, best_w / 2.0) * 0.1) {
                precision_trouble = true;
                throw RetrySignal{};
            }
            throw unclassifiable_root_error(
                "weight_split: root modulus " + std::to_string(mod) +
                " lies outside every weight class band (wrong dimension, singular "
                "input, or non-proper variety)");
        }
        ClassifiedRoot cr;
        cr.re = alpha.re.get_d();
        cr.im = alpha.im.get_d();
        cr.modulus = mod;
        cr.distance_bound = wobble;
        factors[best_w].roots.push_back(cr);
        class_roots[best_w].push_back(alpha);
    }
}

}  // namespace

WeightSplit weight_split(const zetarec::ZetaFunction& z, u32 n, double tol) {
    Int q = z.q();
    bool precision_trouble_seen = false;
    for (unsigned prec : {128u, 256u, 512u}) {
        WeightSplit ws;
        ws.n = n;
        ws.p = z.p;
        ws.a = z.a;
        ws.tolerance = tol;
        ws.precision_bits = prec;
        ws.factors.assign(2 * n + 1, WeightFactor{});
        for (u32 w = 0; w <= 2 * n; ++w) {
            ws.factors[w].weight = w;
            ws.factors[w].poly = {1};
        }
        std::vector<std::vector<CF>> class_roots(2 * n + 1);
        try {
            bool trouble = false;
            classify_poly(z.Q, 0, n, q, tol, prec, ws.factors, class_roots, trouble);
            classify_poly(z.P, 1, n, q, tol, prec, ws.factors, class_roots, trouble);

            bool round_ok = true;
            for (u32 w = 0; w <= 2 * n; ++w) {
                if (class_roots[w].empty()) continue;
                ws.factors[w].poly = rounded_factor(class_roots[w], prec, round_ok);
            }
            if (!round_ok) throw RetrySignal{};

            // the grouping must reproduce P and Q exactly
            std::vector<Int> even{1}, odd{1};
            for (u32 w = 0; w <= 2 * n; w += 2) even = poly::mul(even, ws.factors[w].poly);
            for (u32 w = 1; w <= 2 * n; w += 2) odd = poly::mul(odd, ws.factors[w].poly);
            std::vector<Int> qn = z.Q, pn = z.P;
            poly::normalize(qn);
            poly::normalize(pn);
            if (pn.empty()) pn = {1};
            if (qn.empty()) qn = {1};
            if (even != qn || odd != pn) throw RetrySignal{};
            return ws;
        } catch (const RetrySignal&) {
            precision_trouble_seen = true;
            continue;
        }
    }
    (void)precision_trouble_seen;
    throw non_integer_regroup_error(
        "weight_split: classified grouping does not divide P or Q exactly even at "
        "512-bit precision");
}

namespace {

// f(t) -> sum_j f_j q^{n(d-j)} t^{d-j}, the numerator of f(1/(q^n t)) * (q^n t)^d
std::vector<Int> reversed_scaled(const std::vector<Int>& f, const Int& q, u32 n) {
    int d = poly::degree(f);
    std::vector<Int> out(d + 1, 0);
    for (int j = 0; j <= d; ++j)
        out[d - j] = f[j] * int_pow(q, static_cast<unsigned long>(n) * (d - j));
    return out;
}

}  // namespace

FunctionalEqReport functional_equation_check(const zetarec::ZetaFunction& z, u32 n,
                                             const WeightSplit* split) {
    FunctionalEqReport rep;
    rep.n = n;
    std::vector<Int> P = z.P, Q = z.Q;
    poly::normalize(P);
    poly::normalize(Q);
    if (P.empty()) P = {1};
    if (Q.empty()) Q = {1};
    long dP = poly::degree(P), dQ = poly::degree(Q);
    rep.chi = dQ - dP;

    long nchi = static_cast<long>(n) * rep.chi;
    if (nchi % 2 != 0) {
        rep.hypothesis_violated = true;
        rep.holds = false;
        return rep;
    }

    Int q = z.q();
    std::vector<Int> Pt = reversed_scaled(P, q, n);
    std::vector<Int> Qt = reversed_scaled(Q, q, n);
    // identity: P * Qt == eps * q^{n chi / 2} * Pt * Q, with the power moved
    // to whichever side keeps it integral
    long e = nchi / 2;
    std::vector<Int> lhs = poly::mul(P, Qt);
    std::vector<Int> rhs = poly::mul(Pt, Q);
    if (e >= 0)
        rhs = poly::scale(rhs, int_pow(q, static_cast<unsigned long>(e)));
    else
        lhs = poly::scale(lhs, int_pow(q, static_cast<unsigned long>(-e)));
    if (lhs == rhs) {
        rep.holds = true;
        rep.epsilon = 1;
    } else {
        std::vector<Int> neg = poly::scale(rhs, Int(-1));
        if (lhs == neg) {
            rep.holds = true;
            rep.epsilon = -1;
        }
    }

    if (split && n % 2 == 0 && rep.holds) {
        // multiplicity of the eigenvalue q^{n/2} in P_n = order of the root
        // 1/q^{n/2}, counted by exact division by (1 - q^{n/2} t)
        Int root_scale = int_pow(q, n / 2);
        std::vector<Rat> f(split->factors[n].poly.begin(), split->factors[n].poly.end());
        std::vector<Rat> lin{Rat(1), Rat(-root_scale)};
        long mult = 0;
        while (poly::degree(f) >= 1) {
            std::vector<Rat> quo, rem;
            poly::divrem(f, lin, quo, rem);
            if (!poly::is_zero(rem)) break;
            ++mult;
            f = quo;
        }
        rep.N_mult = mult;
        rep.epsilon_rule_checked = true;
        rep.epsilon_rule_consistent = (rep.epsilon == (mult % 2 == 0 ? 1 : -1));
    } else if (n % 2 == 1 && rep.holds) {
        rep.epsilon_rule_checked = true;
        rep.epsilon_rule_consistent = (rep.epsilon == 1);
    }
    return rep;
}

DualityReport duality_check(const WeightSplit& split, double tol) {
    DualityReport rep;
    rep.tolerance = tol;
    rep.worst_distance = 0.0;
    double qn = std::pow(split.q().get_d(), split.n);
    for (u32 i = 0; i <= split.n; ++i) {
        const auto& A = split.factors[i].roots;
        const auto& B = split.factors[2 * split.n - i].roots;
        if (A.size() != B.size()) {
            rep.holds = false;
            rep.worst_distance = 1e300;
            return rep;
        }
        std::vector<bool> used(B.size(), false);
        for (const auto& a : A) {
            // image q^n / alpha
            double den = a.re * a.re + a.im * a.im;
            double ure = qn * a.re / den, uim = -qn * a.im / den;
            double best = 1e300;
            std::size_t best_j = B.size();
            for (std::size_t j = 0; j < B.size(); ++j) {
                if (used[j]) continue;
                double dre = ure - B[j].re, dim = uim - B[j].im;
                double dist = std::sqrt(dre * dre + dim * dim);
                double scale = std::max(std::hypot(ure, uim), std::hypot(B[j].re, B[j].im));
                double rel = scale > 0 ? dist / scale : dist;
                if (rel < best) {
                    best = rel;
                    best_j = j;
                }
            }
            if (best_j == B.size()) {
                rep.holds = false;
                rep.worst_distance = 1e300;
                return rep;
            }
            used[best_j] = true;
            rep.worst_distance = std::max(rep.worst_distance, best);
        }
    }
    rep.holds = rep.worst_distance <= tol;
    return rep;
}

CiBoundReport ci_bound_check(u32 n, const zetarec::ZetaFunction& z, const WeightSplit& split) {
    CiBoundReport rep;
    rep.n1 = zetarec::expand_counts(z, 1);
    ffield::PrimePower q(z.p, z.a);
    rep.projective_pts = 0;
    for (u32 i = 0; i <= n; ++i) rep.projective_pts += int_pow(q.q, i);
    rep.b = split.factors.at(n).betti() - (n % 2 == 0 ? 1 : 0);
    if (rep.b < 0) rep.b = 0;
    rep.lhs_abs = abs(rep.n1 - rep.projective_pts);
    rep.bound_sq = Int(rep.b) * Int(rep.b) * int_pow(q.q, n);
    rep.holds = rep.lhs_abs * rep.lhs_abs <= rep.bound_sq;
    return rep;
}

bool weight_predicate(const std::vector<Rat>& local_factor, const Int& q_x, double beta,
                      double tol, double* worst_rel) {
    if (local_factor.empty() || local_factor[0] != 1)
        throw input_error("weight_predicate: constant term must be 1");
    std::vector<Rat> f = local_factor;
    poly::normalize(f);
    if (worst_rel) *worst_rel = 0.0;
    if (poly::degree(f) < 1) return true;  // no roots
    roots::RootSet rs = roots::find_roots_rat(f, 256);
    double target = std::pow(q_x.get_d(), beta / 2.0);
    bool ok = true;
    for (const auto& t : rs.roots) {
        double mod = 1.0 / t.abs().get_d();
        double rel = std::fabs(mod - target) / target;
        if (worst_rel) *worst_rel = std::max(*worst_rel, rel);
        if (rel > tol) ok = false;
    }
    return ok;
}

}  // namespace weillab::weilverify
