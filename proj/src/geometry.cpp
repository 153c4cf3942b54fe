#include "weillab/geometry.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <thread>

#include "json.hpp"

namespace weillab::geometry {

using ffield::FieldCtx;
using ffield::kMaxDegree;
using ffield::make_field;

long MPoly::total_degree() const {
    long d = -1;
    for (const auto& t : terms) {
        long td = 0;
        for (u32 e : t.exps) td += e;
        d = std::max(d, td);
    }
    return d;
}

bool MPoly::homogeneous() const {
    long d = -1;
    for (const auto& t : terms) {
        long td = 0;
        for (u32 e : t.exps) td += e;
        if (d < 0) d = td;
        if (td != d) return false;
    }
    return true;
}

namespace {

// ---- chart systems: the polynomials restricted to a set of free variables ----

struct ChartSystem {
    u32 nv = 0;
    std::vector<MPoly> polys;  // exps sized to nv
};

// Stratum of the first-nonzero-coordinate normalization: coordinates before
// `s` are 0, coordinate s is 1, the trailing n-1-s coordinates run free.
ChartSystem stratum_system(const std::vector<MPoly>& polys, u32 n, u32 s) {
    ChartSystem cs;
    cs.nv = n - 1 - s;
    for (const auto& f : polys) {
        MPoly g;
        for (const auto& t : f.terms) {
            bool dead = false;
            for (u32 j = 0; j < s && !dead; ++j) dead = t.exps[j] > 0;
            if (dead) continue;
            Term nt;
            nt.coeff = t.coeff;
            nt.exps.assign(t.exps.begin() + s + 1, t.exps.end());
            g.terms.push_back(std::move(nt));
        }
        cs.polys.push_back(std::move(g));
    }
    return cs;
}

ChartSystem affine_system(const std::vector<MPoly>& polys, u32 n) {
    ChartSystem cs;
    cs.nv = n;
    cs.polys = polys;
    return cs;
}

// Tuple enumerator over K^nv. The nv*k base-p digits of the tuple form one
// odometer (variable 0 most significant, and within a variable c_0 most
// significant, matching the field's enumeration order), so stepping is
// amortized O(1) digit work with no division. Power tables above e = 1 are
// refreshed only for variables whose digits moved. Restartable at any index
// so ranges can be partitioned across tasks.
class TupleEnum {
public:
    TupleEnum(const FieldCtx& F, const ChartSystem& sys) : F_(F), k_(F.k()), sys_(sys) {
        max_e_.assign(sys_.nv, 1);
        for (const auto& f : sys_.polys)
            for (const auto& t : f.terms)
                for (u32 v = 0; v < sys_.nv; ++v) max_e_[v] = std::max(max_e_[v], t.exps[v]);
        digits_.assign(static_cast<std::size_t>(sys_.nv) * k_, 0);
        pows_.resize(sys_.nv);
        ones_.assign(k_, 0);
        F_.set_one(ones_.data());
        for (u32 v = 0; v < sys_.nv; ++v)
            pows_[v].assign(static_cast<std::size_t>(max_e_[v] + 1) * k_, 0);
    }

    void seek(u64 index) {
        u64 q = F_.order_u64();
        for (u32 v = sys_.nv; v-- > 0;) {
            F_.element_at(index % q, var_slice(v));
            index /= q;
        }
        for (u32 v = 0; v < sys_.nv; ++v) rebuild(v);
    }

    bool advance() {
        u32 p = F_.p();
        for (std::size_t i = digits_.size(); i-- > 0;) {
            if (++digits_[i] < p) {
                u32 first_var = static_cast<u32>(i / k_);
                for (u32 v = first_var; v < sys_.nv; ++v) rebuild(v);
                return true;
            }
            digits_[i] = 0;
        }
        return false;
    }

    bool all_vanish() const {
        u32 acc[kMaxDegree], term[kMaxDegree];
        for (const auto& f : sys_.polys) {
            if (f.terms.empty()) continue;  // zero polynomial vanishes everywhere
            F_.set_zero(acc);
            for (const auto& t : f.terms) {
                F_.set_residue(term, t.coeff);
                for (u32 v = 0; v < sys_.nv; ++v)
                    if (t.exps[v]) F_.mul(term, pw(v, t.exps[v]), term);
                F_.add(acc, term, acc);
            }
            if (!F_.is_zero(acc)) return false;
        }
        return true;
    }

    u64 element_index(u32 v) const { return F_.index_of(var_slice_const(v)); }

private:
    u32* var_slice(u32 v) { return digits_.data() + static_cast<std::size_t>(v) * k_; }
    const u32* var_slice_const(u32 v) const {
        return digits_.data() + static_cast<std::size_t>(v) * k_;
    }

    const u32* pw(u32 v, u32 e) const {
        if (e == 1) return var_slice_const(v);
        if (e == 0) return ones_.data();
        return pows_[v].data() + static_cast<std::size_t>(e) * k_;
    }

    void rebuild(u32 v) {
        if (max_e_[v] < 2) return;
        u32* base = pows_[v].data();
        F_.mul(var_slice(v), var_slice(v), base + 2 * static_cast<std::size_t>(k_));
        for (u32 e = 3; e <= max_e_[v]; ++e)
            F_.mul(base + (e - 1) * static_cast<std::size_t>(k_), var_slice(v),
                   base + e * static_cast<std::size_t>(k_));
    }

    const FieldCtx& F_;
    u32 k_;
    ChartSystem sys_;
    std::vector<u32> max_e_;
    std::vector<u32> digits_;  // nv*k residues, one global odometer
    std::vector<u32> ones_;
    std::vector<std::vector<u32>> pows_;
};

u64 chart_tuple_count(const FieldCtx& F, u32 nv) {
    u64 n = 1;
    for (u32 i = 0; i < nv; ++i) n *= F.order_u64();
    return n;
}

u64 count_chart_range(const FieldCtx& F, const ChartSystem& sys, u64 lo, u64 hi) {
    if (lo >= hi) return 0;
    TupleEnum it(F, sys);
    it.seek(lo);
    u64 hits = 0;
    for (u64 i = lo; i < hi; ++i) {
        if (it.all_vanish()) ++hits;
        it.advance();
    }
    return hits;
}

u64 count_chart(const FieldCtx& F, const ChartSystem& sys, unsigned threads) {
    u64 total = chart_tuple_count(F, sys.nv);
    if (threads <= 1 || total < 4096) return count_chart_range(F, sys, 0, total);
    std::vector<u64> partial(threads, 0);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        u64 lo = total / threads * t + std::min<u64>(t, total % threads);
        u64 hi = lo + total / threads + (t < total % threads ? 1 : 0);
        pool.emplace_back([&partial, &F, &sys, t, lo, hi] {
            partial[t] = count_chart_range(F, sys, lo, hi);
        });
    }
    for (auto& th : pool) th.join();
    u64 sum = 0;
    for (u64 v : partial) sum += v;
    return sum;
}

// First solution in enumeration order, as free-variable element indices.
std::optional<std::vector<u64>> chart_witness(const FieldCtx& F, const ChartSystem& sys) {
    u64 total = chart_tuple_count(F, sys.nv);
    TupleEnum it(F, sys);
    it.seek(0);
    for (u64 i = 0; i < total; ++i) {
        if (it.all_vanish()) {
            std::vector<u64> w(sys.nv);
            for (u32 v = 0; v < sys.nv; ++v) w[v] = it.element_index(v);
            return w;
        }
        it.advance();
    }
    return std::nullopt;
}

Int generic_tuple_charge(const VarietySpec& spec, const Int& q_m) {
    if (spec.model == Model::affine) return int_pow(q_m, spec.n_amb());
    Int total = 0;
    for (u32 i = 0; i < spec.n_amb(); ++i) total += int_pow(q_m, i);
    return total;
}

void check_budget(const Int& need, u64 budget, const char* what) {
    if (need > Int(static_cast<unsigned long>(budget)))
        throw budget_exceeded_error(need.get_str(), std::to_string(budget), what);
}

// ---- pivot fast path ----
//
// For one-equation specs in two affine / three projective variables where a
// variable v occurs in exactly one monomial c*v^d (times a power of the chart
// variable when projective), the main chart count is
//     sum_u #{v : v^d = -h(u)/c} = sum_u hist_d[-h(u)/c],
// one pass over u plus one pass over v to tally the d-th power map, instead
// of a pass over all (u, v) pairs. Budget is charged by tuples enumerated,
// which is what makes deep extensions reachable for curves.

struct PivotPlan {
    bool projective = false;
    u32 d = 0;                  // pivot exponent in the main chart
    u32 c = 0;                  // pivot coefficient, nonzero residue
    std::vector<Term> h_terms;  // univariate terms in the outer variable
    // leftovers on the omega = 0 line (projective only):
    std::vector<u32> inf_poly;          // dense univariate residues in the pivot var
    bool inf_point_on_variety = false;  // the (rho=0, pivot=1, omega=0) point
};

std::optional<PivotPlan> find_pivot_plan(const VarietySpec& spec) {
    if (spec.polys.size() != 1) return std::nullopt;
    const MPoly& f = spec.polys[0];
    if (f.is_zero()) return std::nullopt;

    if (spec.model == Model::affine && spec.n_amb() == 2) {
        for (u32 pivot = 0; pivot < 2; ++pivot) {
            u32 outer = 1 - pivot;
            const Term* pt = nullptr;
            bool ok = true;
            for (const auto& t : f.terms) {
                if (t.exps[pivot] == 0) continue;
                if (pt || t.exps[outer] != 0) {
                    ok = false;
                    break;
                }
                pt = &t;
            }
            if (!ok || !pt) continue;
            PivotPlan plan;
            plan.d = pt->exps[pivot];
            plan.c = pt->coeff;
            for (const auto& t : f.terms)
                if (t.exps[pivot] == 0) plan.h_terms.push_back({t.coeff, {t.exps[outer]}});
            return plan;
        }
        return std::nullopt;
    }

    if (spec.model == Model::projective && spec.n_amb() == 3) {
        long D = f.total_degree();
        for (u32 pivot = 0; pivot < 3; ++pivot)
            for (u32 omega = 0; omega < 3; ++omega) {
                if (omega == pivot) continue;
                u32 rho = 3 - pivot - omega;
                const Term* pt = nullptr;
                bool ok = true;
                for (const auto& t : f.terms) {
                    if (t.exps[pivot] == 0) continue;
                    if (pt || t.exps[rho] != 0) {
                        ok = false;
                        break;
                    }
                    pt = &t;
                }
                if (!ok || !pt) continue;
                PivotPlan plan;
                plan.projective = true;
                plan.d = pt->exps[pivot];
                plan.c = pt->coeff;
                for (const auto& t : f.terms)
                    if (t.exps[pivot] == 0) plan.h_terms.push_back({t.coeff, {t.exps[rho]}});
                plan.inf_poly.assign(static_cast<std::size_t>(std::max(D, 0L)) + 1, 0);
                for (const auto& t : f.terms)
                    if (t.exps[omega] == 0)
                        plan.inf_poly[t.exps[pivot]] =
                            (plan.inf_poly[t.exps[pivot]] + t.coeff) % spec.p;
                u32 val = 0;
                for (const auto& t : f.terms)
                    if (t.exps[omega] == 0 && t.exps[rho] == 0) val = (val + t.coeff) % spec.p;
                plan.inf_point_on_variety = (val == 0);
                return plan;
            }
        return std::nullopt;
    }
    return std::nullopt;
}

// Steps a single field element through enumeration order as a digit odometer.
inline bool next_element(const FieldCtx& F, u32* digits) {
    u32 p = F.p();
    for (u32 i = F.k(); i-- > 0;) {
        if (++digits[i] < p) return true;
        digits[i] = 0;
    }
    return false;
}

// #{w in K : w^e = value} for every value, indexed by element index.
std::vector<u32> build_power_histogram(const FieldCtx& F, u32 e) {
    u64 q = F.order_u64();
    std::vector<u32> hist(q, 0);
    std::vector<u32> w(F.k(), 0), we(F.k());
    for (u64 i = 0; i < q; ++i) {
        F.pow_u64(w.data(), e, we.data());
        hist[F.index_of(we.data())]++;
        next_element(F, w.data());
    }
    return hist;
}

struct HistCache {
    std::map<u32, std::vector<u32>> by_exp;
    const std::vector<u32>& get(const FieldCtx& F, u32 e) {
        auto it = by_exp.find(e);
        if (it == by_exp.end()) it = by_exp.emplace(e, build_power_histogram(F, e)).first;
        return it->second;
    }
};

// Roots in K of a dense univariate polynomial with prime-field coefficients.
u64 univariate_root_count(const FieldCtx& F, const std::vector<u32>& coeffs,
                          HistCache& hists) {
    u64 q = F.order_u64();
    std::vector<u32> nz;
    for (u32 i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] % F.p()) nz.push_back(i);
    if (nz.empty()) return q;
    if (nz.size() == 1) return nz[0] == 0 ? 0 : 1;
    if (nz.size() == 2) {
        u32 b = nz[0], a = nz[1];
        u64 roots = (b > 0) ? 1 : 0;  // v = 0
        u32 p = F.p();
        u64 ca_inv = 1, base = coeffs[a] % p, ex = p - 2;
        while (ex) {
            if (ex & 1) ca_inv = ca_inv * base % p;
            base = base * base % p;
            ex >>= 1;
        }
        u32 target = static_cast<u32>((p - coeffs[b] % p) % p * ca_inv % p);
        std::vector<u32> telem(F.k());
        F.set_residue(telem.data(), target);
        roots += hists.get(F, a - b)[F.index_of(telem.data())];
        return roots;
    }
    // dense scan
    u64 roots = 0;
    std::vector<u32> v(F.k(), 0), acc(F.k()), cf(F.k());
    for (u64 i = 0; i < q; ++i) {
        F.set_residue(acc.data(), coeffs.back());
        for (std::size_t j = coeffs.size() - 1; j-- > 0;) {
            F.mul(acc.data(), v.data(), acc.data());
            F.set_residue(cf.data(), coeffs[j]);
            F.add(acc.data(), cf.data(), acc.data());
        }
        if (F.is_zero(acc.data())) ++roots;
        next_element(F, v.data());
    }
    return roots;
}

u64 pivot_main_chart_range(const FieldCtx& F, const PivotPlan& plan,
                           const std::vector<u32>& hist, const u32* neg_c_inv, u64 lo,
                           u64 hi) {
    u32 k = F.k();
    u32 max_e = 1;
    for (const auto& t : plan.h_terms) max_e = std::max(max_e, t.exps[0]);
    std::vector<u32> pows((max_e + 1) * k, 0);
    std::vector<u32> u(k, 0), h(k), term(k), target(k);
    F.element_at(lo, u.data());
    u64 hits = 0;
    for (u64 i = lo; i < hi; ++i) {
        F.set_one(pows.data());
        std::copy(u.begin(), u.end(), pows.begin() + k);
        for (u32 e = 2; e <= max_e; ++e)
            F.mul(pows.data() + (e - 1) * k, u.data(), pows.data() + e * k);
        F.set_zero(h.data());
        for (const auto& t : plan.h_terms) {
            F.set_residue(term.data(), t.coeff);
            if (t.exps[0]) F.mul(term.data(), pows.data() + t.exps[0] * k, term.data());
            F.add(h.data(), term.data(), h.data());
        }
        F.mul(h.data(), neg_c_inv, target.data());
        hits += hist[F.index_of(target.data())];
        next_element(F, u.data());
    }
    return hits;
}

// When h itself is c2*u^e + c0, the outer pass collapses to a histogram
// convolution: sum_u hist_d[-h(u)/c] = sum_v hist_e[v] * hist_d[A(v)] with A
// affine. One field multiplication per element instead of a full evaluation.
u64 pivot_binomial_range(const FieldCtx& F, const std::vector<u32>& hist_d,
                         const std::vector<u32>& hist_e, const u32* scale,
                         const u32* shift, u64 lo, u64 hi) {
    u32 k = F.k();
    std::vector<u32> v(k), t(k);
    F.element_at(lo, v.data());
    u64 hits = 0;
    for (u64 i = lo; i < hi; ++i) {
        if (hist_e[i]) {
            F.mul(v.data(), scale, t.data());
            F.add(t.data(), shift, t.data());
            hits += static_cast<u64>(hist_e[i]) * hist_d[F.index_of(t.data())];
        }
        next_element(F, v.data());
    }
    return hits;
}

Int run_pivot_plan(const PivotPlan& plan, const FieldCtx& F, const RunLimits& limits) {
    u64 q = F.order_u64();

    // deterministic precharge: main pass + up to two histograms, and on
    // projective specs the infinity line in the worst case (scan or another
    // histogram)
    Int precharge = Int(3) * Int(static_cast<unsigned long>(q));
    if (plan.projective) precharge += Int(2) * Int(static_cast<unsigned long>(q));
    check_budget(precharge, limits.budget, "count_points: pivot strategy over budget");

    HistCache hists;
    const auto& hist = hists.get(F, plan.d);

    std::vector<u32> c_elem(F.k()), neg_c_inv(F.k());
    F.set_residue(c_elem.data(), plan.c);
    F.inv(c_elem.data(), neg_c_inv.data());
    F.neg(neg_c_inv.data(), neg_c_inv.data());

    u32 h_const = 0;
    std::vector<Term> h_var;
    for (const auto& t : plan.h_terms) {
        if (t.exps[0] == 0)
            h_const = (h_const + t.coeff) % F.p();
        else
            h_var.push_back(t);
    }

    u64 main_hits = 0;
    unsigned threads = limits.threads;
    if (h_var.empty()) {
        std::vector<u32> target(F.k());
        F.set_residue(target.data(), h_const);
        F.mul(target.data(), neg_c_inv.data(), target.data());
        main_hits = q * hist[F.index_of(target.data())];
    } else if (h_var.size() == 1) {
        const auto& hist_e = hists.get(F, h_var[0].exps[0]);
        std::vector<u32> scale(F.k()), shift(F.k());
        F.set_residue(scale.data(), h_var[0].coeff);
        F.mul(scale.data(), neg_c_inv.data(), scale.data());
        F.set_residue(shift.data(), h_const);
        F.mul(shift.data(), neg_c_inv.data(), shift.data());
        if (threads <= 1 || q < 4096) {
            main_hits = pivot_binomial_range(F, hist, hist_e, scale.data(), shift.data(), 0, q);
        } else {
            std::vector<u64> partial(threads, 0);
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t) {
                u64 lo = q / threads * t + std::min<u64>(t, q % threads);
                u64 hi = lo + q / threads + (t < q % threads ? 1 : 0);
                pool.emplace_back([&partial, &F, &hist, &hist_e, &scale, &shift, t, lo, hi] {
                    partial[t] = pivot_binomial_range(F, hist, hist_e, scale.data(),
                                                      shift.data(), lo, hi);
                });
            }
            for (auto& th : pool) th.join();
            for (u64 v : partial) main_hits += v;
        }
    } else if (threads <= 1 || q < 4096) {
        main_hits = pivot_main_chart_range(F, plan, hist, neg_c_inv.data(), 0, q);
    } else {
        std::vector<u64> partial(threads, 0);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            u64 lo = q / threads * t + std::min<u64>(t, q % threads);
            u64 hi = lo + q / threads + (t < q % threads ? 1 : 0);
            pool.emplace_back([&partial, &F, &plan, &hist, &neg_c_inv, t, lo, hi] {
                partial[t] = pivot_main_chart_range(F, plan, hist, neg_c_inv.data(), lo, hi);
            });
        }
        for (auto& th : pool) th.join();
        for (u64 v : partial) main_hits += v;
    }

    Int total = Int(static_cast<unsigned long>(main_hits));
    if (plan.projective) {
        total += Int(static_cast<unsigned long>(
            univariate_root_count(F, plan.inf_poly, hists)));
        if (plan.inf_point_on_variety) total += 1;
    }
    return total;
}

MPoly partial_derivative(const MPoly& f, u32 var, u32 p) {
    MPoly g;
    for (const auto& t : f.terms) {
        if (t.exps[var] == 0) continue;
        u32 c = static_cast<u32>(static_cast<u64>(t.coeff) * (t.exps[var] % p) % p);
        if (!c) continue;
        Term nt = t;
        nt.coeff = c;
        nt.exps[var] -= 1;
        g.terms.push_back(std::move(nt));
    }
    return g;
}

void require_homogeneous(const VarietySpec& spec) {
    if (spec.model != Model::projective) return;
    for (const auto& f : spec.polys)
        if (!f.homogeneous())
            throw non_homogeneous_error("projective model requires homogeneous polynomials");
}

}  // namespace

Int count_points_generic(const VarietySpec& spec, u32 m, const RunLimits& limits) {
    require_homogeneous(spec);
    const FieldCtx& F = make_field(spec.p, spec.a * m);
    check_budget(generic_tuple_charge(spec, F.q()), limits.budget,
                 "count_points: enumeration over budget");
    if (!F.fits_u64()) throw input_error("field too large to enumerate");

    if (spec.model == Model::affine) {
        ChartSystem cs = affine_system(spec.polys, spec.n_amb());
        return Int(static_cast<unsigned long>(count_chart(F, cs, limits.threads)));
    }
    Int total = 0;
    for (u32 s = 0; s < spec.n_amb(); ++s) {
        ChartSystem cs = stratum_system(spec.polys, spec.n_amb(), s);
        total += Int(static_cast<unsigned long>(count_chart(F, cs, limits.threads)));
    }
    return total;
}

std::optional<Int> count_points_pivot(const VarietySpec& spec, u32 m,
                                      const RunLimits& limits) {
    require_homogeneous(spec);
    auto plan = find_pivot_plan(spec);
    if (!plan) return std::nullopt;
    const FieldCtx& F = make_field(spec.p, spec.a * m);
    if (!F.fits_u64() || F.order_u64() > (1ull << 26)) return std::nullopt;
    return run_pivot_plan(*plan, F, limits);
}

Int count_points(const VarietySpec& spec, u32 m, const RunLimits& limits) {
    if (m < 1) throw input_error("extension degree m must be >= 1");
    if (auto fast = count_points_pivot(spec, m, limits)) return *fast;
    return count_points_generic(spec, m, limits);
}

CountSeries count_series(const VarietySpec& spec, u32 max_m, const RunLimits& limits) {
    CountSeries cs;
    cs.p = spec.p;
    cs.a = spec.a;
    ffield::PrimePower q(spec.p, spec.a);
    for (u32 m = 1; m <= max_m; ++m) {
        try {
            cs.counts.push_back(count_points(spec, m, limits));
        } catch (const budget_exceeded_error& e) {
            throw budget_exceeded_error(
                e.need, e.budget, std::string(e.what()) + " at m=" + std::to_string(m));
        }
        if (cs.counts.back() < 0) throw error("count_series: negative count (bug)");
        if (spec.model == Model::projective &&
            cs.counts.back() > projective_space_count(spec.n_amb() - 1, q, m))
            throw error("count_series: count exceeds the ambient projective space (bug)");
    }
    return cs;
}

Int projective_space_count(u32 n, const ffield::PrimePower& q, u32 m) {
    Int total = 0;
    for (u32 i = 0; i <= n; ++i) total += int_pow(q.q, static_cast<unsigned long>(i) * m);
    return total;
}

SmoothnessReport smoothness_probe(const VarietySpec& spec, u32 max_m,
                                  const RunLimits& limits) {
    require_homogeneous(spec);
    VarietySpec sing = spec;
    sing.polys.clear();
    for (const auto& f : spec.polys)
        if (!f.is_zero()) sing.polys.push_back(f);
    SmoothnessReport rep;
    if (sing.polys.empty()) {
        // no equations: the variety is the ambient space
        rep.note = "no nontrivial equations; ambient space, trivially smooth";
        return rep;
    }
    {
        auto defining = sing.polys;
        for (const auto& f : defining)
            for (u32 v = 0; v < spec.n_amb(); ++v)
                sing.polys.push_back(partial_derivative(f, v, spec.p));
    }

    rep.note =
        "singular locus searched over F_{q^m} for m <= " + std::to_string(max_m) +
        "; a witness is definitive, absence is heuristic evidence only. Projective "
        "probe uses the Jacobi criterion with the defining equations kept in the "
        "system, so it does not rely on the Euler relation.";

    for (u32 m = 1; m <= max_m; ++m) {
        const FieldCtx& F = make_field(spec.p, spec.a * m);
        check_budget(generic_tuple_charge(sing, F.q()), limits.budget,
                     "smoothness_probe: enumeration over budget");
        if (!F.fits_u64()) throw input_error("field too large to enumerate");
        if (spec.model == Model::affine) {
            ChartSystem cs = affine_system(sing.polys, sing.n_amb());
            if (auto w = chart_witness(F, cs)) {
                rep.singular_point_found = true;
                rep.witness_m = m;
                for (u64 idx : *w) {
                    std::vector<u32> e(F.k());
                    F.element_at(idx, e.data());
                    rep.witness.push_back(e);
                }
                return rep;
            }
        } else {
            for (u32 s = 0; s < sing.n_amb(); ++s) {
                ChartSystem cs = stratum_system(sing.polys, sing.n_amb(), s);
                if (auto w = chart_witness(F, cs)) {
                    rep.singular_point_found = true;
                    rep.witness_m = m;
                    for (u32 j = 0; j < s; ++j)
                        rep.witness.push_back(std::vector<u32>(F.k(), 0));
                    std::vector<u32> one(F.k());
                    F.set_one(one.data());
                    rep.witness.push_back(one);
                    for (u64 idx : *w) {
                        std::vector<u32> e(F.k());
                        F.element_at(idx, e.data());
                        rep.witness.push_back(e);
                    }
                    return rep;
                }
            }
        }
    }
    return rep;
}

// ---- JSON ----

VarietySpec VarietySpec::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    VarietySpec s;
    s.p = j.at("p").get<u32>();
    s.a = j.value("a", 1u);
    if (!is_prime_u64(s.p)) throw not_prime_error(s.p);
    if (s.a < 1) throw degree_zero_error();
    std::string model = j.at("model").get<std::string>();
    if (model == "affine")
        s.model = Model::affine;
    else if (model == "projective")
        s.model = Model::projective;
    else
        throw input_error("model must be 'affine' or 'projective'");
    s.vars = j.at("vars").get<std::vector<std::string>>();
    if (s.vars.empty()) throw input_error("at least one variable required");
    for (const auto& jp : j.at("polys")) {
        MPoly f;
        for (const auto& jt : jp) {
            if (!jt.is_array() || jt.size() != s.vars.size() + 1)
                throw input_error("term must be [coeff, e_1, ..., e_n]");
            Int c = jt[0].is_string() ? int_from_decimal(jt[0].get<std::string>())
                                      : Int(jt[0].get<long>());
            Int cr = c % s.p;
            if (cr < 0) cr += s.p;
            u32 coeff = static_cast<u32>(cr.get_ui());
            if (!coeff) continue;
            Term t;
            t.coeff = coeff;
            for (std::size_t i = 1; i < jt.size(); ++i) t.exps.push_back(jt[i].get<u32>());
            f.terms.push_back(std::move(t));
        }
        s.polys.push_back(std::move(f));
    }
    if (j.contains("dim")) s.declared_dim = j.at("dim").get<long>();
    if (j.contains("multidegree"))
        s.multidegree = j.at("multidegree").get<std::vector<long>>();
    if (s.model == Model::projective)
        for (const auto& f : s.polys)
            if (!f.homogeneous())
                throw non_homogeneous_error(
                    "projective model requires homogeneous polynomials");
    return s;
}

VarietySpec VarietySpec::from_file(const std::string& path) {
    FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw input_error("cannot open spec file: " + path);
    std::string text;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, fp)) > 0) text.append(buf, n);
    std::fclose(fp);
    return from_json_text(text);
}

std::string VarietySpec::to_json_text() const {
    nlohmann::ordered_json j;
    j["p"] = p;
    j["a"] = a;
    j["model"] = model == Model::affine ? "affine" : "projective";
    j["vars"] = vars;
    nlohmann::ordered_json jpolys = nlohmann::ordered_json::array();
    for (const auto& f : polys) {
        nlohmann::ordered_json jp = nlohmann::ordered_json::array();
        for (const auto& t : f.terms) {
            nlohmann::ordered_json jt = nlohmann::ordered_json::array();
            jt.push_back(std::to_string(t.coeff));
            for (u32 e : t.exps) jt.push_back(e);
            jp.push_back(jt);
        }
        jpolys.push_back(jp);
    }
    j["polys"] = jpolys;
    if (declared_dim) j["dim"] = *declared_dim;
    if (!multidegree.empty()) j["multidegree"] = multidegree;
    return j.dump();
}

}  // namespace weillab::geometry
