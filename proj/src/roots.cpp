#include "weillab/roots.hpp"

#include <algorithm>
#include <cmath>

#include "weillab/errors.hpp"

namespace weillab::roots {

namespace {

double log2_mpf(const mpf_class& x) {
    if (x == 0) return -1.0e9;
    long exp;
    double d = mpf_get_d_2exp(&exp, x.get_mpf_t());
    return std::log2(std::fabs(d)) + static_cast<double>(exp);
}

}  // namespace

RootSet find_roots(const std::vector<CF>& coeffs, unsigned prec) {
    std::size_t n = coeffs.size();
    if (n < 2) throw input_error("find_roots: polynomial must have degree >= 1");
    if (coeffs.back().is_zero()) throw input_error("find_roots: leading coefficient is zero");
    std::size_t deg = n - 1;

    RootSet rs;
    rs.precision_bits = prec;

    // Cauchy bound for the initial circle, in doubles (heuristics only)
    double lc_log2 = log2_mpf(coeffs.back().abs());
    double radius = 0.0;
    for (std::size_t i = 0; i < deg; ++i) {
        double m = std::exp2((log2_mpf(coeffs[i].abs()) - lc_log2) / (deg - i));
        radius = std::max(radius, m);
    }
    radius = 1.0 + radius;

    std::vector<CF> z(deg);
    for (std::size_t j = 0; j < deg; ++j) {
        double angle = 2.0 * 3.14159265358979323846 * (static_cast<double>(j) + 0.376) /
                       static_cast<double>(deg);
        z[j] = CF::from_double(radius * std::cos(angle), radius * std::sin(angle), prec);
    }

    std::vector<CF> deriv(deg);
    for (std::size_t i = 1; i < n; ++i)
        deriv[i - 1] = coeffs[i] * CF::from_double(static_cast<double>(i), 0.0, prec);

    const double stop_log2 = -static_cast<double>(prec) + 24;
    unsigned max_it = 64 + 32 * static_cast<unsigned>(deg);
    for (unsigned it = 0; it < max_it; ++it) {
        double worst_step = -1.0e9;
        for (std::size_t j = 0; j < deg; ++j) {
            CF fz = poly_eval(coeffs, z[j]);
            if (fz.is_zero()) continue;
            CF dfz = deg > 0 ? poly_eval(deriv, z[j]) : CF(prec);
            CF w = dfz.is_zero() ? CF::from_double(0, 0, prec) : fz / dfz;
            if (dfz.is_zero()) {
                // nudge off a critical point, deterministically
                z[j] = z[j] + CF::from_double(1e-3, 2e-3, prec);
                worst_step = 1.0;
                continue;
            }
            CF s(prec);
            for (std::size_t k2 = 0; k2 < deg; ++k2) {
                if (k2 == j) continue;
                CF d = z[j] - z[k2];
                if (d.is_zero()) {
                    d = CF::from_double(1e-20, 1e-20, prec);
                }
                s = s + CF::from_double(1, 0, prec) / d;
            }
            CF denom = CF::from_double(1, 0, prec) - w * s;
            CF delta = denom.is_zero() ? w : w / denom;
            z[j] = z[j] - delta;
            double rel = log2_mpf(delta.abs()) -
                         std::max(0.0, log2_mpf(z[j].abs()));
            worst_step = std::max(worst_step, rel);
        }
        if (worst_step < stop_log2) break;
    }

    rs.roots = z;
    rs.distance_bound.resize(deg);
    for (std::size_t j = 0; j < deg; ++j) {
        CF fz = poly_eval(coeffs, z[j]);
        // two rigorous distance bounds to the nearest true root:
        //   prod |z - r_i| = |f(z)|/|lc|  =>  min <= (|f(z)|/|lc|)^(1/D)
        //   f'/f = sum 1/(z - r_i)        =>  min <= D |f(z)/f'(z)|
        double b_log2 = (log2_mpf(fz.abs()) - lc_log2) / static_cast<double>(deg);
        CF dfz = poly_eval(deriv, z[j]);
        if (!dfz.is_zero()) {
            double newton_log2 = log2_mpf(fz.abs()) - log2_mpf(dfz.abs()) +
                                 std::log2(static_cast<double>(deg));
            b_log2 = std::min(b_log2, newton_log2);
        }
        rs.distance_bound[j] = b_log2 <= -1060.0 ? 0.0 : std::exp2(b_log2);
    }
    return rs;
}

RootSet find_roots_int(const std::vector<Int>& coeffs, unsigned prec) {
    std::vector<CF> c;
    c.reserve(coeffs.size());
    for (const auto& v : coeffs)
        c.push_back(CF(mpf_class(v, prec), mpf_class(0, prec)));
    while (c.size() > 1 && c.back().is_zero()) c.pop_back();
    return find_roots(c, prec);
}

RootSet find_roots_rat(const std::vector<Rat>& coeffs, unsigned prec) {
    std::vector<CF> c;
    c.reserve(coeffs.size());
    for (const auto& v : coeffs)
        c.push_back(CF(mpf_class(v, prec), mpf_class(0, prec)));
    while (c.size() > 1 && c.back().is_zero()) c.pop_back();
    return find_roots(c, prec);
}

}  // namespace weillab::roots
