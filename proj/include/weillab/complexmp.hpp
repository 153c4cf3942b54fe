#pragma once

#include <gmpxx.h>

#include <cmath>

namespace weillab::cmpx {

// Complex numbers over GMP floats. Precision is carried by the operands;
// everything here constructs results at the precision of the inputs.
struct CF {
    mpf_class re, im;

    CF() = default;
    explicit CF(unsigned prec) : re(0, prec), im(0, prec) {}
    CF(const mpf_class& r, const mpf_class& i) : re(r), im(i) {}

    static CF from_double(double r, double i, unsigned prec) {
        return CF(mpf_class(r, prec), mpf_class(i, prec));
    }

    friend CF operator+(const CF& a, const CF& b) { return CF(a.re + b.re, a.im + b.im); }
    friend CF operator-(const CF& a, const CF& b) { return CF(a.re - b.re, a.im - b.im); }
    friend CF operator*(const CF& a, const CF& b) {
        return CF(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend CF operator/(const CF& a, const CF& b) {
        mpf_class n = b.re * b.re + b.im * b.im;
        return CF((a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n);
    }

    mpf_class norm2() const { return re * re + im * im; }
    mpf_class abs() const {
        mpf_class n = norm2();
        if (n == 0) return n;
        return sqrt(n);
    }
    bool is_zero() const { return re == 0 && im == 0; }
};

inline CF conj(const CF& a) { return CF(a.re, mpf_class(-a.im)); }

// Horner evaluation; coefficient index = degree.
inline CF poly_eval(const std::vector<CF>& f, const CF& z) {
    CF acc = f.back();
    for (std::size_t i = f.size() - 1; i-- > 0;) acc = acc * z + f[i];
    return acc;
}

// zeta_p^k = exp(2 pi i k / p) at full working precision: Newton iteration on
// x^p - 1 from the double-precision seed. Quadratic convergence doubles the
// accurate bits each step, so 64 iterations vastly overshoot any precision
// this library uses.
inline CF root_of_unity(unsigned p, unsigned k, unsigned prec) {
    k %= p;
    double angle = 2.0 * 3.14159265358979323846 * static_cast<double>(k) / p;
    CF z = CF::from_double(std::cos(angle), std::sin(angle), prec + 32);
    if (k == 0) return CF::from_double(1.0, 0.0, prec + 32);
    for (int it = 0; it < 64; ++it) {
        // z <- z - (z^p - 1) / (p z^{p-1})
        CF zp1 = z;  // z^{p-1}
        for (unsigned i = 2; i < p; ++i) zp1 = zp1 * z;
        CF zp = zp1 * z;
        CF num = zp - CF::from_double(1.0, 0.0, prec + 32);
        CF den = zp1 * CF::from_double(static_cast<double>(p), 0.0, prec + 32);
        CF delta = num / den;
        z = z - delta;
        if (delta.norm2() == 0) break;
    }
    return z;
}

}  // namespace weillab::cmpx
