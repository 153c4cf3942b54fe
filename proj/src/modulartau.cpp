#include "weillab/modulartau.hpp"

#include <cmath>

#include "weillab/errors.hpp"

namespace weillab::modulartau {

namespace {

// prod_{n>=1} (1 - q^n) mod q^{order+1}, by generalized pentagonal numbers:
// sum_k (-1)^k q^{k(3k-1)/2}, k over all nonzero integers, plus 1.
std::vector<Int> euler_product(std::size_t order) {
    std::vector<Int> e(order + 1, 0);
    e[0] = 1;
    for (long k = 1;; ++k) {
        unsigned long g1 = static_cast<unsigned long>(k) * (3 * k - 1) / 2;
        unsigned long g2 = static_cast<unsigned long>(k) * (3 * k + 1) / 2;
        if (g1 > order && g2 > order) break;
        Int sign = (k % 2 == 1) ? -1 : 1;
        if (g1 <= order) e[g1] += sign;
        if (g2 <= order) e[g2] += sign;
    }
    return e;
}

std::vector<Int> trunc_mul(const std::vector<Int>& a, const std::vector<Int>& b,
                           std::size_t order) {
    std::vector<Int> r(order + 1, 0);
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

}  // namespace

QExpansion delta_expansion(std::size_t N) {
    if (N < 1) throw input_error("delta_expansion: N must be >= 1");
    std::size_t order = N - 1;  // Delta = q * E^24, so E^24 is needed mod q^N
    std::vector<Int> e = euler_product(order);
    // E^24 through the chain E^2, E^3, E^6, E^12, E^24
    std::vector<Int> e2 = trunc_mul(e, e, order);
    std::vector<Int> e3 = trunc_mul(e2, e, order);
    std::vector<Int> e6 = trunc_mul(e3, e3, order);
    std::vector<Int> e12 = trunc_mul(e6, e6, order);
    std::vector<Int> e24 = trunc_mul(e12, e12, order);
    QExpansion out;
    out.coeffs.assign(e24.begin(), e24.end());  // tau(n) = [q^{n-1}] E^24
    return out;
}

RamanujanReport ramanujan_check(unsigned long p, const QExpansion& exp) {
    if (!is_prime_u64(p)) throw not_prime_error(static_cast<unsigned long>(p));
    if (p > exp.N())
        throw prime_out_of_range_error("ramanujan_check: prime exceeds expansion length " +
                                       std::to_string(exp.N()));
    RamanujanReport rep;
    rep.a_p = exp.tau(p);
    Int p11 = int_pow(p, 11);
    rep.four_p11 = 4 * p11;
    rep.bound_holds = rep.a_p * rep.a_p <= rep.four_p11;

    // roots of T^2 - a_p T + p^11; under the bound they are conjugate with
    // product p^11, so both moduli are p^{11/2} up to floating error
    double a = rep.a_p.get_d();
    double c = p11.get_d();
    double disc = a * a - 4.0 * c;
    rep.expected_modulus = std::pow(static_cast<double>(p), 5.5);
    if (disc <= 0) {
        double re = a / 2.0, im = std::sqrt(-disc) / 2.0;
        rep.root_modulus[0] = rep.root_modulus[1] = std::hypot(re, im);
    } else {
        double s = std::sqrt(disc);
        rep.root_modulus[0] = std::fabs((a + s) / 2.0);
        rep.root_modulus[1] = std::fabs((a - s) / 2.0);
    }
    rep.worst_rel = std::max(std::fabs(rep.root_modulus[0] - rep.expected_modulus),
                             std::fabs(rep.root_modulus[1] - rep.expected_modulus)) /
                    rep.expected_modulus;
    return rep;
}

}  // namespace weillab::modulartau
