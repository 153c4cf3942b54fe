#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weillab {

// Exact unbounded integers / rationals. All zeta arithmetic, counts and
// bound checks go through these; machine words appear only in the
// enumeration kernels where ranges are proven small.
using Int = mpz_class;
using Rat = mpq_class;

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Int int_pow(unsigned long base, unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
}

// Deterministic primality by trial division; fine for p < 2^31.
inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline std::string to_decimal(const Int& v) { return v.get_str(10); }

inline Int int_from_decimal(const std::string& s) {
    Int v;
    if (v.set_str(s, 10) != 0)
        throw std::invalid_argument("invalid decimal integer: '" + s + "'");
    return v;
}

// Rationals serialize as "num/den" (or plain "num" when den == 1).
inline std::string to_fraction(const Rat& v) {
    Rat c = v;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str(10);
    return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

inline Rat rat_from_fraction(const std::string& s) {
    Rat v;
    if (v.set_str(s, 10) != 0)
        throw std::invalid_argument("invalid rational: '" + s + "'");
    if (v.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
    v.canonicalize();
    return v;
}

inline std::vector<std::uint64_t> divisors_of(std::uint64_t n) {
    std::vector<std::uint64_t> lo, hi;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        lo.push_back(d);
        if (d != n / d) hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

inline int mobius(std::uint64_t n) {
    int primes = 0;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        n /= d;
        if (n % d == 0) return 0;
        ++primes;
    }
    if (n > 1) ++primes;
    return primes % 2 ? -1 : 1;
}

}  // namespace weillab
