#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "weillab/numbers.hpp"

namespace weillab::cyclo {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Element of Z[zeta_p] in the power basis 1, z, ..., z^{p-2}, reduced by
// 1 + z + ... + z^{p-1} = 0. The representation is canonical: two elements
// are equal iff their coefficient vectors are.
class CycInt {
public:
    CycInt() : p_(2), c_(1, 0) {}
    explicit CycInt(u32 p) : p_(p), c_(p - 1, 0) {}

    static CycInt zeta_power(u32 p, u64 e);
    static CycInt from_int(u32 p, const Int& v) {
        CycInt r(p);
        r.c_[0] = v;
        return r;
    }

    u32 p() const { return p_; }
    const std::vector<Int>& coeffs() const { return c_; }
    bool is_zero() const;
    // true iff the element lies in Z; writes the value
    bool rational_integer(Int& out) const;

    CycInt conj() const;  // zeta -> zeta^{-1}
    // Galois twist zeta -> zeta^j, gcd(j, p) = 1
    CycInt galois(u64 j) const;

    friend CycInt operator+(const CycInt& a, const CycInt& b);
    friend CycInt operator-(const CycInt& a, const CycInt& b);
    friend CycInt operator*(const CycInt& a, const CycInt& b);
    friend CycInt operator*(const Int& s, const CycInt& a);
    friend bool operator==(const CycInt& a, const CycInt& b) {
        return a.p_ == b.p_ && a.c_ == b.c_;
    }

    void add_zeta_power(u64 e, const Int& coeff);  // += coeff * zeta^e

private:
    u32 p_;
    std::vector<Int> c_;
};

// Element of Q(zeta_p), with transparent promotion of plain rationals so the
// generic polynomial/series templates can use literal constants. p() == 0
// marks a rational scalar not yet attached to a cyclotomy.
class CycRat {
public:
    CycRat() : c_(1, Rat(0)) {}
    CycRat(int v) : c_(1, Rat(v)) {}
    CycRat(long v) : c_(1, Rat(v)) {}
    CycRat(const Rat& v) : c_(1, v) {}
    explicit CycRat(const CycInt& v);

    static CycRat zeta_power(u32 p, u64 e);

    u32 p() const { return p_; }
    const std::vector<Rat>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_scalar() const { return p_ == 0; }
    // true iff the element lies in Q; writes the value
    bool rational(Rat& out) const;

    CycRat inverse() const;  // nonzero elements only

    friend CycRat operator+(const CycRat& a, const CycRat& b);
    friend CycRat operator-(const CycRat& a, const CycRat& b);
    friend CycRat operator*(const CycRat& a, const CycRat& b);
    friend CycRat operator/(const CycRat& a, const CycRat& b) { return a * b.inverse(); }
    friend bool operator==(const CycRat& a, const CycRat& b);

private:
    u32 p_ = 0;           // 0: scalar
    std::vector<Rat> c_;  // size 1 when scalar, else p-1

    CycRat promoted(u32 p) const;
    friend void unify(CycRat& a, CycRat& b);
};

std::string to_string(const CycInt& v);

}  // namespace weillab::cyclo
