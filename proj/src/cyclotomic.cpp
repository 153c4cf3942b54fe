#include "weillab/cyclotomic.hpp"

#include "weillab/errors.hpp"
#include "weillab/poly.hpp"

namespace weillab::cyclo {

void CycInt::add_zeta_power(u64 e, const Int& coeff) {
    e %= p_;
    if (e < p_ - 1) {
        c_[e] += coeff;
    } else {  // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})
        for (auto& x : c_) x -= coeff;
    }
}

CycInt CycInt::zeta_power(u32 p, u64 e) {
    CycInt r(p);
    r.add_zeta_power(e, 1);
    return r;
}

bool CycInt::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycInt::rational_integer(Int& out) const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    out = c_[0];
    return true;
}

CycInt CycInt::conj() const { return galois(p_ - 1); }

CycInt CycInt::galois(u64 j) const {
    j %= p_;
    if (j == 0) throw input_error("galois twist index must be coprime to p");
    CycInt r(p_);
    for (u64 i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) r.add_zeta_power(i * j, c_[i]);
    return r;
}

CycInt operator+(const CycInt& a, const CycInt& b) {
    if (a.p_ != b.p_) throw input_error("mixed cyclotomies");
    CycInt r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] += b.c_[i];
    return r;
}

CycInt operator-(const CycInt& a, const CycInt& b) {
    if (a.p_ != b.p_) throw input_error("mixed cyclotomies");
    CycInt r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] -= b.c_[i];
    return r;
}

CycInt operator*(const CycInt& a, const CycInt& b) {
    if (a.p_ != b.p_) throw input_error("mixed cyclotomies");
    CycInt r(a.p_);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            r.add_zeta_power(static_cast<u64>(i) + j, Int(a.c_[i] * b.c_[j]));
        }
    }
    return r;
}

CycInt operator*(const Int& s, const CycInt& a) {
    CycInt r = a;
    for (auto& x : r.c_) x *= s;
    return r;
}

std::string to_string(const CycInt& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.coeffs().size(); ++i) {
        if (i) s += ",";
        s += v.coeffs()[i].get_str();
    }
    return s + "]";
}

// ---- Q(zeta_p) ----

CycRat::CycRat(const CycInt& v) : p_(v.p()) {
    c_.assign(v.coeffs().begin(), v.coeffs().end());
}

CycRat CycRat::zeta_power(u32 p, u64 e) { return CycRat(CycInt::zeta_power(p, e)); }

bool CycRat::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycRat::rational(Rat& out) const {
    for (std::size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    out = c_[0];
    return true;
}

CycRat CycRat::promoted(u32 p) const {
    if (p_ == p) return *this;
    if (p_ != 0) throw input_error("mixed cyclotomies");
    CycRat r;
    r.p_ = p;
    r.c_.assign(p - 1, Rat(0));
    r.c_[0] = c_[0];
    return r;
}

void unify(CycRat& a, CycRat& b) {
    if (a.p_ == b.p_) return;
    if (a.p_ == 0)
        a = a.promoted(b.p_);
    else if (b.p_ == 0)
        b = b.promoted(a.p_);
    else
        throw input_error("mixed cyclotomies");
}

CycRat operator+(const CycRat& a0, const CycRat& b0) {
    CycRat a = a0, b = b0;
    unify(a, b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += b.c_[i];
    return a;
}

CycRat operator-(const CycRat& a0, const CycRat& b0) {
    CycRat a = a0, b = b0;
    unify(a, b);
    for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] -= b.c_[i];
    return a;
}

CycRat operator*(const CycRat& a0, const CycRat& b0) {
    CycRat a = a0, b = b0;
    unify(a, b);
    if (a.p_ == 0) {
        a.c_[0] *= b.c_[0];
        return a;
    }
    u32 p = a.p_;
    CycRat r;
    r.p_ = p;
    r.c_.assign(p - 1, Rat(0));
    auto add_power = [&](u64 e, const Rat& v) {
        e %= p;
        if (e < static_cast<u64>(p) - 1)
            r.c_[e] += v;
        else
            for (auto& x : r.c_) x -= v;
    };
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j] == 0) continue;
            add_power(static_cast<u64>(i) + j, Rat(a.c_[i] * b.c_[j]));
        }
    }
    return r;
}

bool operator==(const CycRat& a0, const CycRat& b0) {
    CycRat a = a0, b = b0;
    try {
        unify(a, b);
    } catch (const input_error&) {
        return false;
    }
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        Rat x = a.c_[i], y = b.c_[i];
        x.canonicalize();
        y.canonicalize();
        if (x != y) return false;
    }
    return true;
}

CycRat CycRat::inverse() const {
    if (is_zero()) throw input_error("inverse of zero in Q(zeta_p)");
    if (p_ == 0) {
        CycRat r;
        r.c_[0] = 1 / c_[0];
        return r;
    }
    // extended Euclid in Q[x] against Phi_p = 1 + x + ... + x^{p-1}
    std::vector<Rat> phi(p_, Rat(1));
    std::vector<Rat> a(c_.begin(), c_.end());
    poly::normalize(a);
    std::vector<Rat> r0 = phi, r1 = a;
    std::vector<Rat> s0{}, s1{Rat(1)};  // coefficients of `a` in the combination
    while (!poly::is_zero(r1)) {
        std::vector<Rat> q, rem;
        poly::divrem(r0, r1, q, rem);
        std::vector<Rat> s2 = poly::sub(s0, poly::mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r0 = gcd = nonzero constant (Phi_p is irreducible over Q)
    if (poly::degree(r0) != 0)
        throw error("cyclotomic inverse: unexpected gcd degree (bug)");
    Rat scale = 1 / r0[0];
    CycRat out;
    out.p_ = p_;
    out.c_.assign(p_ - 1, Rat(0));
    // s0 * a = gcd (mod Phi_p), so a^{-1} = s0 / gcd; reduce s0 mod Phi_p
    std::vector<Rat> inv = s0;
    for (auto& x : inv) x *= scale;
    // inv has degree < deg(Phi_p) = p-1 already by the Euclid invariants
    for (std::size_t i = 0; i < inv.size() && i < out.c_.size(); ++i) out.c_[i] = inv[i];
    if (inv.size() > out.c_.size())
        throw error("cyclotomic inverse: degree overflow (bug)");
    return out;
}

}  // namespace weillab::cyclo
