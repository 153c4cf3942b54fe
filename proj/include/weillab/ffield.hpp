#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "weillab/errors.hpp"
#include "weillab/numbers.hpp"

namespace weillab::ffield {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Largest supported extension degree of a single context (dense vectors).
inline constexpr u32 kMaxDegree = 64;

struct PrimePower {
    u32 p;
    u32 k;
    Int q;  // p^k

    PrimePower(u32 p_, u32 k_);
};

// Immutable arithmetic context for F_{p^k} = F_p[x]/(modulus). The modulus is
// the first irreducible monic polynomial of degree k in a fixed order
// (ascending number of nonzero terms, then lexicographic on the coefficient
// list c_0..c_{k-1}), so identical (p, k) always yield identical contexts.
//
// Elements are length-k vectors of residues mod p. Enumeration index i maps
// to coefficients by the base-p digits of i, most significant digit = c_0,
// i.e. ascending index is ascending lexicographic coefficient order.
class FieldCtx {
public:
    FieldCtx(u32 p, u32 k);

    u32 p() const { return p_; }
    u32 k() const { return k_; }
    const Int& q() const { return q_; }
    // Field size as u64; only valid when fits_u64() (all enumerable fields).
    bool fits_u64() const { return q_u64_ != 0; }
    u64 order_u64() const { return q_u64_; }
    const std::vector<u32>& modulus() const { return modulus_; }

    // ---- kernels on raw coefficient arrays of length k ----
    void set_zero(u32* a) const;
    void set_one(u32* a) const;
    void set_residue(u32* a, u64 r) const;  // image of an integer residue
    bool is_zero(const u32* a) const;
    bool equal(const u32* a, const u32* b) const;
    void add(const u32* a, const u32* b, u32* out) const;
    void sub(const u32* a, const u32* b, u32* out) const;
    void neg(const u32* a, u32* out) const;
    void mul(const u32* a, const u32* b, u32* out) const;
    void pow_u64(const u32* a, u64 e, u32* out) const;
    void pow_int(const u32* a, const Int& e, u32* out) const;
    void inv(const u32* a, u32* out) const;  // a != 0
    u32 trace(const u32* a) const;           // absolute trace, in [0, p)
    void frobenius_p(const u32* a, u32* out) const;  // a^p

    u64 index_of(const u32* a) const;
    void element_at(u64 index, u32* out) const;

private:
    u32 p_;
    u32 k_;
    Int q_;
    u64 q_u64_;  // 0 when p^k does not fit
    u64 pmagic_ = 0;               // floor(2^64 / p)
    std::vector<u32> modulus_;     // length k+1, monic
    std::vector<u32> red_;         // (p - modulus_[j]) % p, j < k
    std::vector<u32> tr_basis_;    // trace of x^i, i < k
    bool wide_;                    // accumulate in 128 bits (large p)

    // a mod p without a hardware divide; exact for a < 2^63
    u64 reduce(u64 a) const {
        u64 qhat = static_cast<u64>((static_cast<unsigned __int128>(a) * pmagic_) >> 64);
        u64 r = a - qhat * p_;
        return r >= p_ ? r - p_ : r;
    }

    void mul_small(const u32* a, const u32* b, u32* out) const;
    void mul_wide(const u32* a, const u32* b, u32* out) const;
};

// Cached deterministic registry; contexts live for the process lifetime.
const FieldCtx& make_field(u32 p, u32 k);

// Convenience value type over a context.
struct FFElem {
    const FieldCtx* ctx = nullptr;
    std::vector<u32> c;

    FFElem() = default;
    explicit FFElem(const FieldCtx& f) : ctx(&f), c(f.k(), 0) {}
    FFElem(const FieldCtx& f, u64 residue) : ctx(&f), c(f.k(), 0) {
        f.set_residue(c.data(), residue);
    }

    bool is_zero() const { return ctx->is_zero(c.data()); }
    u64 index() const { return ctx->index_of(c.data()); }

    friend FFElem operator+(const FFElem& a, const FFElem& b) {
        FFElem r(*a.ctx);
        a.ctx->add(a.c.data(), b.c.data(), r.c.data());
        return r;
    }
    friend FFElem operator-(const FFElem& a, const FFElem& b) {
        FFElem r(*a.ctx);
        a.ctx->sub(a.c.data(), b.c.data(), r.c.data());
        return r;
    }
    friend FFElem operator*(const FFElem& a, const FFElem& b) {
        FFElem r(*a.ctx);
        a.ctx->mul(a.c.data(), b.c.data(), r.c.data());
        return r;
    }
    friend bool operator==(const FFElem& a, const FFElem& b) {
        return a.ctx == b.ctx && a.ctx->equal(a.c.data(), b.c.data());
    }

    FFElem pow(const Int& e) const {
        FFElem r(*ctx);
        ctx->pow_int(c.data(), e, r.c.data());
        return r;
    }
    FFElem inverse() const {
        FFElem r(*ctx);
        ctx->inv(c.data(), r.c.data());
        return r;
    }
};

inline FFElem element_at(const FieldCtx& f, u64 index) {
    FFElem r(f);
    f.element_at(index, r.c.data());
    return r;
}

// x^q for q = p^a: a successive p-power maps. x may live in any extension
// F_{p^{ak}} of F_q sharing the same characteristic.
FFElem frobenius_q(const FFElem& x, const PrimePower& q);

// Absolute trace down to F_p, returned as a residue.
u32 trace_to_prime(const FFElem& x);

// Ring embedding F_{p^a} -> F_{p^{ab}} sending the source generator to the
// first root (in enumeration order) of the source modulus in the target.
// The root search is cached per (source, target) pair.
FFElem embed(const FFElem& x, const FieldCtx& target);

// All q elements in enumeration order. Guarded: throws budget_exceeded_error
// when q exceeds `budget`.
std::vector<FFElem> enumerate_field(const FieldCtx& f, u64 budget = (1ull << 20));

}  // namespace weillab::ffield
