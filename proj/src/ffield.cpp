#include "weillab/ffield.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace weillab::ffield {

namespace {

u64 mod_inverse_u64(u64 a, u64 m) {
    // extended Euclid; m prime here
    long long t = 0, nt = 1;
    long long r = static_cast<long long>(m), nr = static_cast<long long>(a % m);
    while (nr != 0) {
        long long q = r / nr;
        t -= q * nt;
        std::swap(t, nt);
        r -= q * nr;
        std::swap(r, nr);
    }
    if (t < 0) t += static_cast<long long>(m);
    return static_cast<u64>(t);
}

// ---- plain F_p[x] arithmetic used only at construction time ----

using UPoly = std::vector<u32>;  // index = degree

int updeg(const UPoly& f) {
    for (std::size_t i = f.size(); i-- > 0;)
        if (f[i]) return static_cast<int>(i);
    return -1;
}

void uptrim(UPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly upmulmod(const UPoly& a, const UPoly& b, const UPoly& f, u32 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<u64> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            acc[i + j] = (acc[i + j] + static_cast<u64>(a[i]) * b[j]) % p;
    }
    int df = updeg(f);
    for (int i = static_cast<int>(acc.size()) - 1; i >= df; --i) {
        u64 c = acc[i] % p;
        if (!c) continue;
        acc[i] = 0;
        u64 lead_inv = mod_inverse_u64(f[df], p);
        u64 scale = c * lead_inv % p;
        for (int j = 0; j < df; ++j)
            acc[i - df + j] = (acc[i - df + j] + scale * (p - f[j] % p)) % p;
    }
    UPoly r(df > 0 ? df : 0, 0);
    for (int i = 0; i < df && i < static_cast<int>(acc.size()); ++i)
        r[i] = static_cast<u32>(acc[i] % p);
    uptrim(r);
    return r;
}

UPoly uppow_p(const UPoly& a, u32 p, const UPoly& f) {
    // a^p by square and multiply
    UPoly result{1};
    UPoly base = a;
    u32 e = p;
    while (e) {
        if (e & 1) result = upmulmod(result, base, f, p);
        base = upmulmod(base, base, f, p);
        e >>= 1;
    }
    return result;
}

UPoly upgcd(UPoly a, UPoly b, u32 p) {
    uptrim(a);
    uptrim(b);
    while (updeg(b) >= 0) {
        // a mod b
        int db = updeg(b);
        u64 lead_inv = mod_inverse_u64(b[db], p);
        while (updeg(a) >= db) {
            int da = updeg(a);
            u64 c = static_cast<u64>(a[da]) * lead_inv % p;
            for (int j = 0; j <= db; ++j) {
                u64 v = a[da - db + j] + c * (p - b[j] % p) % p;
                a[da - db + j] = static_cast<u32>(v % p);
            }
            uptrim(a);
        }
        a.swap(b);
    }
    return a;
}

bool is_irreducible(const UPoly& f, u32 p) {
    int k = updeg(f);
    if (k < 1) return false;
    if (k == 1) return true;
    if (f[0] == 0) return false;  // divisible by x
    // x^{p^k} == x mod f, and gcd(x^{p^{k/l}} - x, f) == 1 for prime l | k
    UPoly x{0, 1};
    UPoly fr = x;
    std::vector<UPoly> frob_tower(k + 1);
    for (int i = 1; i <= k; ++i) {
        fr = uppow_p(fr, p, f);
        frob_tower[i] = fr;
    }
    UPoly top = frob_tower[k];
    // top - x must be 0 mod f
    UPoly diff = top;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    uptrim(diff);
    if (updeg(diff) >= 0) return false;
    for (int l = 2; l <= k; ++l) {
        if (k % l || !is_prime_u64(l)) continue;
        UPoly d = frob_tower[k / l];
        if (d.size() < 2) d.resize(2, 0);
        d[1] = (d[1] + p - 1) % p;
        uptrim(d);
        UPoly g = upgcd(f, d, p);
        if (updeg(g) != 0) return false;
    }
    return true;
}

// First irreducible monic polynomial of degree k in the fixed order:
// ascending count of nonzero terms, then lexicographic on (c_0..c_{k-1}).
UPoly select_modulus(u32 p, u32 k) {
    std::vector<u32> coeffs(k, 0);
    UPoly found;
    // recursive lexicographic walk placing exactly `nz` nonzero lower coeffs
    auto walk = [&](auto&& self, u32 pos, u32 nz_left) -> bool {
        if (pos == k) {
            if (nz_left) return false;
            UPoly f(coeffs.begin(), coeffs.end());
            f.push_back(1);
            if (is_irreducible(f, p)) {
                found = f;
                return true;
            }
            return false;
        }
        u32 positions_left = k - pos;
        if (nz_left < positions_left) {  // can afford a zero here
            coeffs[pos] = 0;
            if (self(self, pos + 1, nz_left)) return true;
        }
        if (nz_left > 0) {
            for (u32 v = 1; v < p; ++v) {
                coeffs[pos] = v;
                if (self(self, pos + 1, nz_left - 1)) return true;
            }
        }
        coeffs[pos] = 0;
        return false;
    };
    for (u32 nz = 0; nz <= k; ++nz)
        if (walk(walk, 0, nz)) return found;
    throw error("no irreducible polynomial found (unreachable)");
}

}  // namespace

PrimePower::PrimePower(u32 p_, u32 k_) : p(p_), k(k_) {
    if (!is_prime_u64(p)) throw not_prime_error(p);
    if (k < 1) throw degree_zero_error();
    q = int_pow(static_cast<unsigned long>(p), k);
}

FieldCtx::FieldCtx(u32 p, u32 k) : p_(p), k_(k) {
    if (!is_prime_u64(p)) throw not_prime_error(p);
    if (k < 1) throw degree_zero_error();
    if (k > kMaxDegree) throw input_error("extension degree too large: " + std::to_string(k));
    q_ = int_pow(static_cast<unsigned long>(p), k);
    q_u64_ = q_.fits_ulong_p() ? q_.get_ui() : 0;
    pmagic_ = static_cast<u64>((static_cast<unsigned __int128>(1) << 64) / p);
    modulus_ = select_modulus(p, k);
    modulus_.resize(k + 1, 0);
    modulus_[k] = 1;
    red_.resize(k);
    for (u32 j = 0; j < k; ++j) red_[j] = (p - modulus_[j] % p) % p;
    wide_ = p >= (1u << 15);

    // trace of the power basis: Tr(x^i) = sum_j (x^i)^{p^j}
    tr_basis_.assign(k, 0);
    std::vector<u32> acc(k), pw(k), tmp(k);
    for (u32 i = 0; i < k; ++i) {
        set_zero(acc.data());
        set_zero(pw.data());
        if (i < k) pw[i] = 1;  // x^i, already reduced since i < k
        for (u32 j = 0; j < k; ++j) {
            add(acc.data(), pw.data(), acc.data());
            pow_u64(pw.data(), p, tmp.data());
            pw = tmp;
        }
        // lands in the prime subfield
        for (u32 j = 1; j < k; ++j)
            if (acc[j]) throw error("trace basis escaped the prime field (bug)");
        tr_basis_[i] = acc[0];
    }
}

void FieldCtx::set_zero(u32* a) const { std::fill(a, a + k_, 0u); }

void FieldCtx::set_one(u32* a) const {
    std::fill(a, a + k_, 0u);
    a[0] = 1 % p_;
}

void FieldCtx::set_residue(u32* a, u64 r) const {
    std::fill(a, a + k_, 0u);
    a[0] = static_cast<u32>(r % p_);
}

bool FieldCtx::is_zero(const u32* a) const {
    for (u32 i = 0; i < k_; ++i)
        if (a[i]) return false;
    return true;
}

bool FieldCtx::equal(const u32* a, const u32* b) const {
    return std::equal(a, a + k_, b);
}

void FieldCtx::add(const u32* a, const u32* b, u32* out) const {
    for (u32 i = 0; i < k_; ++i) {
        u32 s = a[i] + b[i];
        out[i] = s >= p_ ? s - p_ : s;
    }
}

void FieldCtx::sub(const u32* a, const u32* b, u32* out) const {
    for (u32 i = 0; i < k_; ++i) {
        u32 s = a[i] + p_ - b[i];
        out[i] = s >= p_ ? s - p_ : s;
    }
}

void FieldCtx::neg(const u32* a, u32* out) const {
    for (u32 i = 0; i < k_; ++i) out[i] = a[i] ? p_ - a[i] : 0;
}

void FieldCtx::mul_small(const u32* a, const u32* b, u32* out) const {
    // k*(p-1)^2 stays below 2^64 for p < 2^15, so one deferred reduction.
    u64 acc[2 * kMaxDegree - 1] = {0};
    for (u32 i = 0; i < k_; ++i) {
        if (!a[i]) continue;
        u64 ai = a[i];
        for (u32 j = 0; j < k_; ++j) acc[i + j] += ai * b[j];
    }
    for (u32 d = 2 * k_ - 2; d >= k_ && d < 2 * kMaxDegree; --d) {
        u64 c = reduce(acc[d]);
        if (c)
            for (u32 j = 0; j < k_; ++j) acc[d - k_ + j] += c * red_[j];
        if (d == k_) break;
    }
    for (u32 i = 0; i < k_; ++i) out[i] = static_cast<u32>(reduce(acc[i]));
}

void FieldCtx::mul_wide(const u32* a, const u32* b, u32* out) const {
    unsigned __int128 acc[2 * kMaxDegree - 1] = {0};
    for (u32 i = 0; i < k_; ++i) {
        if (!a[i]) continue;
        u64 ai = a[i];
        for (u32 j = 0; j < k_; ++j) acc[i + j] += static_cast<unsigned __int128>(ai) * b[j];
    }
    for (u32 d = 2 * k_ - 2; d >= k_ && d < 2 * kMaxDegree; --d) {
        u64 c = static_cast<u64>(acc[d] % p_);
        if (c)
            for (u32 j = 0; j < k_; ++j) acc[d - k_ + j] += static_cast<unsigned __int128>(c) * red_[j];
        if (d == k_) break;
    }
    for (u32 i = 0; i < k_; ++i) out[i] = static_cast<u32>(acc[i] % p_);
}

void FieldCtx::mul(const u32* a, const u32* b, u32* out) const {
    if (k_ == 1) {
        out[0] = static_cast<u32>(static_cast<u64>(a[0]) * b[0] % p_);
        return;
    }
    if (wide_)
        mul_wide(a, b, out);
    else
        mul_small(a, b, out);
}

void FieldCtx::pow_u64(const u32* a, u64 e, u32* out) const {
    u32 base[kMaxDegree], res[kMaxDegree];
    std::copy(a, a + k_, base);
    set_one(res);
    while (e) {
        if (e & 1) mul(res, base, res);
        mul(base, base, base);
        e >>= 1;
    }
    std::copy(res, res + k_, out);
}

void FieldCtx::pow_int(const u32* a, const Int& e, u32* out) const {
    if (e.fits_ulong_p()) {
        pow_u64(a, e.get_ui(), out);
        return;
    }
    if (e < 0) throw input_error("negative exponent");
    u32 base[kMaxDegree], res[kMaxDegree];
    std::copy(a, a + k_, base);
    set_one(res);
    std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = 0; i < bits; ++i) {
        if (mpz_tstbit(e.get_mpz_t(), i)) mul(res, base, res);
        mul(base, base, base);
    }
    std::copy(res, res + k_, out);
}

void FieldCtx::inv(const u32* a, u32* out) const {
    if (is_zero(a)) throw input_error("inverse of zero");
    Int e = q_ - 2;
    pow_int(a, e, out);
}

u32 FieldCtx::trace(const u32* a) const {
    u64 t = 0;
    for (u32 i = 0; i < k_; ++i) t += static_cast<u64>(a[i]) * tr_basis_[i] % p_;
    return static_cast<u32>(t % p_);
}

void FieldCtx::frobenius_p(const u32* a, u32* out) const { pow_u64(a, p_, out); }

u64 FieldCtx::index_of(const u32* a) const {
    u64 idx = 0;
    for (u32 i = 0; i < k_; ++i) idx = idx * p_ + a[i];  // c_0 most significant
    return idx;
}

void FieldCtx::element_at(u64 index, u32* out) const {
    for (u32 i = k_; i-- > 0;) {
        out[i] = static_cast<u32>(index % p_);
        index /= p_;
    }
}

const FieldCtx& make_field(u32 p, u32 k) {
    static std::mutex mu;
    static std::map<std::pair<u32, u32>, std::unique_ptr<FieldCtx>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, k);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::make_unique<FieldCtx>(p, k)).first;
    return *it->second;
}

FFElem frobenius_q(const FFElem& x, const PrimePower& q) {
    if (x.ctx->p() != q.p)
        throw incompatible_degrees_error("frobenius_q: mixed characteristics");
    FFElem r = x;
    for (u32 i = 0; i < q.k; ++i) {
        FFElem t(*r.ctx);
        r.ctx->frobenius_p(r.c.data(), t.c.data());
        r = t;
    }
    return r;
}

u32 trace_to_prime(const FFElem& x) { return x.ctx->trace(x.c.data()); }

namespace {

struct EmbedKey {
    const FieldCtx* src;
    const FieldCtx* dst;
    bool operator<(const EmbedKey& o) const {
        return std::tie(src, dst) < std::tie(o.src, o.dst);
    }
};

}  // namespace

FFElem embed(const FFElem& x, const FieldCtx& target) {
    const FieldCtx& src = *x.ctx;
    if (&src == &target) return x;
    if (src.p() != target.p() || target.k() % src.k() != 0)
        throw incompatible_degrees_error("embed: source degree does not divide target degree");

    static std::mutex mu;
    static std::map<EmbedKey, std::vector<std::vector<u32>>> cache;  // powers of the root
    std::vector<std::vector<u32>> powers;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(EmbedKey{&src, &target});
        if (it != cache.end()) powers = it->second;
    }
    if (powers.empty()) {
        if (!target.fits_u64() || target.order_u64() > (1ull << 22))
            throw input_error("embed: target field too large to search for a root");
        const auto& g = src.modulus();
        std::vector<u32> cand(target.k()), acc(target.k()), coef(target.k());
        bool found = false;
        std::vector<u32> root(target.k());
        for (u64 idx = 0; idx < target.order_u64(); ++idx) {
            target.element_at(idx, cand.data());
            // evaluate g (prime-field coefficients) at cand by Horner
            target.set_residue(acc.data(), g[src.k()]);
            for (u32 i = src.k(); i-- > 0;) {
                target.mul(acc.data(), cand.data(), acc.data());
                target.set_residue(coef.data(), g[i]);
                target.add(acc.data(), coef.data(), acc.data());
            }
            if (target.is_zero(acc.data())) {
                root = cand;
                found = true;
                break;
            }
        }
        if (!found) throw error("embed: no root of the source modulus found (bug)");
        powers.resize(src.k());
        powers[0].assign(target.k(), 0);
        target.set_one(powers[0].data());
        for (u32 i = 1; i < src.k(); ++i) {
            powers[i].resize(target.k());
            target.mul(powers[i - 1].data(), root.data(), powers[i].data());
        }
        std::lock_guard<std::mutex> lock(mu);
        cache.emplace(EmbedKey{&src, &target}, powers);
    }

    FFElem r(target);
    std::vector<u32> term(target.k());
    for (u32 i = 0; i < src.k(); ++i) {
        if (!x.c[i]) continue;
        std::vector<u32> scalar(target.k());
        target.set_residue(scalar.data(), x.c[i]);
        target.mul(powers[i].data(), scalar.data(), term.data());
        target.add(r.c.data(), term.data(), r.c.data());
    }
    return r;
}

std::vector<FFElem> enumerate_field(const FieldCtx& f, u64 budget) {
    if (!f.fits_u64() || f.order_u64() > budget)
        throw budget_exceeded_error(f.q().get_str(), std::to_string(budget),
                                    "enumerate_field: field size exceeds budget");
    std::vector<FFElem> out;
    out.reserve(f.order_u64());
    for (u64 i = 0; i < f.order_u64(); ++i) out.push_back(element_at(f, i));
    return out;
}

}  // namespace weillab::ffield
