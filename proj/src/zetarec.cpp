#include "weillab/zetarec.hpp"

#include <algorithm>

#include "json.hpp"
#include "weillab/errors.hpp"
#include "weillab/poly.hpp"

namespace weillab::zetarec {

PowerSeriesZ zeta_series(const geometry::CountSeries& counts, std::size_t T) {
    if (T > counts.counts.size())
        throw insufficient_terms_error("zeta_series: T exceeds available counts");
    PowerSeriesZ s;
    s.coeffs.assign(T + 1, 0);
    s.coeffs[0] = 1;
    // n a_n = sum_{j=1..n} N_j a_{n-j}; each a_n must divide out exactly
    for (std::size_t n = 1; n <= T; ++n) {
        Int acc = 0;
        for (std::size_t j = 1; j <= n; ++j) acc += counts.counts[j - 1] * s.coeffs[n - j];
        if (!mpz_divisible_ui_p(acc.get_mpz_t(), static_cast<unsigned long>(n)))
            throw non_integral_coefficient_error(n);
        s.coeffs[n] = acc / static_cast<unsigned long>(n);
    }
    return s;
}

bool hankel_zero_test(const std::vector<Int>& seq, std::size_t M, std::size_t k) {
    std::size_t n = M + 1;
    if (k + 2 * M + 1 > seq.size())
        throw insufficient_terms_error("hankel_zero_test: window exceeds sequence length");
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = seq[i + j + k];

    // Bareiss fraction-free elimination; every division is exact.
    Int prev = 1;
    for (std::size_t r = 0; r < n; ++r) {
        if (a[r][r] == 0) {
            std::size_t srow = r + 1;
            while (srow < n && a[srow][r] == 0) ++srow;
            if (srow < n) {
                std::swap(a[r], a[srow]);
            } else {
                // column r is zero from row r down; pivot on another column
                std::size_t c = r + 1;
                while (c < n && a[r][c] == 0) ++c;
                if (c == n) return true;  // zero pivot row: determinant vanishes
                for (std::size_t i = 0; i < n; ++i) std::swap(a[i][r], a[i][c]);
            }
        }
        for (std::size_t i = r + 1; i < n; ++i)
            for (std::size_t j = r + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[r][r] - a[i][r] * a[r][j]) / prev;  // exact
        prev = a[r][r];
        if (prev == 0) return true;
    }
    return a[n - 1][n - 1] == 0;
}

namespace {

using RPoly = std::vector<Rat>;

std::vector<Int> clear_to_int(const RPoly& f, const char* what) {
    std::vector<Int> out;
    out.reserve(f.size());
    for (const auto& c : f) {
        Rat r = c;
        r.canonicalize();
        if (r.get_den() != 1) throw holdout_mismatch_error(what);
        out.push_back(r.get_num());
    }
    return out;
}

}  // namespace

ZetaFunction rational_reconstruct(const PowerSeriesZ& series, std::size_t holdout, u32 p,
                                  u32 a) {
    if (holdout < 1) throw input_error("holdout must be >= 1");
    if (series.coeffs.empty() || series.coeffs[0] != 1)
        throw input_error("series must start with a_0 = 1");
    std::size_t total = series.coeffs.size();
    if (total <= holdout + 1)
        throw insufficient_terms_error("rational_reconstruct: series shorter than holdout + 2");
    std::size_t K = total - holdout;  // fit on a_0..a_{K-1}

    // Extended Euclid on (t^K, A). Every intermediate pair satisfies
    // r_i = A v_i (mod t^K), so each one with v_i(0) != 0 is a Pade candidate;
    // the minimal deg P + deg Q candidate is the reconstruction.
    RPoly r_prev(K + 1, Rat(0));
    r_prev[K] = 1;
    RPoly r_cur(series.coeffs.begin(), series.coeffs.begin() + K);
    poly::normalize(r_cur);
    RPoly v_prev{};
    RPoly v_cur{Rat(1)};

    struct Candidate {
        RPoly num, den;
        int degsum;
    };
    std::vector<Candidate> cands;
    auto consider = [&](const RPoly& r, const RPoly& v) {
        if (v.empty() || v[0] == 0) return;
        RPoly g = poly::gcd_monic(r, v);
        RPoly num = r, den = v;
        if (poly::degree(g) > 0) {
            RPoly rem;
            poly::divrem(r, g, num, rem);
            poly::divrem(v, g, den, rem);
        }
        Rat c0 = den[0];
        for (auto& c : num) c /= c0;
        for (auto& c : den) c /= c0;
        cands.push_back({num, den, poly::degree(num) + poly::degree(den)});
    };
    consider(r_cur, v_cur);
    while (!poly::is_zero(r_cur)) {
        RPoly q, rem;
        poly::divrem(r_prev, r_cur, q, rem);
        RPoly v_next = poly::sub(v_prev, poly::mul(q, v_cur));
        r_prev = std::move(r_cur);
        r_cur = std::move(rem);
        v_prev = std::move(v_cur);
        v_cur = std::move(v_next);
        consider(r_cur, v_cur);
    }
    if (cands.empty())
        throw no_rational_fit_error(
            "rational_reconstruct: no candidate with invertible denominator");

    std::stable_sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
        if (x.degsum != y.degsum) return x.degsum < y.degsum;
        return poly::degree(x.den) < poly::degree(y.den);
    });

    // At the minimum recommended series length the fit has no redundancy, so
    // several fractions of the same minimal degree sum can match the fitted
    // prefix. The held-out coefficients arbitrate among exactly those.
    int min_degsum = cands.front().degsum;
    std::string failure;
    for (const Candidate& cand : cands) {
        if (cand.degsum != min_degsum) break;
        ZetaFunction z;
        z.p = p;
        z.a = a;
        z.terms_used = K;
        z.holdout = holdout;
        try {
            z.P = clear_to_int(
                cand.num, "rational_reconstruct: minimal fit is not integral - more terms needed");
            z.Q = clear_to_int(
                cand.den, "rational_reconstruct: minimal fit is not integral - more terms needed");
        } catch (const holdout_mismatch_error& e) {
            if (failure.empty()) failure = e.what();
            continue;
        }
        if (z.P.empty() || z.P[0] != 1 || z.Q.empty() || z.Q[0] != 1) continue;
        bool ok = true;
        std::vector<Int> expanded = expand_series(z, total - 1);
        for (std::size_t i = K; i < total && ok; ++i)
            if (expanded[i] != series.coeffs[i]) {
                ok = false;
                if (failure.empty())
                    failure = "rational_reconstruct: held-out coefficient " +
                              std::to_string(i) +
                              " mismatch (fit is unstable - supply more counts)";
            }
        if (ok) return z;
    }
    throw holdout_mismatch_error(failure.empty()
                                     ? "rational_reconstruct: no minimal fit survives holdout"
                                     : failure);
}

Int expand_counts(const ZetaFunction& z, u32 m) {
    if (m < 1) throw input_error("m must be >= 1");
    // N_m = (power sums over Q's inverse roots) - (over P's)
    std::vector<Int> sq = poly::power_sums(z.Q, m);
    std::vector<Int> sp = poly::power_sums(z.P, m);
    return sq[m - 1] - sp[m - 1];
}

std::vector<Int> expand_series(const ZetaFunction& z, std::size_t T) {
    RPoly qr(z.Q.begin(), z.Q.end());
    RPoly pr(z.P.begin(), z.P.end());
    RPoly inv = poly::series_inverse(qr, T);
    RPoly full = poly::series_mul(pr, inv, T);
    std::vector<Int> out;
    out.reserve(T + 1);
    for (auto& c : full) {
        c.canonicalize();
        if (c.get_den() != 1) throw error("expand_series: non-integral coefficient (bug)");
        out.push_back(c.get_num());
    }
    return out;
}

std::string ZetaFunction::to_json_text() const {
    nlohmann::ordered_json j;
    auto poly_json = [](const std::vector<Int>& f) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& c : f) arr.push_back(c.get_str());
        return arr;
    };
    j["P"] = poly_json(P);
    j["Q"] = poly_json(Q);
    j["q"] = q().get_str();
    return j.dump();
}

ZetaFunction ZetaFunction::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ZetaFunction z;
    for (const auto& c : j.at("P")) z.P.push_back(int_from_decimal(c.get<std::string>()));
    for (const auto& c : j.at("Q")) z.Q.push_back(int_from_decimal(c.get<std::string>()));
    Int q = int_from_decimal(j.at("q").get<std::string>());
    if (q < 2) throw input_error("q must be at least 2");
    Int p = 2;
    while (q % p != 0) ++p;
    u32 a = 0;
    Int rest = q;
    while (rest > 1) {
        if (rest % p != 0) throw input_error("q is not a prime power");
        rest /= p;
        ++a;
    }
    if (!p.fits_ulong_p() || p.get_ui() > (1u << 30)) throw input_error("p too large");
    z.p = static_cast<u32>(p.get_ui());
    z.a = a;
    return z;
}

}  // namespace weillab::zetarec
