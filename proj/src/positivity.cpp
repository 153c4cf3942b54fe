#include "weillab/positivity.hpp"

#include "weillab/errors.hpp"
#include "weillab/poly.hpp"

namespace weillab::positivity {

namespace {

void require_unit_constant(const LocalFactor& f) {
    if (f.poly.empty() || f.poly[0] != 1)
        throw non_positive_input_error("local factor must have constant term 1");
    if (f.deg_x < 1) throw non_positive_input_error("deg_x must be >= 1");
}

Rat pow2k(const Rat& s, u32 k) {
    Rat r = s * s;
    Rat out = r;
    for (u32 i = 1; i < k; ++i) out *= r;
    return out;  // s^{2k}
}

}  // namespace

std::vector<Rat> power_sums(const LocalFactor& f, std::size_t T) {
    require_unit_constant(f);
    return poly::power_sums(f.poly, T);
}

std::vector<Rat> tensor_logderiv_series(const LocalFactor& f, u32 k, std::size_t T) {
    require_unit_constant(f);
    if (k < 1) throw non_positive_input_error("tensor power index k must be >= 1");
    std::vector<Rat> s = poly::power_sums(f.poly, T / f.deg_x + 1);
    std::vector<Rat> out(T, Rat(0));  // out[n-1] = coefficient at t^n
    for (std::size_t n = 1; n <= T; ++n) {
        if (n % f.deg_x) continue;
        std::size_t m = n / f.deg_x;
        Rat v = pow2k(s[m - 1], k) * Rat(static_cast<long>(f.deg_x));
        if (v < 0) throw negative_coefficient_error(n);
        out[n - 1] = v;
    }
    return out;
}

std::vector<Rat> tensor_local_factor_series(const LocalFactor& f, u32 k, std::size_t T) {
    require_unit_constant(f);
    if (k < 1) throw non_positive_input_error("tensor power index k must be >= 1");
    std::vector<Rat> s = poly::power_sums(f.poly, T / f.deg_x + 1);
    // exp(sum_m (s_m)^{2k} t^{e m}/m) via the weighted-exponential recurrence:
    // the weight at n = e*m is e * (s_m)^{2k}, zero off the arithmetic progression
    std::vector<Rat> w(T, Rat(0));
    for (std::size_t n = 1; n <= T; ++n) {
        if (n % f.deg_x) continue;
        std::size_t m = n / f.deg_x;
        w[n - 1] = pow2k(s[m - 1], k) * Rat(static_cast<long>(f.deg_x));
    }
    std::vector<Rat> series = poly::series_exp_weighted(w, T);
    for (std::size_t n = 0; n < series.size(); ++n)
        if (series[n] < 0) throw negative_coefficient_error(n);
    return series;
}

namespace {

void check_factor_shape(const std::vector<Rat>& f, std::size_t T) {
    if (f.empty() || f[0] != 1)
        throw non_positive_input_error("dominance_check: factor must start at 1");
    for (std::size_t i = 0; i < f.size() && i <= T; ++i)
        if (f[i] < 0)
            throw non_positive_input_error("dominance_check: negative coefficient in factor");
}

bool dominated_by(const std::vector<Rat>& f, const std::vector<Rat>& prod, std::size_t T) {
    for (std::size_t i = 0; i <= T; ++i) {
        Rat a = i < f.size() ? f[i] : Rat(0);
        if (a > prod[i]) return false;
    }
    return true;
}

}  // namespace

bool dominance_check(const std::vector<std::vector<Rat>>& factors, std::size_t T) {
    std::vector<Rat> prod(T + 1, Rat(0));
    prod[0] = 1;
    for (const auto& f : factors) {
        check_factor_shape(f, T);
        prod = poly::series_mul(prod, f, T);
    }
    for (const auto& f : factors)
        if (!dominated_by(f, prod, T)) return false;
    return true;
}

bool dominance_check_weighted(const std::vector<std::pair<std::vector<Rat>, Int>>& factors,
                              std::size_t T) {
    std::vector<Rat> prod(T + 1, Rat(0));
    prod[0] = 1;
    for (const auto& [f, mult] : factors) {
        check_factor_shape(f, T);
        if (mult < 0) throw non_positive_input_error("dominance_check: negative multiplicity");
        // f^mult via series binomial: exp(mult * log f) would need logs; the
        // factors here are (1 - t^e)^{-1}, so f^mult has the closed form
        // binom(mult + j - 1, j) at t^{ej}. Detect that shape, else multiply out.
        bool geometric = true;
        std::size_t e = 0;
        for (std::size_t i = 1; i < f.size(); ++i)
            if (f[i] != 0) {
                e = i;
                break;
            }
        if (e) {
            for (std::size_t i = 0; i < f.size() && i <= T; ++i)
                if (f[i] != ((i % e == 0) ? Rat(1) : Rat(0))) geometric = false;
        } else {
            geometric = false;
        }
        if (geometric) {
            std::vector<Rat> fm(T + 1, Rat(0));
            Int binom = 1;
            fm[0] = 1;
            for (std::size_t j = 1; e * j <= T; ++j) {
                binom = binom * (mult + static_cast<long>(j) - 1);
                binom /= static_cast<unsigned long>(j);
                fm[e * j] = Rat(binom);
            }
            prod = poly::series_mul(prod, fm, T);
        } else {
            if (!mult.fits_ulong_p())
                throw non_positive_input_error("dominance_check: multiplicity too large");
            for (unsigned long i = 0; i < mult.get_ui(); ++i)
                prod = poly::series_mul(prod, f, T);
        }
    }
    for (const auto& [f, mult] : factors) {
        if (mult == 0) continue;
        if (!dominated_by(f, prod, T)) return false;
    }
    return true;
}

}  // namespace weillab::positivity
