#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace weillab::poly {

// Dense univariate polynomials, coefficient of t^i at index i. The zero
// polynomial is an empty vector. T is an exact ring (Int, Rat, Q(zeta_p));
// the division/gcd helpers additionally need T to be a field.

template <typename T>
void normalize(std::vector<T>& f) {
    while (!f.empty() && f.back() == T(0)) f.pop_back();
}

template <typename T>
int degree(const std::vector<T>& f) {
    for (std::size_t i = f.size(); i-- > 0;)
        if (!(f[i] == T(0))) return static_cast<int>(i);
    return -1;
}

template <typename T>
bool is_zero(const std::vector<T>& f) {
    return degree(f) < 0;
}

template <typename T>
std::vector<T> add(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> r(std::max(a.size(), b.size()), T(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    normalize(r);
    return r;
}

template <typename T>
std::vector<T> sub(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> r(std::max(a.size(), b.size()), T(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    normalize(r);
    return r;
}

template <typename T>
std::vector<T> mul(const std::vector<T>& a, const std::vector<T>& b) {
    if (is_zero(a) || is_zero(b)) return {};
    std::vector<T> r(a.size() + b.size() - 1, T(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == T(0)) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    normalize(r);
    return r;
}

template <typename T>
std::vector<T> scale(const std::vector<T>& a, const T& c) {
    std::vector<T> r(a.size(), T(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    normalize(r);
    return r;
}

template <typename T>
T eval(const std::vector<T>& f, const T& x) {
    T acc(0);
    for (std::size_t i = f.size(); i-- > 0;) acc = acc * x + f[i];
    return acc;
}

// Quotient/remainder over a field.
template <typename T>
void divrem(const std::vector<T>& a, const std::vector<T>& b, std::vector<T>& q,
            std::vector<T>& r) {
    int db = degree(b);
    if (db < 0) throw std::domain_error("polynomial division by zero");
    r = a;
    normalize(r);
    q.assign(r.size() > static_cast<std::size_t>(db) ? r.size() - db : 0, T(0));
    T lead = b[db];
    while (degree(r) >= db) {
        int dr = degree(r);
        T c = r[dr] / lead;
        q[dr - db] = c;
        for (int i = 0; i <= db; ++i) r[dr - db + i] = r[dr - db + i] - c * b[i];
        normalize(r);
    }
    normalize(q);
}

// Monic gcd over a field.
template <typename T>
std::vector<T> gcd_monic(std::vector<T> a, std::vector<T> b) {
    normalize(a);
    normalize(b);
    while (!is_zero(b)) {
        std::vector<T> q, r;
        divrem(a, b, q, r);
        a.swap(b);
        b.swap(r);
    }
    int d = degree(a);
    if (d >= 0 && !(a[d] == T(1))) {
        T inv = T(1) / a[d];
        for (auto& c : a) c = c * inv;
    }
    return a;
}

// ---- truncated power series (order T: coefficients 0..T inclusive) ----

template <typename T>
std::vector<T> series_mul(const std::vector<T>& a, const std::vector<T>& b,
                          std::size_t order) {
    std::vector<T> r(order + 1, T(0));
    for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
        if (a[i] == T(0)) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= order; ++j)
            r[i + j] = r[i + j] + a[i] * b[j];
    }
    return r;
}

template <typename T>
std::vector<T> series_inverse(const std::vector<T>& a, std::size_t order) {
    if (a.empty() || a[0] == T(0))
        throw std::domain_error("series inverse needs a unit constant term");
    std::vector<T> r(order + 1, T(0));
    r[0] = T(1) / a[0];
    for (std::size_t n = 1; n <= order; ++n) {
        T acc(0);
        for (std::size_t j = 1; j <= n && j < a.size(); ++j) acc = acc + a[j] * r[n - j];
        r[n] = T(0) - acc * r[0];
    }
    return r;
}

// exp(sum_{m>=1} w_m t^m / m) truncated at `order`; w is indexed from 1 via
// w[m-1]. This is the log-derivative recurrence n*a_n = sum_j w_j a_{n-j},
// which keeps every intermediate value in the coefficient field.
template <typename T>
std::vector<T> series_exp_weighted(const std::vector<T>& w, std::size_t order) {
    std::vector<T> a(order + 1, T(0));
    a[0] = T(1);
    for (std::size_t n = 1; n <= order; ++n) {
        T acc(0);
        for (std::size_t j = 1; j <= n && j <= w.size(); ++j)
            acc = acc + w[j - 1] * a[n - j];
        a[n] = acc / T(static_cast<long>(n));
    }
    return a;
}

// ---- Newton identities ----

// f = prod_i (1 - g_i t) with f[0] == 1; returns s_n = sum_i g_i^n, n = 1..count.
template <typename T>
std::vector<T> power_sums(const std::vector<T>& f, std::size_t count) {
    std::vector<T> s(count, T(0));
    for (std::size_t n = 1; n <= count; ++n) {
        T acc = (n < f.size()) ? T(f[n] * T(static_cast<long>(n))) : T(0);
        for (std::size_t j = 1; j < n && j < f.size(); ++j)
            acc = acc + f[j] * s[n - j - 1];
        s[n - 1] = T(0) - acc;
    }
    return s;
}

// Inverse direction: given s_1..s_deg, rebuild prod (1 - g_i t) of degree deg.
template <typename T>
std::vector<T> poly_from_power_sums(const std::vector<T>& s, std::size_t deg) {
    if (s.size() < deg) throw std::invalid_argument("not enough power sums");
    std::vector<T> f(deg + 1, T(0));
    f[0] = T(1);
    for (std::size_t n = 1; n <= deg; ++n) {
        T acc(0);
        for (std::size_t j = 0; j < n; ++j) acc = acc + f[j] * s[n - j - 1];
        f[n] = T(0) - acc / T(static_cast<long>(n));
    }
    return f;
}

}  // namespace weillab::poly
