#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "weillab/geometry.hpp"
#include "weillab/numbers.hpp"

namespace weillab::zetarec {

using ffield::u32;

// Z(t) = exp(sum_m N_m t^m / m) as an integer power series, a_0 = 1.
struct PowerSeriesZ {
    std::vector<Int> coeffs;  // a_0..a_T
    std::size_t order() const { return coeffs.size() - 1; }
};

struct ZetaFunction {
    std::vector<Int> P;  // numerator, P[0] = 1
    std::vector<Int> Q;  // denominator, Q[0] = 1
    u32 p = 2;
    u32 a = 1;  // q = p^a
    // reconstruction provenance
    std::size_t terms_used = 0;
    std::size_t holdout = 0;

    Int q() const { return int_pow(static_cast<unsigned long>(p), a); }
    std::string to_json_text() const;
    static ZetaFunction from_json_text(const std::string& text);
};

// Exact exponentiation of sum N_m t^m / m, truncated at T. Asserts every
// coefficient is an integer (the Euler-product form forces integrality);
// a fractional coefficient means the count sequence itself is inconsistent.
PowerSeriesZ zeta_series(const geometry::CountSeries& counts, std::size_t T);

// det((a_{i+j+k})_{0 <= i,j <= M}) == 0, decided exactly (fraction-free
// Bareiss elimination over the integers).
bool hankel_zero_test(const std::vector<Int>& seq, std::size_t M, std::size_t k);

// Minimal-degree rational function matching all but the last `holdout`
// series coefficients (extended Euclidean / Pade recursion over exact
// rationals), Fatou-normalized to coprime integer P, Q with P(0) = Q(0) = 1,
// then validated against the held-out coefficients.
ZetaFunction rational_reconstruct(const PowerSeriesZ& series, std::size_t holdout,
                                  u32 p, u32 a);

// N_m recovered from the logarithmic derivative of P/Q via Newton power-sum
// recurrences on the coefficients; no root finding, no floating point.
Int expand_counts(const ZetaFunction& z, u32 m);

// Taylor coefficients a_0..a_T of P/Q, exact.
std::vector<Int> expand_series(const ZetaFunction& z, std::size_t T);

}  // namespace weillab::zetarec
