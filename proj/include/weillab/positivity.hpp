#pragma once

#include <vector>

#include "weillab/ffield.hpp"
#include "weillab/numbers.hpp"

namespace weillab::positivity {

using ffield::u32;

// Euler factor at a closed point: rational polynomial with constant term 1,
// residue field of size q_x, point of degree deg_x.
struct LocalFactor {
    std::vector<Rat> poly;  // poly[0] == 1
    Int q_x = 2;
    u32 deg_x = 1;
};

// s_n = sum of n-th powers of the inverse roots, exact Newton identities on
// the coefficients; no root finding.
std::vector<Rat> power_sums(const LocalFactor& f, std::size_t T);

// Coefficients of t d/dt log of the 2k-th tensor power of the factor,
// through t^T: deg_x * (s_m)^{2k} at n = deg_x * m, zero elsewhere. Each
// entry is checked nonnegative.
std::vector<Rat> tensor_logderiv_series(const LocalFactor& f, u32 k, std::size_t T);

// The tensor-power local factor itself as a power series:
// exp(sum_m (s_m)^{2k} t^{deg_x m} / m), coefficients checked nonnegative.
std::vector<Rat> tensor_local_factor_series(const LocalFactor& f, u32 k, std::size_t T);

// Coefficientwise dominance of each factor by the product of all factors
// (series with constant term 1 and nonnegative coefficients through T).
bool dominance_check(const std::vector<std::vector<Rat>>& factors, std::size_t T);

// Same, with factor multiplicities: the product is prod factor_i^{mult_i}.
bool dominance_check_weighted(const std::vector<std::pair<std::vector<Rat>, Int>>& factors,
                              std::size_t T);

}  // namespace weillab::positivity
