#pragma once

#include <vector>

#include "weillab/cyclotomic.hpp"
#include "weillab/ffield.hpp"
#include "weillab/geometry.hpp"
#include "weillab/numbers.hpp"

namespace weillab::expsum {

using ffield::u32;
using ffield::u64;

// psi(x) = zeta_p^{Tr(x)} with the absolute trace down to F_p.
cyclo::CycInt additive_character(const ffield::FFElem& x);

// S_m = sum over (F_{q^m})^n of zeta^{j * Tr Q(x)}, exact. The polynomial
// rides in a VarietySpec (affine model, one polynomial). psi_multiplier = j
// twists the character for the Galois-orbit checks.
cyclo::CycInt exp_sum(const geometry::VarietySpec& spec, u32 m,
                      const geometry::RunLimits& limits = {}, u32 psi_multiplier = 1);

struct BoundReport {
    double abs_value = 0.0;   // |S| under zeta_p -> exp(2 pi i / p)
    double abs_error = 0.0;   // rigorous enclosure half-width
    double bound = 0.0;       // (d-1)^n q^{n/2}
    bool holds = false;
    bool exact = false;  // decided via S conj(S) in Z
    Int norm;            // S conj(S) when exact
    Int bound_norm;      // (d-1)^{2n} q^n
};

BoundReport abs_bound_check(const cyclo::CycInt& S, u32 d, u32 n, const Int& q,
                            double tol = 1e-9);

struct LFunction {
    u32 zeta_p = 2;
    std::vector<cyclo::CycRat> coeffs;  // polynomial in t, constant term 1
    bool numerator_side = true;         // L appears as Z itself vs 1/Z
    long degree() const { return static_cast<long>(coeffs.size()) - 1; }
};

// Reconstructs the L-polynomial from exact sums: forms Z = exp(sum S_m t^m/m)
// over Q(zeta_p), tries the pure-polynomial and pure-reciprocal readings
// (expected side first, by the parity of n), demands the trailing `holdout`
// coefficients vanish, and checks the degree equals `expected_degree`.
LFunction sheaf_lfunction(const std::vector<cyclo::CycInt>& sums, u32 p,
                          long expected_degree, std::size_t holdout, u32 nvars);

// Composed n-th tensor power: roots become all n-fold products. Exact, via
// Newton power sums over Q(zeta_p).
LFunction tensor_power(const LFunction& one_var, u32 n);

// Every reciprocal root has modulus q^{n/2} within tol (under the fixed
// embedding zeta_p -> exp(2 pi i/p)).
bool purity_check(const LFunction& L, const Int& q, u32 n, double tol = 1e-8,
                  double* worst_rel = nullptr);

// Power series of Z = exp(sum S_m t^m / m) to the given order.
std::vector<cyclo::CycRat> z_series(const std::vector<cyclo::CycInt>& sums,
                                    std::size_t order, u32 p);

}  // namespace weillab::expsum
