#pragma once

#include <vector>

#include "weillab/numbers.hpp"

namespace weillab::modulartau {

// q-expansion of the discriminant cusp form Delta = q prod (1-q^n)^24:
// coefficients tau(1)..tau(N), tau(1) = 1.
struct QExpansion {
    std::vector<Int> coeffs;  // coeffs[n-1] = tau(n)
    std::size_t N() const { return coeffs.size(); }
    const Int& tau(std::size_t n) const { return coeffs.at(n - 1); }
};

// Euler's pentagonal-number expansion of prod (1-q^n), raised to the 24th
// power by repeated squaring of truncated integer series, shifted by q.
QExpansion delta_expansion(std::size_t N);

struct RamanujanReport {
    Int a_p;
    Int four_p11;      // 4 p^11
    bool bound_holds;  // a_p^2 <= 4 p^11, exact integers
    double root_modulus[2];
    double expected_modulus;  // p^{11/2}
    double worst_rel;
};

// Checks a_p^2 <= 4 p^{11} exactly and measures the two roots of
// T^2 - a_p T + p^{11} against p^{11/2}.
RamanujanReport ramanujan_check(unsigned long p, const QExpansion& exp);

}  // namespace weillab::modulartau
