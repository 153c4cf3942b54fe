#pragma once

#include <vector>

#include "weillab/complexmp.hpp"
#include "weillab/numbers.hpp"

namespace weillab::roots {

using cmpx::CF;

struct RootSet {
    std::vector<CF> roots;
    // Rigorous per-root bound on the distance to the nearest true root,
    // from |f(z)|/|lc| = prod |z - r_i|: min_i |z - r_i| <= (|f(z)|/|lc|)^(1/D).
    // Saturates at zero below double resolution.
    std::vector<double> distance_bound;
    unsigned precision_bits = 0;
};

// Aberth-Ehrlich simultaneous iteration. Deterministic: fixed initial
// configuration on a circle with precomputed phases, fixed iteration and
// stopping schedule. Polynomial must have nonzero leading and length >= 2.
RootSet find_roots(const std::vector<CF>& coeffs, unsigned prec);

RootSet find_roots_int(const std::vector<Int>& coeffs, unsigned prec);
RootSet find_roots_rat(const std::vector<Rat>& coeffs, unsigned prec);

}  // namespace weillab::roots
