#pragma once

#include <vector>

#include "weillab/numbers.hpp"
#include "weillab/zetarec.hpp"

namespace weillab::weilverify {

using ffield::u32;

struct ClassifiedRoot {
    double re, im;          // alpha, the reciprocal root (eigenvalue)
    double modulus;         // |alpha|
    double distance_bound;  // certified distance to a true root of the factor input
};

struct WeightFactor {
    u32 weight = 0;
    std::vector<Int> poly;  // P_i, constant term 1 (trivial factor = {1})
    std::vector<ClassifiedRoot> roots;
    long betti() const { return static_cast<long>(poly.size()) - 1; }
};

struct WeightSplit {
    u32 n = 0;
    u32 p = 2, a = 1;
    double tolerance = 1e-6;
    unsigned precision_bits = 0;
    std::vector<WeightFactor> factors;  // index = weight, 0..2n

    Int q() const { return int_pow(static_cast<unsigned long>(p), a); }
    std::vector<long> betti_vector() const {
        std::vector<long> b;
        for (const auto& f : factors) b.push_back(f.betti());
        return b;
    }
};

// Splits Q into the even-weight and P into the odd-weight eigenvalue classes
// by certified root moduli, then regroups each class into an integer
// polynomial and re-verifies the products against P and Q exactly. Precision
// escalates 128 -> 256 -> 512 bits before giving up.
WeightSplit weight_split(const zetarec::ZetaFunction& z, u32 n, double tol = 1e-6);

struct FunctionalEqReport {
    long chi = 0;
    int epsilon = 0;  // +1 or -1 when the identity holds, 0 otherwise
    u32 n = 0;
    bool holds = false;
    bool hypothesis_violated = false;  // n*chi odd: not a proper smooth variety
    long N_mult = -1;                  // multiplicity of q^{n/2} in P_n (n even)
    bool epsilon_rule_checked = false;
    bool epsilon_rule_consistent = false;
};

// Exact rational-function identity Z(t) = eps q^{-n chi/2} t^{-chi}
// Z(1/(q^n t)), decided in integer arithmetic for both signs. When n is even
// and a weight split is supplied, cross-checks eps against the parity of the
// multiplicity of q^{n/2} in P_n.
FunctionalEqReport functional_equation_check(const zetarec::ZetaFunction& z, u32 n,
                                             const WeightSplit* split = nullptr);

struct DualityReport {
    bool holds = false;
    double worst_distance = 0.0;  // worst relative pairing distance
    double tolerance = 1e-8;
};

// alpha -> q^n / alpha must map the weight-i eigenvalue multiset onto the
// weight-(2n-i) multiset; greedy minimal-distance matching, each root used
// once.
DualityReport duality_check(const WeightSplit& split, double tol = 1e-8);

struct CiBoundReport {
    Int n1;
    Int projective_pts;
    Int lhs_abs;
    long b = 0;
    Int bound_sq;
    bool holds = false;
};

// |N_1 - #P^n(F_q)| <= b q^{n/2} with b read off the weight-n factor degree;
// compared exactly via squaring.
CiBoundReport ci_bound_check(u32 n, const zetarec::ZetaFunction& z, const WeightSplit& split);

// True iff all reciprocal roots of the local factor have modulus
// q_x^{beta/2} within the relative tolerance.
bool weight_predicate(const std::vector<Rat>& local_factor, const Int& q_x, double beta,
                      double tol = 1e-6, double* worst_rel = nullptr);

}  // namespace weillab::weilverify
