#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weillab/ffield.hpp"
#include "weillab/numbers.hpp"

namespace weillab::geometry {

using ffield::u32;
using ffield::u64;

enum class Model { affine, projective };

// One monomial: residue coefficient (reduced mod p at load) and one exponent
// per ambient variable.
struct Term {
    u32 coeff;
    std::vector<u32> exps;
};

struct MPoly {
    std::vector<Term> terms;  // zero polynomial = empty

    bool is_zero() const { return terms.empty(); }
    long total_degree() const;  // -1 for the zero polynomial
    bool homogeneous() const;
};

struct VarietySpec {
    u32 p = 2;
    u32 a = 1;  // base field F_q, q = p^a
    Model model = Model::affine;
    std::vector<std::string> vars;
    std::vector<MPoly> polys;
    std::optional<long> declared_dim;
    std::vector<long> multidegree;

    u32 n_amb() const { return static_cast<u32>(vars.size()); }
    ffield::PrimePower base() const { return ffield::PrimePower(p, a); }

    // Parses the JSON spec format; reduces coefficients mod p once, drops
    // vanished terms, and rejects inhomogeneous systems in projective model.
    static VarietySpec from_json_text(const std::string& text);
    static VarietySpec from_file(const std::string& path);
    std::string to_json_text() const;
};

struct CountSeries {
    u32 p = 2;
    u32 a = 1;
    std::vector<Int> counts;  // counts[m-1] = N_m = #X(F_{q^m})

    const Int& at(u32 m) const { return counts.at(m - 1); }
    u32 max_m() const { return static_cast<u32>(counts.size()); }
};

struct RunLimits {
    u64 budget = 100000000;  // tuples enumerated per operation
    unsigned threads = 1;
};

// Exact N_m by enumeration. Projective counting iterates representatives with
// the first nonzero coordinate normalized to 1. Single-equation specs with a
// separable pivot monomial use a chart decomposition that enumerates each
// coordinate line once and resolves the pivot variable through a power
// histogram; the count is identical and the tuple charge drops from
// sum_i q^{mi} to a small multiple of q^m.
Int count_points(const VarietySpec& spec, u32 m, const RunLimits& limits = {});

// Force one strategy; used by tests to cross-check the two against each other.
Int count_points_generic(const VarietySpec& spec, u32 m, const RunLimits& limits = {});
std::optional<Int> count_points_pivot(const VarietySpec& spec, u32 m,
                                      const RunLimits& limits = {});

CountSeries count_series(const VarietySpec& spec, u32 max_m, const RunLimits& limits = {});

// #P^n(F_{q^m}) = sum_{i=0}^n q^{mi}
Int projective_space_count(u32 n, const ffield::PrimePower& q, u32 m);

struct SmoothnessReport {
    bool singular_point_found = false;
    u32 witness_m = 0;
    std::vector<std::vector<u32>> witness;  // coordinates, coefficient vectors
    std::string note;
};

// Searches F_{q^m}-points of {polys} + all first partials for m <= max_m.
// A witness is definitive; absence is heuristic evidence only (the closure
// cannot be exhausted), which the note records. Projective systems use the
// Jacobi criterion; f itself stays in the system so the verdict is valid
// whether or not the Euler relation applies (p may divide the degree).
SmoothnessReport smoothness_probe(const VarietySpec& spec, u32 max_m,
                                  const RunLimits& limits = {});

}  // namespace weillab::geometry
