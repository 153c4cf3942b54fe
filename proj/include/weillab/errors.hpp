#pragma once

#include <stdexcept>
#include <string>

namespace weillab {

// Base for everything thrown by the library. `input_error` covers bad data
// and resource limits (CLI exit code 2); mathematical check failures are not
// exceptions at all, they are reported as data.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct input_error : error {
    using error::error;
};

struct not_prime_error : input_error {
    explicit not_prime_error(unsigned long p)
        : input_error("not a prime: " + std::to_string(p)) {}
};

struct degree_zero_error : input_error {
    degree_zero_error() : input_error("extension degree must be >= 1") {}
};

struct incompatible_degrees_error : input_error {
    using input_error::input_error;
};

struct budget_exceeded_error : input_error {
    std::string need, budget;
    budget_exceeded_error(std::string need_, std::string budget_, const std::string& what_)
        : input_error(what_), need(std::move(need_)), budget(std::move(budget_)) {}
};

struct non_homogeneous_error : input_error {
    using input_error::input_error;
};

struct insufficient_terms_error : input_error {
    using input_error::input_error;
};

struct non_integral_coefficient_error : error {
    std::size_t index;
    explicit non_integral_coefficient_error(std::size_t i)
        : error("power series coefficient " + std::to_string(i) +
                " is not an integer; count sequence is inconsistent"),
          index(i) {}
};

struct no_rational_fit_error : error {
    using error::error;
};

struct holdout_mismatch_error : error {
    using error::error;
};

struct unclassifiable_root_error : error {
    using error::error;
};

struct non_integer_regroup_error : error {
    using error::error;
};

struct missing_declared_dim_error : input_error {
    using input_error::input_error;
};

struct prime_out_of_range_error : input_error {
    using input_error::input_error;
};

struct negative_coefficient_error : error {
    std::size_t index;
    explicit negative_coefficient_error(std::size_t i)
        : error("negative series coefficient at index " + std::to_string(i)), index(i) {}
};

struct non_positive_input_error : input_error {
    using input_error::input_error;
};

struct degree_mismatch_error : error {
    long found, expected;
    degree_mismatch_error(long f, long e)
        : error("L-polynomial degree " + std::to_string(f) + ", expected " +
                std::to_string(e)),
          found(f), expected(e) {}
};

struct not_pure_polynomial_error : error {
    using error::error;
};

}  // namespace weillab
