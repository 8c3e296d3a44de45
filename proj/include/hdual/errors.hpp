#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hdual {

// Leading coefficient too small to invert or raise to a fractional power.
struct singular_leading_coefficient : std::domain_error {
    using std::domain_error::domain_error;
};

// Fractional power of a real value with negative leading coefficient.
struct negative_base_fractional_power : std::domain_error {
    using std::domain_error::domain_error;
};

struct index_out_of_range : std::out_of_range {
    using std::out_of_range::out_of_range;
};

struct dimension_too_small : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct degree_too_large : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct nonpositive_width : std::domain_error {
    using std::domain_error::domain_error;
};

struct singular_denominator : std::domain_error {
    using std::domain_error::domain_error;
};

// Real branch of a square root crossed zero, e.g. 1 + 4*tau*a <= 0.
struct branch_violation : std::domain_error {
    using std::domain_error::domain_error;
};

struct unsupported_order : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct max_depth_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Evaluation left the domain of an elementary function (ln of a
// non-positive real and friends).
struct eval_domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

struct non_differentiable_point : std::domain_error {
    using std::domain_error::domain_error;
};

struct syntax_error : std::runtime_error {
    std::size_t offset;

    syntax_error(const std::string& what, std::size_t off)
        : std::runtime_error(what + " (at offset " + std::to_string(off) + ")"), offset(off) {}
};

struct unknown_identifier : std::runtime_error {
    std::size_t offset;

    unknown_identifier(const std::string& name, std::size_t off)
        : std::runtime_error("unknown identifier '" + name + "' (at offset " + std::to_string(off) + ")"),
          offset(off) {}
};

} // namespace hdual
