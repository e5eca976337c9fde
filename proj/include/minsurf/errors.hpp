#pragma once

#include <stdexcept>
#include <string>

namespace minsurf {

// Shape/size mismatches between grids and fields.
struct shape_error : std::invalid_argument {
    explicit shape_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Quadrature non-convergence, singular linear systems, and similar failures.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Newton iterate left the representable range (NaN/Inf heights).
struct divergence_error : numerical_error {
    explicit divergence_error(const std::string& msg) : numerical_error(msg) {}
};

// Contour passes too close to a branch point of the Weierstrass integrand.
struct path_error : numerical_error {
    explicit path_error(const std::string& msg) : numerical_error(msg) {}
};

// Requested angle sits on (or beyond) a branch point of the boundary map.
struct branch_error : std::domain_error {
    explicit branch_error(const std::string& msg) : std::domain_error(msg) {}
};

// Evaluation requested at (or too near) a branch point of the integrand.
struct singularity_error : std::domain_error {
    explicit singularity_error(const std::string& msg) : std::domain_error(msg) {}
};

} // namespace minsurf
