#pragma once

#include <functional>
#include <optional>

#include "minsurf/chebyshev.hpp"
#include "minsurf/grid.hpp"
#include "minsurf/point3.hpp"

namespace minsurf {

struct AreaReport {
    double gradient_sum = 0.0;
    double triangulation = 0.0;
    double biquadratic = 0.0;
    std::optional<double> analytic_ruled;
    int order = 0;
};

// Midpoint sum of sqrt(1 + zx^2 + zy^2) du dv over cells, derivative values
// averaged from the four cell corners.
double area_gradient_sum(const HeightGrid& g, const DerivativeField& d);

// Per-cell pair of triangles spanned by v1=(0,dv,dz_y), v2=(du,0,dz_x) and
// v2, v3=(du,dv,dz_diag); area = sum (|v1 x v2| + |v2 x v3|)/2.
double area_triangulation(const HeightGrid& g);

// Piecewise-biquadratic interpolant over 2x2 cell blocks, integrated with
// adaptive Gauss-Legendre quadrature to absolute tolerance tol.  N must be
// even.
double area_biquadratic(const HeightGrid& g, double tol);

using SurfaceFn = std::function<Point3(double, double)>;

// Adaptive quadrature of |Xu x Xv| over the unit parameter square with the
// tangents taken by centered differences of the sampler.
double area_param_numeric(const SurfaceFn& surface, double tol);

// Closed-form areas of the two ruled surfaces through the corner family,
// arctangent branch continued so both are smooth in (r,d).
double ruled1_area(double r, double d);
double ruled2_area(double r, double d);

// Convenience: all three estimators plus the matching analytic ruled area.
AreaReport area_report(const HeightGrid& g, double tol = 1e-9);

namespace reference {
// Straightforward serial accumulations, kept for testing and benchmarks.
double area_gradient_sum(const HeightGrid& g, const DerivativeField& d);
double area_triangulation(const HeightGrid& g);
} // namespace reference

} // namespace minsurf
