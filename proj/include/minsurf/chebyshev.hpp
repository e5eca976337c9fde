#pragma once

#include <vector>

#include "minsurf/grid.hpp"

namespace minsurf {

enum class Axis { X, Y };

// Chebyshev expansion along one axis: interpolant  z^(x) = sum c_n T_n(x) - c_0/2
// on [-1,1], with the affine map from the physical interval [lo,hi] recorded.
struct ChebSeries {
    int order = 0;                // N, coeffs has N+1 entries
    std::vector<double> coeffs;
    Axis axis = Axis::Y;
    double lo = -1.0, hi = 1.0;
};

// T_n(x) by the three-term recursion; |x|<=1 required.
double cheb_eval(int n, double x);

// Zeros of T_n, x_k = cos(pi (k+1/2)/n), k = 0..n-1 (descending in x).
std::vector<double> cheb_zeros(int n);

// Discrete fit at the zeros of T_{N+1}: c_n = 2/(N+1) sum_m values_m T_n(x_m).
// `values` must be ordered to match cheb_zeros(N+1).
ChebSeries cheb_fit(const std::vector<double>& values, Axis axis = Axis::Y, double lo = -1.0,
                    double hi = 1.0);

// Evaluate the interpolant at x in [-1,1].
double cheb_interp(const ChebSeries& s, double x);

// First or second derivative of the interpolant w.r.t. the [-1,1] coordinate.
double cheb_deriv(const ChebSeries& s, double x, int order);

// First and second derivative of all height data with respect to the physical
// base coordinates, evaluated at every mesh point.
struct DerivativeField {
    int order = 0;
    double du = 0.0, dv = 0.0;
    Grid2 dx, dy, dxx, dyy, dxy;
};

// Two-pass Chebyshev pipeline: resample the uniform grid at Chebyshev zero
// nodes (piecewise cubic), fit along y, evaluate value/derivatives back on the
// uniform y lines, then fit along x and evaluate everything at the mesh
// points.  Chain-rule factors to physical coordinates are applied.
DerivativeField grid_derivatives(const HeightGrid& g);

// Centered second-order finite differences (one-sided at the boundary ring).
DerivativeField finite_difference_derivatives(const HeightGrid& g);

namespace reference {
// Single-threaded reference of the same pipeline, kept for testing and for
// the benchmark target.
DerivativeField grid_derivatives(const HeightGrid& g);
} // namespace reference

// Low-pass a full grid in place: fit each line in the Chebyshev basis and
// drop the coefficients above keep_fraction of the band, both axes.
void lowpass_grid(Grid2& grid, double keep_fraction);

} // namespace minsurf
