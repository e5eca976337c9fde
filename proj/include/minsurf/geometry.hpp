#pragma once

#include <functional>

#include "minsurf/grid.hpp"
#include "minsurf/point3.hpp"

namespace minsurf {

// Skew quadrilateral boundary: four corners of the bilinear patch plus the
// configuration tag and scale parameters.
struct QuadBoundary {
    Config config = Config::Ruled2;
    double r = 1.0, d = 1.0;
    Point3 x00, x10, x01, x11;

    GraphFrame frame() const;
};

QuadBoundary make_quad(Config config, double r, double d);

// Hyperbolic-paraboloid interpolation of the four corners.
Point3 bilinear_eval(const QuadBoundary& q, double u, double v);

// Heights of the bilinear seed sampled on a uniform (N+1)x(N+1) grid in the
// graph frame; the boundary ring lies exactly on the four straight edges.
HeightGrid bilinear_height_grid(const QuadBoundary& q, int N);

// Closed-form mean curvature of the bilinear seed at patch parameters (u,v).
double bilinear_mean_curvature(const QuadBoundary& q, double u, double v);

// Height function over the unit parameter square together with the physical
// extents of the base rectangle it is a graph over.
struct HeightField {
    std::function<double(double, double)> f; // f(u,v), u,v in [0,1]
    double extent_x = 1.0;
    double extent_y = 1.0;
};

// Finite-difference mean curvature of the graph (u*Lx, v*Ly, f(u,v)) from
// centered O(h^2) first and second fundamental forms.  The evaluation stencil
// must stay inside [0,1]^2.
double mean_curvature_numeric(const HeightField& s, double u, double v, double h = 1e-3);

} // namespace minsurf
