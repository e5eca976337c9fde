#pragma once

#include <array>
#include <complex>
#include <vector>

#include "minsurf/point3.hpp"

namespace minsurf {

using cplx = std::complex<double>;

enum class Piece { FrontRight, FrontLeft };

// Conformal-domain data of the quadrilateral piece: the four singular points
// a,b,c,d on the axes at radius (sqrt3-1)/sqrt2, their reflected partners at
// the reciprocal radius, and the reflection circles of radius sqrt2 centered
// at (+-1+-i)/sqrt2.
struct SchwarzDomain {
    static double inner_radius() { return (std::sqrt(3.0) - 1.0) / std::sqrt(2.0); }
    static double outer_radius() { return 1.0 / inner_radius(); }
    static std::array<cplx, 4> singular_points();  // a, b, c, d
    static std::array<cplx, 4> reflected_points(); // a', b', c', d'
    static cplx circle_center(Piece piece);        // B.1 / B.2 boundary circle
    static double circle_radius() { return std::sqrt(2.0); }
};

// Sampled points of one conformal-domain piece, scale applied.
struct SchwarzPatch {
    Piece piece = Piece::FrontRight;
    int n_r = 0, n_alpha = 0;
    std::vector<Point3> points;
    std::vector<std::pair<double, double>> params; // (r_hat, alpha) per point
    std::vector<int> ray_offsets;                  // CSV/OBJ rows per alpha ray
    double max_isotropy_residual = 0.0;
};

struct KappaScale {
    double edge_integral = 0.0; // z at rho = (sqrt3-1) i / sqrt2, unscaled
    double kappa = 0.0;         // (1/(2 sqrt2)) / (2 |edge_integral|)
};

// Weierstrass integrand triple ((1-w^2) R, i (1+w^2) R, 2 w R) with
// R(w) = -2 / sqrt(1 - 14 w^4 + w^8), principal branch (R(0) = -2).
// Throws singularity_error within 1e-9 of a branch point.
std::array<cplx, 3> weierstrass_integrand(cplx w);

// Contour integration of the scaled rho-plane integrands
//   x = Re I[2(1+rho^2)], y = -Im I[2(1-rho^2)], z = Re I[4 rho]
// over the straight path 0 -> rho with 1/sqrt(1+14 rho^4+rho^8) branch
// tracked; the result is multiplied by kappa.
Point3 schwarz_point(cplx rho_target, double kappa);

// Edge integral and the scale that pins the corner height to 1/(2 sqrt2).
KappaScale compute_kappa();

// Boundary angle theta(alpha) of the printed circle parametrizations
// (FrontRight: cot-alpha equation, FrontLeft: tan-alpha equation).  Always
// satisfies the circle equation round trip to 1e-10.
double boundary_theta(double alpha, Piece piece);

// Radius of the printed boundary circle along the ray alpha.
double r_max(double alpha, Piece piece);

// Polar mesh of one half of the quadrilateral surface.  FrontRight covers
// alpha in [-pi/2, pi/2] of the fundamental domain (corners D, A, B),
// FrontLeft the reflected half (B, C, D).  Rays closer than `margin` to a
// corner ray are dropped; the corner rays themselves are kept and their outer
// node is integrated with the branch-point substitution.
SchwarzPatch schwarz_mesh(Piece piece, int n_r, int n_alpha, double margin);

namespace reference {
// Serial twin of schwarz_mesh (same math, plain loops).
SchwarzPatch schwarz_mesh(Piece piece, int n_r, int n_alpha, double margin);
} // namespace reference

namespace detail {
// Radius of the fundamental-domain boundary arc in the direction alpha.
double domain_radius(double alpha);
// Scale making the corner z-height equal 1/(2 sqrt2); computed once.
double geometric_scale();
// Complex incomplete elliptic integral of the first kind along a straight
// path, F(phi|m) = int_0^phi dt / sqrt(1 - m sin^2 t).
cplx elliptic_f(cplx phi, cplx m);
// Closed-form z/kappa of the rho-plane map, for validation against
// schwarz_point.
cplx z_closed_form(cplx rho);
// Appell F1 double series, valid for |x|,|y| < 1 (validation only).
cplx appell_f1(double a, double b1, double b2, double c, cplx x, cplx y);
// Closed-form x/kappa and y/kappa via Appell F1 (validation only, small rho).
cplx x_closed_form(cplx rho);
cplx y_closed_form(cplx rho);
} // namespace detail

} // namespace minsurf
