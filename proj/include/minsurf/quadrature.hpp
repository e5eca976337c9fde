#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace minsurf {

struct GaussRule {
    std::vector<double> x; // nodes on [-1,1]
    std::vector<double> w;
};

// n-point Gauss-Legendre rule on [-1,1]; cached per n.
const GaussRule& gauss_legendre(int n);

// Deterministic pairwise summation, independent of how the values were produced.
double pairwise_sum(std::span<const double> v);

// Adaptive 2D quadrature of f over [ax,bx] x [ay,by] to absolute tolerance tol.
// Throws numerical_error when the subdivision limit is reached.
double integrate2d(const std::function<double(double, double)>& f, double ax, double bx,
                   double ay, double by, double tol);

// Adaptive 1D quadrature on [a,b].
double integrate1d(const std::function<double(double)>& f, double a, double b, double tol);

using cplx = std::complex<double>;

// Straight-segment contour integration of k integrands that share one
// square-root factor whose branch is continued along the path.  The branch
// state entering a segment is the value of sqrt(P) at its start point;
// adjacent evaluations are kept within a quarter turn of phase.
class TrackedContour {
  public:
    using PolyFn = std::function<cplx(cplx)>;
    using NumFn = std::function<void(cplx, std::span<cplx>)>; // fills k numerator values

    TrackedContour(PolyFn poly, NumFn numerators, int k) :
        poly_(std::move(poly)), num_(std::move(numerators)), k_(k) {}

    // Integrate from z0 to z1; `sqrt_at_start` anchors the branch (pass the
    // value at z0 from a previous leg, or empty to start at the principal
    // branch with positive real part).
    std::vector<cplx> integrate(cplx z0, cplx z1, double abs_tol);

    // Same, but with the substitution z = z1 - (z1-z0)(1-t)^2 that removes an
    // inverse-square-root singularity of 1/sqrt(P) at the endpoint z1.
    std::vector<cplx> integrate_to_branch_point(cplx z0, cplx z1, double abs_tol);

    cplx sqrt_state() const { return s_; }
    void seed(cplx z0); // set branch anchor at z0 (principal, Re >= 0)
    double max_aux_residual = 0.0; // hook: numerators may report a residual via set_aux
    void report_aux(double r) { if (r > max_aux_residual) max_aux_residual = r; }

  private:
    cplx tracked_sqrt(cplx z);
    void segment(cplx a, cplx b, double tol, int depth, std::vector<cplx>& acc);

    PolyFn poly_;
    NumFn num_;
    int k_;
    cplx s_{1.0, 0.0};
    bool seeded_ = false;
};

} // namespace minsurf
