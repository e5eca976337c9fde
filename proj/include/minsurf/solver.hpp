#pragma once

#include <utility>
#include <vector>

#include "minsurf/chebyshev.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/grid.hpp"

namespace minsurf {

// General band matrix with partial-pivoting LU (LAPACK-style storage).
struct BandMatrix {
    int n = 0, kl = 0, ku = 0;
    std::vector<double> ab;   // (2*kl+ku+1) x n, column-major bands
    std::vector<int> piv;
    bool factored = false;

    BandMatrix() = default;
    BandMatrix(int n_, int kl_, int ku_);

    double& at(int i, int j);          // valid for |i-j| within the band
    void factor();                     // throws numerical_error when singular
    void solve(std::vector<double>& rhs) const;
};

// Sparse nine-point Newton system over the interior points, row-major
// interior ordering k = (i-1)*(N-1) + (j-1).
struct NewtonSystem {
    int interior_order = 0; // N-1 unknowns per direction
    BandMatrix C;
    std::vector<double> b;
};

enum class DerivMode { Chebyshev, FiniteDifference };

struct SolverConfig {
    double reduction_factor = 0.5;
    int max_iters = 200;
    double residual_tol = -1.0; // <0: auto 1e-8*(1+max seed |F|)
    double step_tol = 1e-10;
    DerivMode deriv_mode = DerivMode::Chebyshev;
    bool full_newton_endgame = true; // drop damping once max|F| is small
    // optional Jacobi passes applied to dz before the update (newton_step)
    int update_smoothing_passes = 0;
};

enum class SolveStatus { Converged, MaxIters, Diverged };

struct ConvergenceReport {
    int iterations = 0;
    std::vector<double> max_residual; // per accepted iteration
    std::vector<double> max_step;
    SolveStatus status = SolveStatus::MaxIters;
};

// Pointwise F = z_yy (1+z_x^2) - 2 z_x z_y z_xy + z_xx (1+z_y^2).
Grid2 residual_F(const DerivativeField& d);

// Nine-point stencil matrix and right-hand side b = -F over interior points;
// Dirichlet boundary increments are zero, so boundary neighbors drop out.
NewtonSystem assemble_system(const HeightGrid& g, const DerivativeField& d);

struct StepResult {
    double max_residual = 0.0;
    double max_step = 0.0;
};

// One damped Newton update of the interior heights, in place.
StepResult newton_step(HeightGrid& g, const SolverConfig& cfg);

std::pair<HeightGrid, ConvergenceReport> solve(const QuadBoundary& q, int N, SolverConfig cfg);

} // namespace minsurf
