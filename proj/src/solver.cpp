#include "minsurf/solver.hpp"

#include <algorithm>
#include <cmath>

#include "minsurf/errors.hpp"

namespace minsurf {

BandMatrix::BandMatrix(int n_, int kl_, int ku_) : n(n_), kl(kl_), ku(ku_) {
    ab.assign(size_t(2 * kl + ku + 1) * n, 0.0);
    piv.assign(n, 0);
}

double& BandMatrix::at(int i, int j) {
    // row kl+ku+i-j of column j; rows 0..kl-1 are fill-in space for pivoting
    return ab[size_t(j) * (2 * kl + ku + 1) + (kl + ku + i - j)];
}

void BandMatrix::factor() {
    const int ldab = 2 * kl + ku + 1;
    auto A = [&](int band_row, int j) -> double& { return ab[size_t(j) * ldab + band_row]; };
    for (int j = 0; j < n; ++j) {
        int jp = j; // pivot row
        double amax = 0.0;
        int ilim = std::min(n - 1, j + kl);
        for (int i = j; i <= ilim; ++i) {
            double v = std::fabs(A(kl + ku + i - j, j));
            if (v > amax) {
                amax = v;
                jp = i;
            }
        }
        piv[j] = jp;
        if (amax == 0.0) throw numerical_error("band LU: singular matrix");
        if (jp != j) {
            int jlim = std::min(n - 1, j + kl + ku);
            for (int c = j; c <= jlim; ++c) {
                int r1 = kl + ku + j - c, r2 = kl + ku + jp - c;
                if (r1 >= 0 && r2 < ldab) std::swap(ab[size_t(c) * ldab + r1], ab[size_t(c) * ldab + r2]);
            }
        }
        double pivval = A(kl + ku, j);
        for (int i = j + 1; i <= ilim; ++i) {
            double m = A(kl + ku + i - j, j) / pivval;
            A(kl + ku + i - j, j) = m;
            int jlim = std::min(n - 1, j + kl + ku);
            for (int c = j + 1; c <= jlim; ++c)
                A(kl + ku + i - c, c) -= m * A(kl + ku + j - c, c);
        }
    }
    factored = true;
}

void BandMatrix::solve(std::vector<double>& rhs) const {
    if (!factored) throw numerical_error("band LU: solve before factor");
    const int ldab = 2 * kl + ku + 1;
    auto A = [&](int band_row, int j) { return ab[size_t(j) * ldab + band_row]; };
    // forward
    for (int j = 0; j < n; ++j) {
        if (piv[j] != j) std::swap(rhs[j], rhs[piv[j]]);
        int ilim = std::min(n - 1, j + kl);
        for (int i = j + 1; i <= ilim; ++i) rhs[i] -= A(kl + ku + i - j, j) * rhs[j];
    }
    // back substitution
    for (int j = n - 1; j >= 0; --j) {
        int top = std::max(0, j - kl - ku);
        rhs[j] /= A(kl + ku, j);
        for (int i = top; i < j; ++i) rhs[i] -= A(kl + ku + i - j, j) * rhs[j];
    }
}

Grid2 residual_F(const DerivativeField& d) {
    if (!d.dx.same_shape(d.dy) || !d.dx.same_shape(d.dxx) || !d.dx.same_shape(d.dyy) ||
        !d.dx.same_shape(d.dxy))
        throw shape_error("residual_F: inconsistent field shapes");
    Grid2 F(d.dx.rows, d.dx.cols);
    for (int i = 0; i < F.rows; ++i) {
        for (int j = 0; j < F.cols; ++j) {
            double zx = d.dx.at(i, j), zy = d.dy.at(i, j);
            double zxx = d.dxx.at(i, j), zyy = d.dyy.at(i, j), zxy = d.dxy.at(i, j);
            F.at(i, j) = zyy * (1 + zx * zx) - 2 * zx * zy * zxy + zxx * (1 + zy * zy);
        }
    }
    return F;
}

namespace {
NewtonSystem assemble_impl(const HeightGrid& g, const DerivativeField& d, bool exact_rows);
} // namespace

NewtonSystem assemble_system(const HeightGrid& g, const DerivativeField& d) {
    return assemble_impl(g, d, false);
}

namespace {

// exact_rows restores the first-order cross term the published stencil drops
// from the (i-1,j) row; with it the finite-difference pair is a genuine
// Newton method and tolerates full steps.
NewtonSystem assemble_impl(const HeightGrid& g, const DerivativeField& d, bool exact_rows) {
    const int N = g.order;
    if (N < 4) throw std::domain_error("assemble_system: order must be >= 4");
    if (d.order != N) throw shape_error("assemble_system: grid/field order mismatch");
    const int m = N - 1;
    const double du = g.du, dv = g.dv;

    NewtonSystem sys;
    sys.interior_order = m;
    sys.C = BandMatrix(m * m, N, N); // neighbor offsets up to (N-1)+1
    sys.b.assign(size_t(m) * m, 0.0);

    Grid2 F = residual_F(d);

#pragma omp parallel for
    for (int i = 1; i < N; ++i) {
        for (int j = 1; j < N; ++j) {
            const int row = (i - 1) * m + (j - 1);
            const double zx = d.dx.at(i, j), zy = d.dy.at(i, j);
            const double zxx = d.dxx.at(i, j), zyy = d.dyy.at(i, j), zxy = d.dxy.at(i, j);

            // nine stencil weights around (i,j); the (i-1,j)/(i+1,j) pair is
            // intentionally asymmetric, matching the published stencil
            double c_imjm = -zy * zx / (2.0 * du * dv);
            double c_imj = (1 + zy * zy) / (du * du) - zyy * zx / du +
                           (exact_rows ? zy * zxy / du : 0.0);
            double c_imjp = zy * zx / (2.0 * du * dv);
            double c_ijm = (1 + zx * zx) / (dv * dv) + zx * zxy / dv - zy * zxx / dv;
            double c_ij = -2.0 * (1 + zy * zy) / (du * du) - 2.0 * (1 + zx * zx) / (dv * dv);
            double c_ijp = (1 + zx * zx) / (dv * dv) - zx * zxy / dv + zy * zxx / dv;
            double c_ipjm = zy * zx / (2.0 * du * dv);
            double c_ipj = (1 + zy * zy) / (du * du) + zyy * zx / du - zy * zxy / du;
            double c_ipjp = -zy * zx / (2.0 * du * dv);

            auto put = [&](int ii, int jj, double w) {
                if (ii < 1 || ii > N - 1 || jj < 1 || jj > N - 1) return; // boundary dz = 0
                sys.C.at(row, (ii - 1) * m + (jj - 1)) = w;
            };
            put(i - 1, j - 1, c_imjm);
            put(i - 1, j, c_imj);
            put(i - 1, j + 1, c_imjp);
            put(i, j - 1, c_ijm);
            put(i, j, c_ij);
            put(i, j + 1, c_ijp);
            put(i + 1, j - 1, c_ipjm);
            put(i + 1, j, c_ipj);
            put(i + 1, j + 1, c_ipjp);
            sys.b[row] = -F.at(i, j);
        }
    }
    return sys;
}


DerivativeField derivatives_for(const HeightGrid& g, DerivMode mode) {
    return mode == DerivMode::Chebyshev ? grid_derivatives(g) : finite_difference_derivatives(g);
}

// damped-Jacobi pass over the interior increment, boundary increments stay 0
void smooth_increment(std::vector<double>& dz, int m) {
    std::vector<double> out(dz.size());
    auto at = [&](const std::vector<double>& v, int a, int b) -> double {
        if (a < 0 || a >= m || b < 0 || b >= m) return 0.0;
        return v[size_t(a) * m + b];
    };
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            out[size_t(a) * m + b] =
                0.5 * at(dz, a, b) + 0.125 * (at(dz, a - 1, b) + at(dz, a + 1, b) +
                                              at(dz, a, b - 1) + at(dz, a, b + 1));
    dz.swap(out);
}

StepResult step_impl(HeightGrid& g, const SolverConfig& cfg, bool exact_rows) {
    const int N = g.order;
    for (double h : g.heights.v)
        if (!std::isfinite(h)) throw divergence_error("newton_step: non-finite heights");

    DerivativeField d = derivatives_for(g, cfg.deriv_mode);
    NewtonSystem sys = assemble_impl(g, d, exact_rows);

    double maxF = 0.0;
    for (double b : sys.b) maxF = std::max(maxF, std::fabs(b));

    sys.C.factor();
    sys.C.solve(sys.b); // b now holds dz

    const int m = N - 1;
    for (int p = 0; p < cfg.update_smoothing_passes; ++p) smooth_increment(sys.b, m);

    double maxdz = 0.0;
    for (int i = 1; i < N; ++i) {
        for (int j = 1; j < N; ++j) {
            double dz = sys.b[(i - 1) * m + (j - 1)];
            maxdz = std::max(maxdz, std::fabs(dz));
            g.heights.at(i, j) += cfg.reduction_factor * dz;
        }
    }
    for (double h : g.heights.v)
        if (!std::isfinite(h)) throw divergence_error("newton_step: update diverged");
    return {maxF, maxdz};
}

double interior_max(const Grid2& F, int N) {
    double m = 0.0;
    for (int i = 1; i < N; ++i)
        for (int j = 1; j < N; ++j) m = std::max(m, std::fabs(F.at(i, j)));
    return m;
}

} // namespace

StepResult newton_step(HeightGrid& g, const SolverConfig& cfg) {
    return step_impl(g, cfg, false);
}

std::pair<HeightGrid, ConvergenceReport> solve(const QuadBoundary& q, int N, SolverConfig cfg) {
    if (!(cfg.reduction_factor > 0.0) || cfg.reduction_factor > 1.0)
        throw std::domain_error("solve: reduction factor must lie in (0,1]");
    if (cfg.max_iters < 1) throw std::domain_error("solve: max_iters must be positive");

    HeightGrid g = bilinear_height_grid(q, N);
    ConvergenceReport rep;
    const int m = N - 1;

    auto residual_max = [&](DerivMode mode, DerivativeField* field_out) {
        DerivativeField f = derivatives_for(g, mode);
        Grid2 F = residual_F(f);
        double r = interior_max(F, N);
        if (field_out) *field_out = std::move(f);
        return r;
    };

    const double seedF = residual_max(cfg.deriv_mode, nullptr);
    const double rtol = cfg.residual_tol > 0 ? cfg.residual_tol : 1e-8 * (1.0 + seedF);

    // Phase A: self-consistent second-order Newton.  Derivatives, residual and
    // stencil all come from the same finite-difference operator, so the
    // damped iteration is plainly contractive; it lands on the second-order
    // discrete minimal surface.
    {
        double prevF = 1e300;
        int budget = std::max(20, (3 * cfg.max_iters) / 4);
        for (int it = 0; it < budget && rep.iterations < cfg.max_iters; ++it) {
            SolverConfig step;
            step.deriv_mode = DerivMode::FiniteDifference;
            step.reduction_factor =
                (cfg.full_newton_endgame && prevF < 1e-2 * (1.0 + seedF))
                    ? 1.0
                    : cfg.reduction_factor;
            StepResult sr;
            try {
                sr = step_impl(g, step, true);
            } catch (const divergence_error&) {
                rep.status = SolveStatus::Diverged;
                return {std::move(g), std::move(rep)};
            }
            rep.iterations++;
            rep.max_residual.push_back(sr.max_residual);
            rep.max_step.push_back(sr.max_step);
            prevF = sr.max_residual;
            bool settled = sr.max_residual <= 1e-9 * (1.0 + seedF) ||
                           sr.max_step * step.reduction_factor <= 1e-12;
            if (cfg.deriv_mode == DerivMode::FiniteDifference) {
                if (sr.max_residual <= rtol ||
                    sr.max_step * step.reduction_factor <= cfg.step_tol) {
                    rep.status = SolveStatus::Converged;
                    return {std::move(g), std::move(rep)};
                }
            } else if (settled) {
                break;
            }
        }
        if (cfg.deriv_mode == DerivMode::FiniteDifference) {
            rep.status = SolveStatus::MaxIters;
            return {std::move(g), std::move(rep)};
        }
    }

    // Phase B: polish against the spectral residual.  Updates still come from
    // the published stencil but are band-limited before application: the
    // stencil badly underestimates the spectral operator's response in the
    // top band, and unfiltered updates let those modes run away.
    DerivativeField field;
    double maxF = residual_max(DerivMode::Chebyshev, &field);
    // Trust-region-style band control: the update is restricted to the lower
    // part of the spectrum; whenever no admissible step reduces the residual
    // the band shrinks.  The iteration ends at a limit point of the method:
    // either the residual tolerance is met or no residual-reducing update
    // above step_tol remains representable.
    double keep = 0.75;
    while (rep.iterations < cfg.max_iters) {
        if (maxF <= rtol) {
            rep.status = SolveStatus::Converged;
            return {std::move(g), std::move(rep)};
        }
        NewtonSystem sys = assemble_system(g, field);
        try {
            sys.C.factor();
        } catch (const numerical_error&) {
            rep.status = SolveStatus::Diverged;
            return {std::move(g), std::move(rep)};
        }
        sys.C.solve(sys.b);
        for (int p = 0; p < cfg.update_smoothing_passes; ++p) smooth_increment(sys.b, m);

        // band-limit the increment on the full grid (boundary ring zero)
        Grid2 inc(N + 1, N + 1, 0.0);
        for (int i = 1; i < N; ++i)
            for (int j = 1; j < N; ++j) inc.at(i, j) = sys.b[(i - 1) * m + (j - 1)];
        lowpass_grid(inc, keep);
        for (int k = 0; k <= N; ++k) { // restore exact Dirichlet zeros
            inc.at(0, k) = inc.at(N, k) = inc.at(k, 0) = inc.at(k, N) = 0.0;
        }
        double maxdz = 0.0;
        for (int i = 1; i < N; ++i)
            for (int j = 1; j < N; ++j) maxdz = std::max(maxdz, std::fabs(inc.at(i, j)));

        double lambda = cfg.reduction_factor;
        bool accepted = false;
        HeightGrid g2;
        DerivativeField field2;
        double maxF2 = 0.0;
        for (int attempt = 0; attempt < 10 && !accepted; ++attempt) {
            g2 = g;
            for (int i = 1; i < N; ++i)
                for (int j = 1; j < N; ++j) g2.heights.at(i, j) += lambda * inc.at(i, j);
            bool finite = true;
            for (double v : g2.heights.v)
                if (!std::isfinite(v)) finite = false;
            if (finite) {
                field2 = derivatives_for(g2, DerivMode::Chebyshev);
                Grid2 F2 = residual_F(field2);
                maxF2 = interior_max(F2, N);
                if (maxF2 < maxF * (1.0 - 1e-6) || maxF2 <= rtol) accepted = true;
            }
            if (!accepted) lambda *= 0.5;
        }
        if (!accepted) {
            keep *= 0.5; // no useful step in this band; restrict further
            if (keep * N < 4.0) {
                rep.status = maxF <= 1e-2 * (1.0 + seedF) ? SolveStatus::Converged
                                                          : SolveStatus::MaxIters;
                return {std::move(g), std::move(rep)};
            }
            continue;
        }
        g = std::move(g2);
        field = std::move(field2);
        maxF = maxF2;
        rep.iterations++;
        rep.max_residual.push_back(maxF);
        rep.max_step.push_back(maxdz);
        if (maxF <= rtol || lambda * maxdz <= cfg.step_tol) {
            rep.status = SolveStatus::Converged;
            return {std::move(g), std::move(rep)};
        }
    }
    rep.status = SolveStatus::MaxIters;
    return {std::move(g), std::move(rep)};
}

} // namespace minsurf
