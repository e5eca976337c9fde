#include "minsurf/area.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "minsurf/errors.hpp"
#include "minsurf/quadrature.hpp"

namespace minsurf {

double area_gradient_sum(const HeightGrid& g, const DerivativeField& d) {
    const int N = g.order;
    if (d.order != N) throw shape_error("area_gradient_sum: grid/field order mismatch");
    std::vector<double> cell(size_t(N) * N);
#pragma omp parallel for
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            double zx = 0.25 * (d.dx.at(i, j) + d.dx.at(i + 1, j) + d.dx.at(i, j + 1) +
                                d.dx.at(i + 1, j + 1));
            double zy = 0.25 * (d.dy.at(i, j) + d.dy.at(i + 1, j) + d.dy.at(i, j + 1) +
                                d.dy.at(i + 1, j + 1));
            cell[size_t(i) * N + j] = std::sqrt(1.0 + zx * zx + zy * zy) * g.du * g.dv;
        }
    }
    return pairwise_sum(cell);
}

double area_triangulation(const HeightGrid& g) {
    const int N = g.order;
    if (N < 1) throw std::domain_error("area_triangulation: N must be >= 1");
    const double du = g.du, dv = g.dv;
    std::vector<double> cell(size_t(N) * N);
#pragma omp parallel for
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            double a = g.heights.at(i, j) - g.heights.at(i, j - 1);     // v1 z-part
            double b = g.heights.at(i, j) - g.heights.at(i - 1, j);     // v2 z-part
            double c = g.heights.at(i, j) - g.heights.at(i - 1, j - 1); // v3 z-part
            double n1 = std::sqrt(b * b * dv * dv + a * a * du * du + du * du * dv * dv);
            double n2 =
                std::sqrt(b * b * dv * dv + (b - c) * (b - c) * du * du + du * du * dv * dv);
            cell[size_t(i - 1) * N + (j - 1)] = 0.5 * (n1 + n2);
        }
    }
    return pairwise_sum(cell);
}

namespace {

// biquadratic Lagrange basis on offsets {0,1,2} scaled to t in [0,2]
inline void quad_weights(double t, double w[3]) {
    w[0] = 0.5 * (t - 1) * (t - 2);
    w[1] = -t * (t - 2);
    w[2] = 0.5 * t * (t - 1);
}

inline void quad_dweights(double t, double w[3]) {
    w[0] = t - 1.5;
    w[1] = 2.0 - 2.0 * t;
    w[2] = t - 0.5;
}

} // namespace

double area_biquadratic(const HeightGrid& g, double tol) {
    const int N = g.order;
    if (N % 2 != 0) throw std::domain_error("area_biquadratic: N must be even");
    if (!(tol > 0)) throw std::domain_error("area_biquadratic: tol must be positive");
    const int B = N / 2; // blocks per direction
    const double du = g.du, dv = g.dv;
    std::vector<double> block(size_t(B) * B);
    const double block_tol = tol / (double(B) * B);
#pragma omp parallel for
    for (int bi = 0; bi < B; ++bi) {
        for (int bj = 0; bj < B; ++bj) {
            const int i0 = 2 * bi, j0 = 2 * bj;
            double z[3][3];
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b) z[a][b] = g.heights.at(i0 + a, j0 + b);
            // local coordinates s,t in [0,2] across the block
            auto integrand = [&](double s, double t) {
                double ws[3], wt[3], ds[3], dt[3];
                quad_weights(s, ws);
                quad_weights(t, wt);
                quad_dweights(s, ds);
                quad_dweights(t, dt);
                double zx = 0, zy = 0;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) {
                        zx += ds[a] * wt[b] * z[a][b];
                        zy += ws[a] * dt[b] * z[a][b];
                    }
                zx /= du; // d/ds -> d/dx
                zy /= dv;
                return std::sqrt(1.0 + zx * zx + zy * zy);
            };
            double val = integrate2d(integrand, 0.0, 2.0, 0.0, 2.0, block_tol / (du * dv));
            block[size_t(bi) * B + bj] = val * du * dv;
        }
    }
    return pairwise_sum(block);
}

double area_param_numeric(const SurfaceFn& surface, double tol) {
    if (!(tol > 0)) throw std::domain_error("area_param_numeric: tol must be positive");
    auto integrand = [&](double u, double v) {
        double h = 1e-5;
        h = std::min({h, 0.5 * u, 0.5 * (1.0 - u), 0.5 * v, 0.5 * (1.0 - v)});
        if (h <= 0) h = 1e-9;
        Point3 Xu = (1.0 / (2 * h)) * (surface(u + h, v) - surface(u - h, v));
        Point3 Xv = (1.0 / (2 * h)) * (surface(u, v + h) - surface(u, v - h));
        return norm(cross(Xu, Xv));
    };
    return integrate2d(integrand, 0.0, 1.0, 0.0, 1.0, tol);
}

double ruled1_area(double r, double d) {
    if (!(r > 0) || !(d > 0)) throw std::domain_error("ruled1_area: r and d must be positive");
    const double a = d / r;
    const double R = std::sqrt(a * a + 2.0);
    const double S = std::sqrt(a * a + 1.0);
    // smooth form of the published expression: the lone arctangent is taken on
    // the branch that keeps the area continuous across r^4 = 2r^2 d^2 + d^4
    return r * d *
           (R / 3.0 + (3.0 * a * a + 1.0) / 3.0 * std::log((1.0 + R) / S) -
            (a * a * a / 3.0) * std::atan(1.0 / (a * R)));
}

double ruled2_area(double r, double d) {
    if (!(r > 0) || !(d > 0)) throw std::domain_error("ruled2_area: r and d must be positive");
    const double R = std::sqrt(2.0 * r * r + d * d);
    return d * R / 3.0 + d * (3.0 * r * r + d * d) / (6.0 * r) * std::log((r + R) / std::sqrt(r * r + d * d)) +
           (2.0 * r * r / 3.0) * std::log((d + R) / (r * std::sqrt(2.0))) -
           (r * r / 3.0) * std::atan(d / R);
}

AreaReport area_report(const HeightGrid& g, double tol) {
    AreaReport rep;
    rep.order = g.order;
    DerivativeField d = grid_derivatives(g);
    rep.gradient_sum = area_gradient_sum(g, d);
    rep.triangulation = area_triangulation(g);
    if (g.order % 2 == 0) rep.biquadratic = area_biquadratic(g, tol);
    // exact area of the bilinear seed with the same boundary
    rep.analytic_ruled = (g.config == Config::Ruled1) ? ruled2_area(g.r, g.d)
                                                      : ruled1_area(g.d, g.r);
    return rep;
}

namespace reference {

double area_gradient_sum(const HeightGrid& g, const DerivativeField& d) {
    const int N = g.order;
    if (d.order != N) throw shape_error("area_gradient_sum: grid/field order mismatch");
    double s = 0.0;
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j) {
            double zx = 0.25 * (d.dx.at(i, j) + d.dx.at(i + 1, j) + d.dx.at(i, j + 1) +
                                d.dx.at(i + 1, j + 1));
            double zy = 0.25 * (d.dy.at(i, j) + d.dy.at(i + 1, j) + d.dy.at(i, j + 1) +
                                d.dy.at(i + 1, j + 1));
            s += std::sqrt(1.0 + zx * zx + zy * zy) * g.du * g.dv;
        }
    }
    return s;
}

double area_triangulation(const HeightGrid& g) {
    const int N = g.order;
    const double du = g.du, dv = g.dv;
    double s = 0.0;
    for (int i = 1; i <= N; ++i) {
        for (int j = 1; j <= N; ++j) {
            double a = g.heights.at(i, j) - g.heights.at(i, j - 1);
            double b = g.heights.at(i, j) - g.heights.at(i - 1, j);
            double c = g.heights.at(i, j) - g.heights.at(i - 1, j - 1);
            double n1 = std::sqrt(b * b * dv * dv + a * a * du * du + du * du * dv * dv);
            double n2 =
                std::sqrt(b * b * dv * dv + (b - c) * (b - c) * du * du + du * du * dv * dv);
            s += 0.5 * (n1 + n2);
        }
    }
    return s;
}

} // namespace reference

} // namespace minsurf
