// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "minsurf/area.hpp"
#include "minsurf/chebyshev.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/quadrature.hpp"
#include "minsurf/schwarz.hpp"
#include "minsurf/solver.hpp"

using namespace minsurf;

namespace {

int failures = 0;
std::vector<std::string> notes;

void subcheck(bool ok, const char* fmt, ...) {
    if (ok) return;
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    notes.push_back(buf);
}

void criterion(int id, const char* title, const std::function<void()>& body) {
    notes.clear();
    bool threw = false;
    std::string what;
    try {
        body();
    } catch (const std::exception& e) {
        threw = true;
        what = e.what();
    }
    bool pass = notes.empty() && !threw;
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", id, title);
    if (threw) std::printf("       exception: %s\n", what.c_str());
    for (const auto& n : notes) std::printf("       %s\n", n.c_str());
    if (!pass) ++failures;
}

const double kPairs[7][2] = {{1, 1}, {2, 1}, {1, 2}, {3, 1}, {1, 3}, {3, 2}, {2, 3}};
const double kNumerical[7] = {1.2793, 2.3665, 3.1753, 3.4916, 5.9310, 7.2582, 8.5226};
const double kRuled2[7] = {1.280789275, 2.366974371, 3.180414498, 3.491711893,
                           5.936348433, 7.259880701, 8.527786411};
const double kRuled1[7] = {1.280789275, 1.861564196, 4.316148066, 2.595828045,
                           9.325179471, 6.208799631, 10.22064879};

SurfaceFn bilinear_surface(const QuadBoundary& q) {
    return [q](double u, double v) { return bilinear_eval(q, u, v); };
}

SurfaceFn diagonal_surface(const QuadBoundary& q) {
    return [q](double u, double v) {
        return (1 - v) * ((1 - u) * q.x00 + u * q.x11) + v * ((1 - u) * q.x10 + u * q.x01);
    };
}

} // namespace

int main() {
    criterion(1, "closed-form ruled areas reproduce the 14 table entries to 1e-6", [] {
        for (int k = 0; k < 7; ++k) {
            double r = kPairs[k][0], d = kPairs[k][1];
            double v2 = ruled2_area(r, d), v1 = ruled1_area(r, d);
            subcheck(std::fabs(v2 - kRuled2[k]) <= 1e-6,
                     "ruled2(%g,%g) = %.9f, table %.9f (|diff| = %.2e)", r, d, v2, kRuled2[k],
                     std::fabs(v2 - kRuled2[k]));
            if (std::fabs(v1 - kRuled1[k]) > 1e-6) {
                // cross-check the computed value against direct quadrature of
                // the defining surface before reporting
                QuadBoundary q = make_quad(Config::Ruled1, r, d);
                double oracle = area_param_numeric(diagonal_surface(q), 1e-8);
                subcheck(false,
                         "ruled1(%g,%g) = %.9f, table %.9f (|diff| = %.2e); "
                         "independent quadrature gives %.9f, table value is off by pi*d^4/(6r^2) "
                         "= %.9f",
                         r, d, v1, kRuled1[k], std::fabs(v1 - kRuled1[k]), oracle,
                         M_PI * d * d * d * d / (6 * r * r));
            }
        }
    });

    criterion(2, "area estimator calibration on the bilinear unit boundary", [] {
        QuadBoundary q = make_quad(Config::Ruled2, 1, 1);
        HeightGrid g30 = bilinear_height_grid(q, 30); // 31x31 points
        DerivativeField d30 = grid_derivatives(g30);
        double gs = area_gradient_sum(g30, d30);
        if (std::fabs(gs - 1.2717) > 5e-4) {
            // the reference value is reproduced exactly by summing the same
            // derivative twice, sqrt(1 + 2 zx^2); show that alongside
            double dup = 0.0;
            for (int i = 0; i < 30; ++i)
                for (int j = 0; j < 30; ++j) {
                    double zx = d30.dx.at(i, j);
                    dup += std::sqrt(1.0 + 2.0 * zx * zx) / 900.0;
                }
            subcheck(false,
                     "gradient sum = %.6f vs reference 1.2717 +- 5e-4; no consistent "
                     "summation of the correct integrand reaches it, while the "
                     "duplicated-derivative sum gives %.7f",
                     gs, dup);
        }
        double tri = area_triangulation(g30);
        subcheck(std::fabs(tri - 1.281277) <= 1e-5, "triangulation(31x31) = %.9f vs 1.281277",
                 tri);
        double biq = area_biquadratic(g30, 1e-9);
        subcheck(std::fabs(biq - 1.280789195) <= 1e-6, "biquadratic(31x31) = %.9f vs 1.280789195",
                 biq);
        double tri41 = area_triangulation(bilinear_height_grid(q, 40)); // 41x41 points
        subcheck(std::fabs(tri41 - 1.2811) <= 1e-4, "triangulation(41x41) = %.6f vs 1.2811",
                 tri41);
        double tri21 = area_triangulation(bilinear_height_grid(q, 20)); // 21x21 points
        subcheck(std::fabs(tri21 - 1.2819) <= 1e-4, "triangulation(21x21) = %.6f vs 1.2819",
                 tri21);
    });

    criterion(3, "solver reproduces the numerical table column at N=40", [] {
        for (int k = 0; k < 7; ++k) {
            double r = kPairs[k][0], d = kPairs[k][1];
            QuadBoundary q = make_quad(Config::Ruled1, r, d);
            SolverConfig cfg;
            auto [grid, rep] = solve(q, 40, cfg);
            subcheck(rep.status == SolveStatus::Converged, "(%g,%g): solver did not converge", r,
                     d);
            if (rep.status != SolveStatus::Converged) continue;
            double area = area_biquadratic(grid, 1e-9);
            if (std::fabs(area - kNumerical[k]) > 2e-3) {
                // cross-check with the independent second-order pipeline: if
                // both converge to the same lower area, the reference value
                // was not fully minimized
                SolverConfig fd = cfg;
                fd.deriv_mode = DerivMode::FiniteDifference;
                auto [gfd, rfd] = solve(q, 40, fd);
                double area_fd = area_biquadratic(gfd, 1e-9);
                subcheck(false,
                         "(%g,%g): area %.6f vs %.4f (|diff| = %.2e); independent "
                         "finite-difference solve gives %.6f and the seed area is %.6f",
                         r, d, area, kNumerical[k], std::fabs(area - kNumerical[k]), area_fd,
                         ruled2_area(r, d));
            }
            subcheck(area <= ruled2_area(r, d), "(%g,%g): area %.6f above the analytic %.9f", r,
                     d, area, ruled2_area(r, d));
        }
    });

    criterion(4, "Schwarz constants: edge integral 0.47196 and kappa 0.37456", [] {
        KappaScale k = compute_kappa();
        subcheck(std::fabs(std::fabs(k.edge_integral) - 0.47196) <= 1e-5,
                 "|edge integral| = %.7f", std::fabs(k.edge_integral));
        subcheck(std::fabs(k.kappa - 0.37456) <= 1e-5, "kappa = %.7f", k.kappa);
    });

    criterion(5, "Schwarz geometry: z extent and boundary nodes on the quadrilateral", [] {
        const double cz = 1.0 / (2.0 * std::sqrt(2.0));
        SchwarzPatch right = schwarz_mesh(Piece::FrontRight, 32, 32, 0.02);
        SchwarzPatch left = schwarz_mesh(Piece::FrontLeft, 32, 32, 0.02);
        double zmin = 0, zmax = 0;
        for (const auto* p : {&right, &left})
            for (const Point3& pt : p->points) {
                zmin = std::min(zmin, pt.z);
                zmax = std::max(zmax, pt.z);
            }
        subcheck(std::fabs(zmin + cz) <= 2e-3, "z min = %.6f vs %.6f", zmin, -cz);
        subcheck(std::fabs(zmax - cz) <= 2e-3, "z max = %.6f vs %.6f", zmax, cz);

        const Point3 A{0.5, 0, cz}, B{0, -0.5, -cz}, C{-0.5, 0, cz}, D{0, 0.5, -cz};
        auto seg = [](Point3 p, Point3 a, Point3 b) {
            Point3 dd = b - a;
            double t = std::min(1.0, std::max(0.0, dot(p - a, dd) / dot(dd, dd)));
            return norm(p - (a + t * dd));
        };
        double worst = 0.0;
        for (const auto* p : {&right, &left}) {
            for (int ray = 0; ray < p->n_alpha; ++ray) {
                Point3 pt = p->points[size_t(ray) * p->n_r + (p->n_r - 1)];
                double dmin = std::min(std::min(seg(pt, A, B), seg(pt, B, C)),
                                       std::min(seg(pt, C, D), seg(pt, D, A)));
                worst = std::max(worst, dmin);
            }
        }
        subcheck(worst <= 2e-3, "worst boundary-node distance to an edge = %.2e", worst);
    });

    criterion(6, "property suites", [] {
        // Chebyshev discrete orthogonality
        for (int m : {8, 13}) {
            auto nodes = cheb_zeros(m);
            for (int i = 0; i < m; ++i)
                for (int j = i; j < m; ++j) {
                    double s = 0.0;
                    for (double x : nodes) s += cheb_eval(i, x) * cheb_eval(j, x);
                    double expect = (i != j) ? 0.0 : (i == 0 ? m : m / 2.0);
                    subcheck(std::fabs(s - expect) <= 1e-10 * m,
                             "orthogonality (%d,%d) m=%d off by %.2e", i, j, m,
                             std::fabs(s - expect));
                }
        }
        // degree-<=N exactness at scattered points
        {
            auto poly = [](double x) { return ((0.3 * x - 0.2) * x + 1.7) * x * x - x + 0.4; };
            std::vector<double> vals;
            for (double x : cheb_zeros(13)) vals.push_back(poly(x));
            ChebSeries c = cheb_fit(vals);
            for (int t = 0; t <= 100; ++t) {
                double x = -1.0 + 0.02 * t;
                subcheck(std::fabs(cheb_interp(c, x) - poly(x)) <= 1e-10,
                         "fit+interp off at x=%.2f", x);
            }
        }
        // derivative-vs-finite-difference convergence order >= 1.8
        {
            auto f = [](double x, double y) { return std::exp(x - 0.3 * y) + std::sin(2 * x * y); };
            auto err_at = [&](int N) {
                HeightGrid g;
                g.order = N;
                g.du = g.dv = 1.0 / N;
                g.frame.extent_x = g.frame.extent_y = 1.0;
                g.heights = Grid2(N + 1, N + 1);
                for (int i = 0; i <= N; ++i)
                    for (int j = 0; j <= N; ++j) g.heights.at(i, j) = f(i * g.du, j * g.dv);
                auto d = grid_derivatives(g);
                double worst = 0.0;
                for (int i = 1; i < N; ++i)
                    for (int j = 1; j < N; ++j) {
                        double fd = (g.heights.at(i + 1, j) - g.heights.at(i - 1, j)) / (2 * g.du);
                        worst = std::max(worst, std::fabs(fd - d.dx.at(i, j)));
                    }
                return worst;
            };
            double order = std::log2(err_at(16) / err_at(32));
            subcheck(order >= 1.8, "derivative convergence order %.2f < 1.8", order);
        }
        // isotropy identity
        for (cplx w : {cplx(0.2, 0.3), cplx(-0.4, 0.1), cplx(0.9, -1.1)}) {
            auto f = weierstrass_integrand(w);
            subcheck(std::abs(f[0] * f[0] + f[1] * f[1] + f[2] * f[2]) <= 1e-10,
                     "isotropy residual at (%g,%g)", w.real(), w.imag());
        }
        // contour path independence
        {
            auto pplus = [](cplx w) {
                cplx w4 = w * w * w * w;
                return 1.0 + 14.0 * w4 + w4 * w4;
            };
            auto nums = [](cplx w, std::span<cplx> out) {
                out[0] = 2.0 * (1.0 + w * w);
                out[1] = 2.0 * (1.0 - w * w);
                out[2] = 4.0 * w;
            };
            cplx target(0.3, 0.2), way = target / 2.0 + cplx(0, 0.1);
            TrackedContour t1(pplus, nums, 3), t2(pplus, nums, 3);
            auto direct = t1.integrate(0.0, target, 1e-11);
            auto a = t2.integrate(0.0, way, 1e-11);
            auto b = t2.integrate(way, target, 1e-11);
            for (int k = 0; k < 3; ++k)
                subcheck(std::abs(direct[k] - (a[k] + b[k])) <= 1e-8,
                         "path dependence in component %d", k);
        }
        // Dirichlet preservation and ruled2 symmetry on a converged grid
        {
            QuadBoundary q = make_quad(Config::Ruled2, 1, 1);
            const int N = 20;
            HeightGrid seed = bilinear_height_grid(q, N);
            auto [g, rep] = solve(q, N, SolverConfig{});
            subcheck(rep.status == SolveStatus::Converged, "solve did not converge");
            for (int k = 0; k <= N; ++k) {
                subcheck(g.heights.at(0, k) == seed.heights.at(0, k) &&
                             g.heights.at(N, k) == seed.heights.at(N, k) &&
                             g.heights.at(k, 0) == seed.heights.at(k, 0) &&
                             g.heights.at(k, N) == seed.heights.at(k, N),
                         "boundary not bitwise preserved at k=%d", k);
            }
            double worst = 0.0;
            for (int i = 0; i <= N; ++i)
                for (int j = 0; j <= N; ++j)
                    worst = std::max(worst, std::fabs(g.heights.at(i, j) +
                                                      g.heights.at(N - i, j) - q.d));
            subcheck(worst <= 1e-6 * q.d, "ruled2 symmetry violated by %.2e", worst);
        }
        // closed-form curvature vs the finite-difference oracle
        {
            for (auto [r, d] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}) {
                for (Config cfg : {Config::Ruled1, Config::Ruled2}) {
                    QuadBoundary q = make_quad(cfg, r, d);
                    GraphFrame fr = q.frame();
                    HeightField hf{[&q](double u, double v) { return bilinear_eval(q, u, v).z; },
                                   fr.extent_x, fr.extent_y};
                    for (double u : {0.2, 0.35, 0.7}) {
                        for (double v : {0.3, 0.65}) {
                            double c = bilinear_mean_curvature(q, u, v);
                            double n = mean_curvature_numeric(hf, u, v, 1e-3);
                            subcheck(std::fabs(n - c) <= 1e-6 * std::max(1e-9, std::fabs(c)),
                                     "curvature oracle mismatch at (%g,%g) cfg=%d", u, v,
                                     int(cfg));
                        }
                    }
                }
            }
        }
    });

    criterion(7, "quadrature oracle confirms both closed forms on all pairs", [] {
        for (int k = 0; k < 7; ++k) {
            double r = kPairs[k][0], d = kPairs[k][1];
            QuadBoundary q = make_quad(Config::Ruled1, r, d);
            double q2 = area_param_numeric(bilinear_surface(q), 1e-8);
            subcheck(std::fabs(q2 - ruled2_area(r, d)) <= 1e-6,
                     "ruled2(%g,%g): quadrature %.9f vs closed form %.9f", r, d, q2,
                     ruled2_area(r, d));
            double q1 = area_param_numeric(diagonal_surface(q), 1e-8);
            subcheck(std::fabs(q1 - ruled1_area(r, d)) <= 1e-6,
                     "ruled1(%g,%g): quadrature %.9f vs closed form %.9f", r, d, q1,
                     ruled1_area(r, d));
        }
    });

    std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
