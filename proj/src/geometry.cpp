#include "minsurf/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace minsurf {

GraphFrame QuadBoundary::frame() const {
    // Both configurations are single-valued height graphs z(x,y); the base
    // rectangle is r x d for ruled1 and r x r for ruled2.
    GraphFrame f;
    f.base_axis_x = "x";
    f.base_axis_y = "y";
    f.height_axis = "z";
    f.extent_x = r;
    f.extent_y = (config == Config::Ruled1) ? d : r;
    return f;
}

QuadBoundary make_quad(Config config, double r, double d) {
    if (!(r > 0.0) || !(d > 0.0)) throw std::domain_error("make_quad: r and d must be positive");
    QuadBoundary q;
    q.config = config;
    q.r = r;
    q.d = d;
    Point3 r1{0, 0, 0}, r2, r3, r4{r, 0, d};
    if (config == Config::Ruled1) {
        r2 = {r, d, 0};
        r3 = {0, d, d};
    } else {
        r2 = {r, r, 0};
        r3 = {0, r, d};
    }
    q.x00 = r1;
    q.x10 = r4;
    q.x01 = r3;
    q.x11 = r2;
    return q;
}

Point3 bilinear_eval(const QuadBoundary& q, double u, double v) {
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0)
        throw std::domain_error("bilinear_eval: parameters outside [0,1]");
    return (1 - u) * (1 - v) * q.x00 + u * (1 - v) * q.x10 + (1 - u) * v * q.x01 +
           u * v * q.x11;
}

HeightGrid bilinear_height_grid(const QuadBoundary& q, int N) {
    if (N < 2) throw std::domain_error("bilinear_height_grid: N must be >= 2");
    GraphFrame fr = q.frame();
    HeightGrid g;
    g.order = N;
    g.frame = fr;
    g.config = q.config;
    g.r = q.r;
    g.d = q.d;
    g.du = fr.extent_x / N;
    g.dv = fr.extent_y / N;
    g.heights = Grid2(N + 1, N + 1);
    // the patch parameters coincide with normalized base coordinates
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            g.heights.at(i, j) = bilinear_eval(q, double(i) / N, double(j) / N).z;
    return g;
}

double bilinear_mean_curvature(const QuadBoundary& q, double u, double v) {
    if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0)
        throw std::domain_error("bilinear_mean_curvature: parameters outside [0,1]");
    const double r = q.r, d = q.d;
    const double a = 1 - 2 * u, b = 1 - 2 * v;
    if (q.config == Config::Ruled1) {
        double w = r * r + r * r * a * a + d * d * b * b;
        return -2.0 * d * r * a * b / (w * std::sqrt(w));
    }
    double w = r * r + d * d * a * a + d * d * b * b;
    return -2.0 * d * d * d * a * b / (r * w * std::sqrt(w));
}

double mean_curvature_numeric(const HeightField& s, double u, double v, double h) {
    if (!(h > 0.0) || h >= 0.5) throw std::domain_error("mean_curvature_numeric: bad step");
    if (u - h < 0.0 || u + h > 1.0 || v - h < 0.0 || v + h > 1.0)
        throw std::domain_error("mean_curvature_numeric: stencil leaves [0,1]^2");
    const double Lx = s.extent_x, Ly = s.extent_y;
    auto f = s.f;
    double f00 = f(u, v);
    double fpu = f(u + h, v), fmu = f(u - h, v);
    double fpv = f(u, v + h), fmv = f(u, v - h);
    double fpp = f(u + h, v + h), fpm = f(u + h, v - h);
    double fmp = f(u - h, v + h), fmm = f(u - h, v - h);

    Point3 Xu{Lx, 0, (fpu - fmu) / (2 * h)};
    Point3 Xv{0, Ly, (fpv - fmv) / (2 * h)};
    Point3 Xuu{0, 0, (fpu - 2 * f00 + fmu) / (h * h)};
    Point3 Xvv{0, 0, (fpv - 2 * f00 + fmv) / (h * h)};
    Point3 Xuv{0, 0, (fpp - fpm - fmp + fmm) / (4 * h * h)};

    double g11 = dot(Xu, Xu), g12 = dot(Xu, Xv), g22 = dot(Xv, Xv);
    Point3 n = cross(Xu, Xv);
    double nn = norm(n);
    // normal branch fixed so the closed forms above come out with their
    // leading minus sign
    n = (-1.0 / nn) * n;
    double h11 = dot(n, Xuu), h12 = dot(n, Xuv), h22 = dot(n, Xvv);
    return (g11 * h22 - 2.0 * g12 * h12 + g22 * h11) / (2.0 * (g11 * g22 - g12 * g12));
}

} // namespace minsurf
