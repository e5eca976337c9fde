#include "minsurf/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace minsurf {

double cheb_eval(int n, double x) {
    if (n < 0) throw std::domain_error("cheb_eval: negative degree");
    if (x < -1.0 || x > 1.0) throw std::domain_error("cheb_eval: x outside [-1,1]");
    if (n == 0) return 1.0;
    double tm = 1.0, t = x;
    for (int k = 1; k < n; ++k) {
        double tn = 2.0 * x * t - tm;
        tm = t;
        t = tn;
    }
    return t;
}

std::vector<double> cheb_zeros(int n) {
    if (n < 1) throw std::domain_error("cheb_zeros: n must be >= 1");
    std::vector<double> z(n);
    for (int k = 0; k < n; ++k) z[k] = std::cos(M_PI * (k + 0.5) / n);
    return z;
}

ChebSeries cheb_fit(const std::vector<double>& values, Axis axis, double lo, double hi) {
    if (values.empty()) throw shape_error("cheb_fit: empty sample vector");
    int m = int(values.size()); // m = N+1 samples at zeros of T_m
    ChebSeries s;
    s.order = m - 1;
    s.axis = axis;
    s.lo = lo;
    s.hi = hi;
    s.coeffs.assign(m, 0.0);
    std::vector<double> nodes = cheb_zeros(m);
    // running T_{n}(node_k) by the three-term recursion
    std::vector<double> tprev(m, 1.0), tcur(nodes);
    for (int n = 0; n < m; ++n) {
        double acc = 0.0;
        if (n == 0) {
            for (int k = 0; k < m; ++k) acc += values[k];
        } else {
            for (int k = 0; k < m; ++k) acc += values[k] * tcur[k];
            if (n < m - 1) {
                for (int k = 0; k < m; ++k) {
                    double tn = 2.0 * nodes[k] * tcur[k] - tprev[k];
                    tprev[k] = tcur[k];
                    tcur[k] = tn;
                }
            }
        }
        s.coeffs[n] = 2.0 * acc / m;
    }
    return s;
}

namespace {

// T_n, T'_n, T''_n at one point, endpoint limits included.
struct TnDerivs {
    double t, d1, d2;
};

TnDerivs tn_derivs(int n, double x) {
    if (n == 0) return {1.0, 0.0, 0.0};
    double one_m_x2 = 1.0 - x * x;
    if (one_m_x2 < 1e-12) {
        double sgn = (x > 0) ? 1.0 : ((n % 2 == 0) ? 1.0 : -1.0); // T_n(+-1)
        double s1 = (x > 0) ? 1.0 : ((n % 2 == 0) ? -1.0 : 1.0);  // T'_n sign at -1: (-1)^{n+1}
        double nn = double(n) * n;
        return {sgn, s1 * nn, sgn * nn * (nn - 1.0) / 3.0};
    }
    // T via recursion, U via recursion; T' = n U_{n-1}, T'' = (x T' - n^2 T)/(1-x^2)
    double tm = 1.0, t = x;
    double um = 1.0, u = 2.0 * x; // U_0, U_1
    for (int k = 1; k < n; ++k) {
        double tn = 2.0 * x * t - tm;
        tm = t;
        t = tn;
        double un = 2.0 * x * u - um;
        um = u;
        u = un;
    }
    double tval = (n == 1) ? x : t;
    double d1 = n * um; // U_{n-1}
    if (n == 1) d1 = 1.0;
    double d2 = (x * d1 - double(n) * n * tval) / one_m_x2;
    return {tval, d1, d2};
}

} // namespace

double cheb_interp(const ChebSeries& s, double x) {
    if (x < -1.0 || x > 1.0) throw std::domain_error("cheb_interp: x outside [-1,1]");
    // Clenshaw
    double b1 = 0.0, b2 = 0.0;
    for (int n = s.order; n >= 1; --n) {
        double b0 = 2.0 * x * b1 - b2 + s.coeffs[n];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + 0.5 * s.coeffs[0];
}

double cheb_deriv(const ChebSeries& s, double x, int order) {
    if (order != 1 && order != 2) throw std::domain_error("cheb_deriv: order must be 1 or 2");
    if (x < -1.0 || x > 1.0) throw std::domain_error("cheb_deriv: x outside [-1,1]");
    double acc = 0.0;
    for (int n = 1; n <= s.order; ++n) {
        TnDerivs d = tn_derivs(n, x);
        acc += s.coeffs[n] * (order == 1 ? d.d1 : d.d2);
    }
    return acc;
}

namespace {

// Local 8-point Lagrange interpolation of uniformly spaced samples at
// continuous index position s in [0, n-1].  An order-4 stencil leaves a
// derivative-field floor near 1e-4 that stalls the Newton iteration well
// above its stopping tolerance; order 8 puts the floor near 1e-9.
double resample_at(const double* f, int n, double s) {
    const int P = std::min(8, n);
    if (P < 2) throw shape_error("resample_at: need at least 2 samples");
    int i0 = int(std::floor(s)) - (P / 2 - 1);
    if (i0 < 0) i0 = 0;
    if (i0 > n - P) i0 = n - P;
    double acc = 0.0;
    for (int a = 0; a < P; ++a) {
        double w = 1.0;
        for (int b = 0; b < P; ++b) {
            if (a == b) continue;
            w *= (s - (i0 + b)) / double(a - b);
        }
        acc += w * f[i0 + a];
    }
    return acc;
}

struct Pass1 {
    // per Chebyshev x-node l and uniform j: value, d/dY, d2/dY2
    Grid2 zhat, zhat_y, zhat_yy;
};

template <bool Parallel>
DerivativeField cheb_pipeline(const HeightGrid& g) {
    const int N = g.order;
    if (N < 4) throw std::domain_error("grid_derivatives: order must be >= 4");
    const int P = N + 1;
    std::vector<double> nodes = cheb_zeros(P); // shared by both axes

    // resample heights at Chebyshev nodes in both directions
    Grid2 tmp(P, P);  // uniform i x node m
    Grid2 znode(P, P); // node l x node m
#pragma omp parallel for if (Parallel)
    for (int i = 0; i < P; ++i) {
        const double* row = &g.heights.v[size_t(i) * P];
        for (int m = 0; m < P; ++m) {
            double s = 0.5 * (nodes[m] + 1.0) * N; // continuous index along y
            tmp.at(i, m) = resample_at(row, P, s);
        }
    }
#pragma omp parallel for if (Parallel)
    for (int m = 0; m < P; ++m) {
        std::vector<double> col(P);
        for (int i = 0; i < P; ++i) col[i] = tmp.at(i, m);
        for (int l = 0; l < P; ++l) {
            double s = 0.5 * (nodes[l] + 1.0) * N;
            znode.at(l, m) = resample_at(col.data(), P, s);
        }
    }

    // pass 1: fit along y at each x-node, evaluate on uniform y lines
    Pass1 p1{Grid2(P, P), Grid2(P, P), Grid2(P, P)};
#pragma omp parallel for if (Parallel)
    for (int l = 0; l < P; ++l) {
        std::vector<double> vals(P);
        for (int m = 0; m < P; ++m) vals[m] = znode.at(l, m);
        ChebSeries c = cheb_fit(vals, Axis::Y);
        for (int j = 0; j < P; ++j) {
            double Y = 2.0 * j / N - 1.0;
            p1.zhat.at(l, j) = cheb_interp(c, Y);
            p1.zhat_y.at(l, j) = cheb_deriv(c, Y, 1);
            p1.zhat_yy.at(l, j) = cheb_deriv(c, Y, 2);
        }
    }

    // pass 2: fit along x at each uniform y line, evaluate at mesh points
    DerivativeField f;
    f.order = N;
    f.du = g.du;
    f.dv = g.dv;
    f.dx = f.dy = f.dxx = f.dyy = f.dxy = Grid2(P, P);
    const double sx = 2.0 / (N * g.du); // d(X)/d(x_phys)
    const double sy = 2.0 / (N * g.dv);
#pragma omp parallel for if (Parallel)
    for (int j = 0; j < P; ++j) {
        std::vector<double> v0(P), v1(P), v2(P);
        for (int l = 0; l < P; ++l) {
            v0[l] = p1.zhat.at(l, j);
            v1[l] = p1.zhat_y.at(l, j);
            v2[l] = p1.zhat_yy.at(l, j);
        }
        ChebSeries ct = cheb_fit(v0, Axis::X);
        ChebSeries ct_y = cheb_fit(v1, Axis::X);
        ChebSeries ct_yy = cheb_fit(v2, Axis::X);
        for (int i = 0; i < P; ++i) {
            double X = 2.0 * i / N - 1.0;
            f.dx.at(i, j) = cheb_deriv(ct, X, 1) * sx;
            f.dxx.at(i, j) = cheb_deriv(ct, X, 2) * sx * sx;
            f.dy.at(i, j) = cheb_interp(ct_y, X) * sy;
            f.dxy.at(i, j) = cheb_deriv(ct_y, X, 1) * sx * sy;
            f.dyy.at(i, j) = cheb_interp(ct_yy, X) * sy * sy;
        }
    }
    return f;
}

} // namespace

DerivativeField grid_derivatives(const HeightGrid& g) { return cheb_pipeline<true>(g); }

void lowpass_grid(Grid2& grid, double keep_fraction) {
    const int P = grid.rows;
    if (P < 8 || grid.cols != P) return;
    const int N = P - 1;
    const int keep = std::max(2, int(keep_fraction * N));
    if (keep >= N) return;
    std::vector<double> nodes = cheb_zeros(P);
    auto filter_lines = [&](bool rows) {
        std::vector<double> line(P), at_nodes(P);
        for (int a = 0; a < P; ++a) {
            for (int b = 0; b < P; ++b) line[b] = rows ? grid.at(a, b) : grid.at(b, a);
            for (int m = 0; m < P; ++m) {
                double s = 0.5 * (nodes[m] + 1.0) * N;
                at_nodes[m] = resample_at(line.data(), P, s);
            }
            ChebSeries c = cheb_fit(at_nodes);
            for (int n = keep + 1; n <= N; ++n) c.coeffs[n] = 0.0;
            for (int b = 0; b < P; ++b) {
                double x = 2.0 * b / N - 1.0;
                if (rows)
                    grid.at(a, b) = cheb_interp(c, x);
                else
                    grid.at(b, a) = cheb_interp(c, x);
            }
        }
    };
    filter_lines(true);
    filter_lines(false);
}


namespace reference {
DerivativeField grid_derivatives(const HeightGrid& g) { return cheb_pipeline<false>(g); }
} // namespace reference

DerivativeField finite_difference_derivatives(const HeightGrid& g) {
    const int N = g.order;
    if (N < 4) throw std::domain_error("finite_difference_derivatives: order must be >= 4");
    const int P = N + 1;
    DerivativeField f;
    f.order = N;
    f.du = g.du;
    f.dv = g.dv;
    f.dx = f.dy = f.dxx = f.dyy = f.dxy = Grid2(P, P);
    auto h = [&](int i, int j) { return g.heights.at(i, j); };
    auto d1 = [](double m1, double p1, double step) { return (p1 - m1) / (2 * step); };
    for (int i = 0; i < P; ++i) {
        for (int j = 0; j < P; ++j) {
            int im = std::max(i - 1, 0), ip = std::min(i + 1, N);
            int jm = std::max(j - 1, 0), jp = std::min(j + 1, N);
            double hu = (ip - im) * 0.5 * g.du, hv = (jp - jm) * 0.5 * g.dv;
            f.dx.at(i, j) = d1(h(im, j), h(ip, j), hu);
            f.dy.at(i, j) = d1(h(i, jm), h(i, jp), hv);
            // second differences use clamped-interior stencils
            int ic = std::min(std::max(i, 1), N - 1);
            int jc = std::min(std::max(j, 1), N - 1);
            f.dxx.at(i, j) = (h(ic - 1, j) - 2 * h(ic, j) + h(ic + 1, j)) / (g.du * g.du);
            f.dyy.at(i, j) = (h(i, jc - 1) - 2 * h(i, jc) + h(i, jc + 1)) / (g.dv * g.dv);
            f.dxy.at(i, j) = (h(ip, jp) - h(ip, jm) - h(im, jp) + h(im, jm)) /
                             ((ip - im) * g.du * (jp - jm) * g.dv);
        }
    }
    return f;
}

} // namespace minsurf
