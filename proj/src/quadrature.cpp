#include "minsurf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "minsurf/errors.hpp"

namespace minsurf {

static GaussRule make_rule(int n) {
    // Newton on Legendre P_n, cos initial guesses.
    GaussRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double p0, p1, dp;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const GaussRule& gauss_legendre(int n) {
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

namespace {

double gl_cell(const std::function<double(double, double)>& f, double ax, double bx, double ay,
               double by, const GaussRule& g) {
    double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
    double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
    double s = 0.0;
    for (size_t i = 0; i < g.x.size(); ++i)
        for (size_t j = 0; j < g.x.size(); ++j)
            s += g.w[i] * g.w[j] * f(cx + hx * g.x[i], cy + hy * g.x[j]);
    return s * hx * hy;
}

double adapt2d(const std::function<double(double, double)>& f, double ax, double bx, double ay,
               double by, double tol, int depth) {
    const GaussRule& g = gauss_legendre(6);
    double coarse = gl_cell(f, ax, bx, ay, by, g);
    double cx = 0.5 * (ax + bx), cy = 0.5 * (ay + by);
    double fine = gl_cell(f, ax, cx, ay, cy, g) + gl_cell(f, cx, bx, ay, cy, g) +
                  gl_cell(f, ax, cx, cy, by, g) + gl_cell(f, cx, bx, cy, by, g);
    double err = std::fabs(fine - coarse);
    if (err <= tol || err <= 1e-16 * std::fabs(fine)) return fine;
    if (depth >= 24) throw numerical_error("integrate2d: subdivision limit reached");
    double q = tol / 4.0;
    return adapt2d(f, ax, cx, ay, cy, q, depth + 1) + adapt2d(f, cx, bx, ay, cy, q, depth + 1) +
           adapt2d(f, ax, cx, cy, by, q, depth + 1) + adapt2d(f, cx, bx, cy, by, q, depth + 1);
}

double adapt1d(const std::function<double(double)>& f, double a, double b, double tol, int depth) {
    const GaussRule& g7 = gauss_legendre(7);
    const GaussRule& g15 = gauss_legendre(15);
    double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s7 = 0.0, s15 = 0.0;
    for (size_t i = 0; i < g7.x.size(); ++i) s7 += g7.w[i] * f(c + h * g7.x[i]);
    for (size_t i = 0; i < g15.x.size(); ++i) s15 += g15.w[i] * f(c + h * g15.x[i]);
    s7 *= h;
    s15 *= h;
    double err = std::fabs(s15 - s7);
    if (err <= tol || err <= 1e-16 * std::fabs(s15)) return s15;
    if (depth >= 40) throw numerical_error("integrate1d: subdivision limit reached");
    return adapt1d(f, a, c, tol / 2, depth + 1) + adapt1d(f, c, b, tol / 2, depth + 1);
}

} // namespace

double integrate2d(const std::function<double(double, double)>& f, double ax, double bx, double ay,
                   double by, double tol) {
    return adapt2d(f, ax, bx, ay, by, tol, 0);
}

double integrate1d(const std::function<double(double)>& f, double a, double b, double tol) {
    return adapt1d(f, a, b, tol, 0);
}

void TrackedContour::seed(cplx z0) {
    cplx s = std::sqrt(poly_(z0));
    if (s.real() < 0.0 || (s.real() == 0.0 && s.imag() < 0.0)) s = -s;
    s_ = s;
    seeded_ = true;
}

cplx TrackedContour::tracked_sqrt(cplx z) {
    cplx s = std::sqrt(poly_(z));
    // pick the branch nearest the running value
    if (std::abs(s - s_) > std::abs(s + s_)) s = -s;
    s_ = s;
    return s;
}

void TrackedContour::segment(cplx a, cplx b, double tol, int depth, std::vector<cplx>& acc) {
    // Branch safety: the B-spline of evaluations must not hop a quarter turn.
    // Walk a cheap 9-point probe first; if the phase moves too fast, split.
    cplx saved = s_;
    cplx probe = s_;
    bool fast = false;
    for (int i = 1; i <= 8; ++i) {
        cplx z = a + (b - a) * (double(i) / 8.0);
        cplx s = std::sqrt(poly_(z));
        if (std::abs(s - probe) > std::abs(s + probe)) s = -s;
        double c = std::abs(s - probe);
        double m = std::max(std::abs(s), std::abs(probe));
        if (m > 0 && c > 0.75 * m) fast = true; // > ~44 degrees per step
        probe = s;
    }
    if (fast && depth < 48) {
        s_ = saved;
        cplx m = 0.5 * (a + b);
        segment(a, m, tol / 2, depth + 1, acc);
        segment(m, b, tol / 2, depth + 1, acc);
        return;
    }

    const GaussRule& g8 = gauss_legendre(8);
    const GaussRule& g16 = gauss_legendre(16);
    std::vector<cplx> nums(k_);
    auto eval_rule = [&](const GaussRule& g, std::vector<cplx>& out) {
        out.assign(k_, cplx(0.0));
        // nodes sorted ascending so the branch advances monotonically
        for (size_t i = 0; i < g.x.size(); ++i) {
            double t = 0.5 * (g.x[i] + 1.0);
            cplx z = a + (b - a) * t;
            cplx s = tracked_sqrt(z);
            num_(z, nums);
            for (int j = 0; j < k_; ++j) out[j] += 0.5 * g.w[i] * nums[j] / s;
        }
        for (int j = 0; j < k_; ++j) out[j] *= (b - a);
    };

    std::vector<cplx> coarse, fine;
    s_ = saved;
    eval_rule(g8, coarse);
    s_ = saved;
    eval_rule(g16, fine);

    double err = 0.0, mag = 0.0;
    for (int j = 0; j < k_; ++j) {
        err = std::max(err, std::abs(fine[j] - coarse[j]));
        mag = std::max(mag, std::abs(fine[j]));
    }
    if (err <= tol || err <= 1e-15 * mag || depth >= 48) {
        if (depth >= 48 && err > 100 * tol)
            throw numerical_error("contour integration failed to converge");
        for (int j = 0; j < k_; ++j) acc[j] += fine[j];
        return;
    }
    s_ = saved;
    cplx m = 0.5 * (a + b);
    segment(a, m, tol / 2, depth + 1, acc);
    segment(m, b, tol / 2, depth + 1, acc);
}

std::vector<cplx> TrackedContour::integrate(cplx z0, cplx z1, double abs_tol) {
    if (!seeded_) seed(z0);
    std::vector<cplx> acc(k_, cplx(0.0));
    if (z0 == z1) return acc;
    segment(z0, z1, abs_tol, 0, acc);
    return acc;
}

std::vector<cplx> TrackedContour::integrate_to_branch_point(cplx z0, cplx z1, double abs_tol) {
    if (!seeded_) seed(z0);
    // plain leg to 90% of the way, then z = z1 - (z1-z0)*0.1*(1-t)^2 on t in [0,1]
    cplx zm = z0 + 0.9 * (z1 - z0);
    std::vector<cplx> acc = integrate(z0, zm, abs_tol / 2);

    cplx dz = 0.1 * (z1 - z0);
    // transformed integrand: g(t) = f(z(t)) * dz/dt, dz/dt = 2 dz (1-t)
    // near t=1 the 1/sqrt(P) blowup is cancelled by the (1-t) factor.
    const GaussRule& g32 = gauss_legendre(32);
    const GaussRule& g16 = gauss_legendre(16);
    std::vector<cplx> nums(k_);
    auto eval_rule = [&](const GaussRule& g, cplx saved, std::vector<cplx>& out) {
        s_ = saved;
        out.assign(k_, cplx(0.0));
        for (size_t i = 0; i < g.x.size(); ++i) {
            double t = 0.5 * (g.x[i] + 1.0);
            double om = 1.0 - t;
            cplx z = z1 - dz * (om * om);
            cplx s = tracked_sqrt(z);
            num_(z, nums);
            cplx jac = 2.0 * dz * om;
            for (int j = 0; j < k_; ++j) out[j] += 0.5 * g.w[i] * nums[j] / s * jac;
        }
    };
    cplx saved = s_;
    std::vector<cplx> coarse, fine;
    eval_rule(g16, saved, coarse);
    eval_rule(g32, saved, fine);
    double err = 0.0;
    for (int j = 0; j < k_; ++j) err = std::max(err, std::abs(fine[j] - coarse[j]));
    if (err > std::max(abs_tol, 1e-12)) {
        // one refinement level is plenty for the regularized integrand
        std::vector<cplx> f2(k_, cplx(0.0));
        s_ = saved;
        const GaussRule& g64 = gauss_legendre(64);
        eval_rule(g64, saved, f2);
        fine = f2;
    }
    for (int j = 0; j < k_; ++j) acc[j] += fine[j];
    return acc;
}

} // namespace minsurf
