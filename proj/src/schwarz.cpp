#include "minsurf/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "minsurf/errors.hpp"
#include "minsurf/quadrature.hpp"

namespace minsurf {

namespace {

constexpr double kPathTol = 1e-9;

cplx poly_minus(cplx w) {
    cplx w4 = w * w * w * w;
    return 1.0 - 14.0 * w4 + w4 * w4;
}

cplx poly_plus(cplx w) {
    cplx w4 = w * w * w * w;
    return 1.0 + 14.0 * w4 + w4 * w4;
}

double seg_point_dist(cplx a, cplx b, cplx p) {
    cplx d = b - a;
    double dd = std::norm(d);
    if (dd == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(d)).real() / dd;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

std::array<cplx, 8> branch_points(bool rotated) {
    // roots of 1 -+ 14 w^4 + w^8: axis directions for the minus polynomial,
    // diagonal directions for the plus polynomial
    std::array<cplx, 8> pts;
    double r1 = SchwarzDomain::inner_radius(), r2 = SchwarzDomain::outer_radius();
    double base = rotated ? M_PI / 4.0 : 0.0;
    for (int k = 0; k < 4; ++k) {
        cplx dir = std::polar(1.0, base + k * M_PI / 2.0);
        pts[k] = r1 * dir;
        pts[k + 4] = r2 * dir;
    }
    return pts;
}

} // namespace

std::array<cplx, 4> SchwarzDomain::singular_points() {
    double s = inner_radius();
    return {cplx(s, 0), cplx(0, s), cplx(-s, 0), cplx(0, -s)};
}

std::array<cplx, 4> SchwarzDomain::reflected_points() {
    double s = outer_radius();
    return {cplx(s, 0), cplx(0, s), cplx(-s, 0), cplx(0, -s)};
}

cplx SchwarzDomain::circle_center(Piece) {
    return cplx(1.0, -1.0) / std::sqrt(2.0); // both printed pieces share it
}

std::array<cplx, 3> weierstrass_integrand(cplx w) {
    for (cplx p : branch_points(false))
        if (std::abs(w - p) < kPathTol)
            throw singularity_error("weierstrass_integrand: branch point");
    cplx s = std::sqrt(poly_minus(w));
    if (s.real() < 0.0 || (s.real() == 0.0 && s.imag() < 0.0)) s = -s; // R(0) = -2
    cplx R = -2.0 / s;
    return {(1.0 - w * w) * R, cplx(0, 1) * (1.0 + w * w) * R, 2.0 * w * R};
}

Point3 schwarz_point(cplx rho_target, double kappa) {
    if (rho_target == cplx(0.0)) return {0, 0, 0};
    for (cplx p : branch_points(true))
        if (seg_point_dist(0.0, rho_target, p) < 1e-3)
            throw path_error("schwarz_point: path too close to a branch point");
    TrackedContour tc(poly_plus,
                      [](cplx w, std::span<cplx> out) {
                          out[0] = 2.0 * (1.0 + w * w);
                          out[1] = 2.0 * (1.0 - w * w);
                          out[2] = 4.0 * w;
                      },
                      3);
    std::vector<cplx> I = tc.integrate(0.0, rho_target, 1e-10);
    return {kappa * I[0].real(), -kappa * I[1].imag(), kappa * I[2].real()};
}

KappaScale compute_kappa() {
    cplx edge = cplx(0.0, SchwarzDomain::inner_radius());
    Point3 p = schwarz_point(edge, 1.0);
    KappaScale k;
    k.edge_integral = p.z;
    k.kappa = (1.0 / (2.0 * std::sqrt(2.0))) / (2.0 * std::fabs(k.edge_integral));
    return k;
}

namespace {

// alpha of the printed FrontRight circle point at parameter theta
double fr_alpha(double theta) {
    return std::atan2(-1.0 + 2.0 * std::sin(theta), 1.0 + 2.0 * std::cos(theta));
}

// the FrontLeft relation prints tan(alpha) = (1-2 sin t)/(-1+2 cos t)
double fl_tan(double theta) {
    return (1.0 - 2.0 * std::sin(theta)) / (-1.0 + 2.0 * std::cos(theta));
}

} // namespace

double boundary_theta(double alpha, Piece piece) {
    if (piece == Piece::FrontRight) {
        if (alpha < 0.0 || alpha > M_PI / 2.0)
            throw std::domain_error("boundary_theta: FrontRight needs alpha in [0, pi/2]");
        if (std::fabs(alpha - M_PI / 4.0) < 1e-9)
            throw branch_error("boundary_theta: branch point at cot(alpha) = 1");
        double lo = M_PI / 6.0, hi = 2.0 * M_PI / 3.0;
        for (int it = 0; it < 200; ++it) {
            double mid = 0.5 * (lo + hi);
            if (fr_alpha(mid) < alpha)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    }
    // FrontLeft: theta in [-pi/2, -pi/3), attainable tan(alpha) <= -3
    double t = std::tan(alpha);
    if (!(t < 0.0)) throw std::domain_error("boundary_theta: FrontLeft needs tan(alpha) < 0");
    if (t > -3.0 + 1e-12) throw branch_error("boundary_theta: alpha beyond the covered range");
    double lo = -M_PI / 2.0, hi = -M_PI / 3.0 - 1e-13;
    // fl_tan decreases from -3 at -pi/2 towards -inf at -pi/3
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (fl_tan(mid) > t)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double r_max(double alpha, Piece piece) {
    double theta = boundary_theta(alpha, piece);
    double r2 = (piece == Piece::FrontRight)
                    ? 3.0 + 2.0 * std::cos(theta) - 2.0 * std::sin(theta)
                    : 3.0 - 2.0 * std::cos(theta) - 2.0 * std::sin(theta);
    return std::sqrt(r2);
}

namespace detail {

double domain_radius(double alpha) {
    double m = std::fabs(std::cos(alpha)) + std::fabs(std::sin(alpha));
    return 0.5 * (-std::sqrt(2.0) * m + std::sqrt(2.0 * m * m + 4.0));
}

namespace {

struct CornerIntegrals {
    cplx x, y, z;
};

// integrals of the Weierstrass triple (without the -2 scale) from 0 to the
// real singular point a, endpoint regularized
CornerIntegrals corner_integrals() {
    TrackedContour tc(poly_minus,
                      [](cplx w, std::span<cplx> out) {
                          out[0] = 1.0 - w * w;
                          out[1] = cplx(0, 1) * (1.0 + w * w);
                          out[2] = 2.0 * w;
                      },
                      3);
    double a = SchwarzDomain::inner_radius();
    std::vector<cplx> I = tc.integrate_to_branch_point(0.0, cplx(a, 0.0), 1e-12);
    return {I[0], I[1], I[2]};
}

} // namespace

double geometric_scale() {
    static const double scale = [] {
        CornerIntegrals c = corner_integrals();
        return (1.0 / (2.0 * std::sqrt(2.0))) / c.z.real();
    }();
    return scale;
}

} // namespace detail

namespace {

template <bool Parallel>
SchwarzPatch mesh_impl(Piece piece, int n_r, int n_alpha, double margin) {
    if (n_r < 2 || n_alpha < 2) throw std::domain_error("schwarz_mesh: counts must be >= 2");
    if (!(margin > 0.0) || margin >= M_PI / 8.0)
        throw std::domain_error("schwarz_mesh: margin must lie in (0, pi/8)");

    const double lo = (piece == Piece::FrontRight) ? -M_PI / 2.0 : M_PI / 2.0;
    const double hi = lo + M_PI;
    const double rays[3] = {lo, lo + M_PI / 2.0, hi};

    std::vector<double> alphas;
    for (int j = 0; j < n_alpha; ++j) alphas.push_back(lo + (hi - lo) * j / (n_alpha - 1));
    alphas.push_back(lo + M_PI / 2.0); // make sure the middle corner ray is present
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end(),
                             [](double a, double b) { return std::fabs(a - b) < 1e-12; }),
                 alphas.end());
    auto near_ray = [&](double a) {
        for (double r : rays)
            if (std::fabs(a - r) < 1e-12) return 2; // on a corner ray
        for (double r : rays)
            if (std::fabs(a - r) < margin) return 1; // inside the excluded band
        return 0;
    };
    alphas.erase(std::remove_if(alphas.begin(), alphas.end(),
                                [&](double a) { return near_ray(a) == 1; }),
                 alphas.end());

    const double scale = detail::geometric_scale();
    const int nrays = int(alphas.size());

    SchwarzPatch patch;
    patch.piece = piece;
    patch.n_r = n_r;
    patch.n_alpha = nrays;
    patch.points.assign(size_t(nrays) * n_r, Point3{});
    patch.params.assign(size_t(nrays) * n_r, {0.0, 0.0});
    patch.ray_offsets.resize(nrays);
    std::vector<double> iso(nrays, 0.0);

#pragma omp parallel for if (Parallel)
    for (int ri = 0; ri < nrays; ++ri) {
        const double alpha = alphas[ri];
        const bool corner_ray = near_ray(alpha) == 2;
        const double rmax = detail::domain_radius(alpha);
        const cplx dir = std::polar(1.0, alpha);

        double ray_iso = 0.0;
        TrackedContour tc(poly_minus,
                          [&ray_iso](cplx w, std::span<cplx> out) {
                              out[0] = 1.0 - w * w;
                              out[1] = cplx(0, 1) * (1.0 + w * w);
                              out[2] = 2.0 * w;
                              cplx r = out[0] * out[0] + out[1] * out[1] + out[2] * out[2];
                              double den = std::max(1.0, std::pow(std::abs(w), 4));
                              ray_iso = std::max(ray_iso, std::abs(r) / den);
                          },
                          3);
        tc.seed(0.0);
        cplx acc[3] = {0, 0, 0};
        cplx prev = 0.0;
        for (int k = 0; k < n_r; ++k) {
            double rhat = rmax * k / (n_r - 1);
            size_t idx = size_t(ri) * n_r + k;
            patch.params[idx] = {rhat, alpha};
            if (k == 0) continue;
            cplx target = rhat * dir;
            std::vector<cplx> leg =
                (k == n_r - 1 && corner_ray)
                    ? tc.integrate_to_branch_point(prev, target, 1e-10)
                    : tc.integrate(prev, target, 1e-10);
            for (int c = 0; c < 3; ++c) acc[c] += leg[c];
            prev = target;
            patch.points[idx] = {scale * acc[0].real(), scale * acc[1].real(),
                                 scale * acc[2].real()};
        }
        iso[ri] = ray_iso;
        patch.ray_offsets[ri] = int(size_t(ri) * n_r);
    }
    for (double v : iso) patch.max_isotropy_residual = std::max(patch.max_isotropy_residual, v);
    return patch;
}

} // namespace

SchwarzPatch schwarz_mesh(Piece piece, int n_r, int n_alpha, double margin) {
    return mesh_impl<true>(piece, n_r, n_alpha, margin);
}

namespace reference {
SchwarzPatch schwarz_mesh(Piece piece, int n_r, int n_alpha, double margin) {
    return mesh_impl<false>(piece, n_r, n_alpha, margin);
}
} // namespace reference

namespace detail {

cplx elliptic_f(cplx phi, cplx m) {
    if (phi == cplx(0.0)) return 0.0;
    TrackedContour tc([m](cplx t) { cplx s = std::sin(t); return 1.0 - m * s * s; },
                      [](cplx, std::span<cplx> out) { out[0] = 1.0; }, 1);
    return tc.integrate(0.0, phi, 1e-12)[0];
}

cplx z_closed_form(cplx rho) {
    const double s3 = std::sqrt(3.0);
    cplx r4 = rho * rho * rho * rho;
    cplx num = -2.0 * cplx(0, 1) * std::sqrt((r4 + 4.0 * s3 + 7.0) * (r4 - 4.0 * s3 + 7.0));
    cplx m = (7.0 + 4.0 * s3) / (7.0 - 4.0 * s3);
    cplx phi = cplx(0, 1) * std::asinh(rho * rho / std::sqrt(7.0 + 4.0 * s3));
    cplx den = std::sqrt((r4 * r4 + 14.0 * r4 + 1.0) * (7.0 - 4.0 * s3));
    return num * elliptic_f(phi, m) / den;
}

cplx appell_f1(double a, double b1, double b2, double c, cplx x, cplx y) {
    if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0)
        throw std::domain_error("appell_f1: series arguments must have modulus < 1");
    cplx sum = 0.0;
    double pa_m = 1.0; // (a)_m
    double pb1 = 1.0;  // (b1)_m
    double pc_m = 1.0; // (c)_m
    double mfac = 1.0;
    cplx xm = 1.0;
    for (int m = 0; m < 400; ++m) {
        // inner sum over n with ratio recurrence
        cplx term = pa_m * pb1 / (pc_m * mfac) * xm; // n = 0 term
        cplx inner = term;
        cplx yn = 1.0;
        double pa = 1.0, pb = 1.0, pc = 1.0, nfac = 1.0;
        for (int n = 1; n < 400; ++n) {
            pa *= (a + m + n - 1);
            pb *= (b2 + n - 1);
            pc *= (c + m + n - 1);
            nfac *= n;
            yn *= y;
            cplx t = pa_m * pa * pb1 * pb / (pc_m * pc * mfac * nfac) * xm * yn;
            inner += t;
            if (std::abs(t) < 1e-18 * (1.0 + std::abs(inner))) break;
        }
        sum += inner;
        if (std::abs(inner) < 1e-18 * (1.0 + std::abs(sum)) && m > 4) break;
        pa_m *= (a + m);
        pb1 *= (b1 + m);
        pc_m *= (c + m);
        mfac *= (m + 1);
        xm *= x;
    }
    return sum;
}

namespace {

cplx xy_closed_form(cplx rho, double sign) {
    const double s3 = std::sqrt(3.0);
    cplx r4 = rho * rho * rho * rho;
    cplx xarg = -r4 / (7.0 + 4.0 * s3);
    cplx yarg = r4 / (-7.0 + 4.0 * s3);
    cplx f34 = appell_f1(0.75, 0.5, 0.5, 1.75, xarg, yarg);
    cplx f14 = appell_f1(0.25, 0.5, 0.5, 1.25, xarg, yarg);
    cplx pre = 2.0 * rho * std::sqrt(r4 - 4.0 * s3 + 7.0) * std::sqrt(r4 + 4.0 * s3 + 7.0);
    cplx den = 3.0 * std::sqrt(r4 * r4 + 14.0 * r4 + 1.0);
    return sign * pre * (rho * rho * f34 + sign * 3.0 * f14) / den;
}

} // namespace

cplx x_closed_form(cplx rho) { return xy_closed_form(rho, +1.0); }
cplx y_closed_form(cplx rho) { return xy_closed_form(rho, -1.0); }

} // namespace detail

} // namespace minsurf
