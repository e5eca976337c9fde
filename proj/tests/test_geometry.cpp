#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "minsurf/geometry.hpp"

using namespace minsurf;

TEST_CASE("make_quad corner placement") {
    QuadBoundary q = make_quad(Config::Ruled1, 1.0, 2.0);
    CHECK(q.x11.x == 1.0); // r2 = (r, d, 0)
    CHECK(q.x11.y == 2.0);
    CHECK(q.x11.z == 0.0);
    CHECK(q.x00.x == 0.0);
    CHECK(q.x10.z == 2.0); // r4 = (r, 0, d)
    CHECK(q.x01.y == 2.0); // r3 = (0, d, d)

    CHECK_THROWS_AS(make_quad(Config::Ruled1, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_quad(Config::Ruled2, 1.0, -2.0), std::domain_error);
}

TEST_CASE("r = d gives a regular tetrahedron") {
    QuadBoundary q = make_quad(Config::Ruled2, 1.0, 1.0);
    std::array<Point3, 4> c = {q.x00, q.x10, q.x01, q.x11};
    double ref = norm(c[0] - c[1]);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            CHECK(norm(c[i] - c[j]) == doctest::Approx(ref).epsilon(1e-14));
}

TEST_CASE("bilinear_eval") {
    QuadBoundary q2 = make_quad(Config::Ruled2, 1.0, 1.0);
    Point3 p0 = bilinear_eval(q2, 0.0, 0.0);
    CHECK(p0.x == 0.0);
    CHECK(p0.y == 0.0);
    CHECK(p0.z == 0.0);
    Point3 pc = bilinear_eval(q2, 0.5, 0.5);
    CHECK(pc.x == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pc.y == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pc.z == doctest::Approx(0.5).epsilon(1e-15));

    QuadBoundary q1 = make_quad(Config::Ruled1, 1.0, 2.0);
    Point3 p11 = bilinear_eval(q1, 1.0, 1.0);
    CHECK(p11.x == doctest::Approx(1.0));
    CHECK(p11.y == doctest::Approx(2.0));
    CHECK(p11.z == doctest::Approx(0.0));

    CHECK_THROWS_AS(bilinear_eval(q1, -0.1, 0.5), std::domain_error);
    CHECK_THROWS_AS(bilinear_eval(q1, 0.1, 1.5), std::domain_error);

    // corner interpolation
    for (auto [u, v, c] : {std::tuple{0.0, 0.0, q1.x00}, {1.0, 0.0, q1.x10},
                           {0.0, 1.0, q1.x01}, {1.0, 1.0, q1.x11}}) {
        Point3 p = bilinear_eval(q1, u, v);
        CHECK(norm(p - c) < 1e-15);
    }
}

TEST_CASE("ruledness: affine along each parameter line") {
    QuadBoundary q = make_quad(Config::Ruled1, 2.0, 1.0);
    for (double u : {0.15, 0.5, 0.82}) {
        Point3 a = bilinear_eval(q, u, 0.2), b = bilinear_eval(q, u, 0.5),
               c = bilinear_eval(q, u, 0.8);
        // b should equal the affine combination of a and c
        Point3 mid = 0.5 * (a + c);
        CHECK(norm(mid - b) < 1e-12);
    }
    for (double v : {0.05, 0.4, 0.97}) {
        Point3 a = bilinear_eval(q, 0.1, v), b = bilinear_eval(q, 0.45, v),
               c = bilinear_eval(q, 0.8, v);
        Point3 mid = 0.5 * (a + c);
        CHECK(norm(mid - b) < 1e-12);
    }
}

TEST_CASE("bilinear_height_grid") {
    CHECK_THROWS_AS(bilinear_height_grid(make_quad(Config::Ruled2, 1, 1), 1), std::domain_error);

    HeightGrid g = bilinear_height_grid(make_quad(Config::Ruled2, 1, 1), 2);
    CHECK(g.heights.at(1, 1) == doctest::Approx(0.5).epsilon(1e-15));

    // ruled1: boundary heights lie on the straight edges connecting corner heights
    HeightGrid g1 = bilinear_height_grid(make_quad(Config::Ruled1, 1, 2), 4);
    auto corner = [&](int i, int j) { return g1.heights.at(i, j); };
    for (int k = 0; k <= 4; ++k) {
        double t = k / 4.0;
        CHECK(g1.heights.at(k, 0) ==
              doctest::Approx((1 - t) * corner(0, 0) + t * corner(4, 0)).epsilon(1e-14));
        CHECK(g1.heights.at(k, 4) ==
              doctest::Approx((1 - t) * corner(0, 4) + t * corner(4, 4)).epsilon(1e-14));
        CHECK(g1.heights.at(0, k) ==
              doctest::Approx((1 - t) * corner(0, 0) + t * corner(0, 4)).epsilon(1e-14));
        CHECK(g1.heights.at(4, k) ==
              doctest::Approx((1 - t) * corner(4, 0) + t * corner(4, 4)).epsilon(1e-14));
    }
    // base rectangle r x d for ruled1
    CHECK(g1.frame.extent_x == doctest::Approx(1.0));
    CHECK(g1.frame.extent_y == doctest::Approx(2.0));
}

TEST_CASE("closed-form mean curvature") {
    QuadBoundary q2 = make_quad(Config::Ruled2, 1, 1);
    CHECK(bilinear_mean_curvature(q2, 0, 0) ==
          doctest::Approx(-2.0 / std::pow(3.0, 1.5)).epsilon(1e-12)); // -0.38490
    // zero exactly on the center lines
    QuadBoundary q1 = make_quad(Config::Ruled1, 2, 1);
    for (double v : {0.0, 0.31, 0.5, 0.77, 1.0}) {
        CHECK(bilinear_mean_curvature(q1, 0.5, v) == 0.0);
        CHECK(bilinear_mean_curvature(q2, 0.5, v) == 0.0);
        CHECK(bilinear_mean_curvature(q1, v, 0.5) == 0.0);
    }
    // sign pattern: H has the sign of -(1-2u)(1-2v) on a 21x21 sample
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            double u = i / 20.0, v = j / 20.0;
            double s = (1 - 2 * u) * (1 - 2 * v);
            double H = bilinear_mean_curvature(q2, u, v);
            if (s == 0.0)
                CHECK(H == 0.0);
            else
                CHECK(H * s < 0.0);
        }
    }
}

TEST_CASE("numeric mean curvature: planes are minimal") {
    HeightField plane{[](double u, double v) { return 0.7 * u - 1.3 * v; }, 1.0, 1.0};
    for (double u : {0.2, 0.5, 0.8})
        for (double v : {0.3, 0.6})
            CHECK(std::fabs(mean_curvature_numeric(plane, u, v, 1e-3)) < 1e-8);
    CHECK_THROWS_AS(mean_curvature_numeric(plane, 0.0, 0.5, 1e-3), std::domain_error);
}

TEST_CASE("numeric oracle matches the closed forms") {
    // relative agreement at h = 1e-3 over interior samples, both configs,
    // (r,d) in {(1,1),(2,1),(1,2)}
    for (auto [r, d] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {1.0, 2.0}}) {
        for (Config cfg : {Config::Ruled1, Config::Ruled2}) {
            QuadBoundary q = make_quad(cfg, r, d);
            GraphFrame fr = q.frame();
            HeightField field{[&q](double u, double v) { return bilinear_eval(q, u, v).z; },
                              fr.extent_x, fr.extent_y};
            for (int i = 1; i <= 7; ++i) {
                for (int j = 1; j <= 7; ++j) {
                    double u = i / 8.0, v = j / 8.0;
                    double closed = bilinear_mean_curvature(q, u, v);
                    double numeric = mean_curvature_numeric(field, u, v, 1e-3);
                    if (std::fabs(closed) < 1e-12) {
                        CHECK(std::fabs(numeric) < 1e-9);
                    } else {
                        CHECK(std::fabs(numeric - closed) <= 1e-6 * std::fabs(closed));
                    }
                }
            }
        }
    }
}

TEST_CASE("bilinear curvature at (1/4,1/4) matches the oracle to 1e-6") {
    QuadBoundary q = make_quad(Config::Ruled2, 1, 1);
    HeightField field{[&q](double u, double v) { return bilinear_eval(q, u, v).z; }, 1.0, 1.0};
    double closed = bilinear_mean_curvature(q, 0.25, 0.25);
    CHECK(mean_curvature_numeric(field, 0.25, 0.25, 1e-3) ==
          doctest::Approx(closed).epsilon(1e-6));
}
