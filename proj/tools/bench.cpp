// Wall-time comparison of the OpenMP kernels against their serial reference
// twins.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "minsurf/area.hpp"
#include "minsurf/chebyshev.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/schwarz.hpp"

using namespace minsurf;

namespace {

template <class F>
double time_ms(F&& f, int reps = 3) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        auto t0 = std::chrono::high_resolution_clock::now();
        f();
        auto t1 = std::chrono::high_resolution_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const char* name, double serial, double parallel) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", name, serial, parallel,
                serial / parallel);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not enabled; both columns run serially.\n");
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    const int N = 64;
    QuadBoundary q = make_quad(Config::Ruled2, 1.0, 1.0);
    HeightGrid g = bilinear_height_grid(q, N);

    double sink = 0.0;
    row("grid_derivatives N=64",
        time_ms([&] { sink += reference::grid_derivatives(g).dx.at(1, 1); }),
        time_ms([&] { sink += grid_derivatives(g).dx.at(1, 1); }));

    DerivativeField d = grid_derivatives(g);
    row("area_gradient_sum N=64",
        time_ms([&] { sink += reference::area_gradient_sum(g, d); }, 20),
        time_ms([&] { sink += area_gradient_sum(g, d); }, 20));
    row("area_triangulation N=64",
        time_ms([&] { sink += reference::area_triangulation(g); }, 20),
        time_ms([&] { sink += area_triangulation(g); }, 20));

    row("schwarz_mesh 20x20",
        time_ms([&] { sink += reference::schwarz_mesh(Piece::FrontRight, 20, 20, 0.02).points[5].z; }, 1),
        time_ms([&] { sink += schwarz_mesh(Piece::FrontRight, 20, 20, 0.02).points[5].z; }, 1));

    if (sink == 12345.678) std::printf("#\n");
    return 0;
}
