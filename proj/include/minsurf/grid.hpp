#pragma once

#include <string>
#include <vector>

#include "minsurf/errors.hpp"

namespace minsurf {

// Dense row-major 2D array of doubles.
struct Grid2 {
    int rows = 0, cols = 0;
    std::vector<double> v;

    Grid2() = default;
    Grid2(int r, int c, double fill = 0.0) : rows(r), cols(c), v(size_t(r) * c, fill) {}

    double& at(int i, int j) { return v[size_t(i) * cols + j]; }
    double at(int i, int j) const { return v[size_t(i) * cols + j]; }

    bool same_shape(const Grid2& o) const { return rows == o.rows && cols == o.cols; }
};

enum class Config { Ruled1, Ruled2 };

inline const char* config_name(Config c) { return c == Config::Ruled1 ? "ruled1" : "ruled2"; }

// Orientation of the height graph: base-plane axis labels, base rectangle
// extents, and the label of the height axis.
struct GraphFrame {
    std::string base_axis_x = "x";
    std::string base_axis_y = "y";
    std::string height_axis = "z";
    double extent_x = 1.0;
    double extent_y = 1.0;
};

// (N+1) x (N+1) heights over the base rectangle, index i along base x,
// j along base y.  The boundary ring carries Dirichlet data.
struct HeightGrid {
    int order = 0;        // N
    double du = 0.0;      // base-x spacing, extent_x / N
    double dv = 0.0;      // base-y spacing, extent_y / N
    Grid2 heights;
    GraphFrame frame;
    Config config = Config::Ruled2;
    double r = 1.0, d = 1.0;

    int points() const { return order + 1; }
    double x_of(int i) const { return du * i; }
    double y_of(int j) const { return dv * j; }
};

} // namespace minsurf
