#include "minsurf/grid_io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "minsurf/errors.hpp"

namespace minsurf {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    return os;
}

} // namespace

void write_grid_csv(std::ostream& os, const HeightGrid& g) {
    os << g.order << ' ' << fmt17(g.du) << ' ' << fmt17(g.dv) << ' ' << config_name(g.config)
       << ' ' << fmt17(g.r) << ' ' << fmt17(g.d) << '\n';
    for (int i = 0; i <= g.order; ++i) {
        for (int j = 0; j <= g.order; ++j) {
            if (j) os << ' ';
            os << fmt17(g.heights.at(i, j));
        }
        os << '\n';
    }
}

void write_grid_csv(const std::string& path, const HeightGrid& g) {
    auto os = open_out(path);
    write_grid_csv(os, g);
}

HeightGrid read_grid_csv(std::istream& is) {
    HeightGrid g;
    std::string line;
    if (!std::getline(is, line)) throw std::runtime_error("grid csv: empty input (line 1)");
    std::istringstream hs(line);
    std::string cfg;
    if (!(hs >> g.order >> g.du >> g.dv >> cfg >> g.r >> g.d))
        throw std::runtime_error("grid csv: malformed header (line 1)");
    if (cfg == "ruled1")
        g.config = Config::Ruled1;
    else if (cfg == "ruled2")
        g.config = Config::Ruled2;
    else
        throw std::runtime_error("grid csv: unknown config '" + cfg + "' (line 1)");
    if (g.order < 2 || g.order > 100000) throw std::runtime_error("grid csv: bad order (line 1)");
    g.frame = make_quad(g.config, g.r, g.d).frame();
    g.heights = Grid2(g.order + 1, g.order + 1);
    for (int i = 0; i <= g.order; ++i) {
        if (!std::getline(is, line))
            throw std::runtime_error("grid csv: missing row (line " + std::to_string(i + 2) + ")");
        std::istringstream rs(line);
        for (int j = 0; j <= g.order; ++j) {
            if (!(rs >> g.heights.at(i, j)))
                throw std::runtime_error("grid csv: malformed row (line " +
                                         std::to_string(i + 2) + ")");
        }
    }
    return g;
}

HeightGrid read_grid_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open for reading: " + path);
    return read_grid_csv(is);
}

void write_grid_obj(std::ostream& os, const HeightGrid& g) {
    const int P = g.order + 1;
    for (int i = 0; i < P; ++i)
        for (int j = 0; j < P; ++j)
            os << "v " << fmt17(g.x_of(i)) << ' ' << fmt17(g.y_of(j)) << ' '
               << fmt17(g.heights.at(i, j)) << '\n';
    auto vid = [P](int i, int j) { return i * P + j + 1; };
    // split along the (i-1,j-1)-(i,j) diagonal, as in the triangulation sum
    for (int i = 1; i < P; ++i) {
        for (int j = 1; j < P; ++j) {
            os << "f " << vid(i - 1, j - 1) << ' ' << vid(i, j - 1) << ' ' << vid(i, j) << '\n';
            os << "f " << vid(i - 1, j - 1) << ' ' << vid(i, j) << ' ' << vid(i - 1, j) << '\n';
        }
    }
}

void write_grid_obj(const std::string& path, const HeightGrid& g) {
    auto os = open_out(path);
    write_grid_obj(os, g);
}

void write_patch_obj(std::ostream& os, const std::vector<SchwarzPatch>& patches) {
    int base = 0;
    for (const auto& p : patches) {
        for (const Point3& pt : p.points)
            os << "v " << fmt17(pt.x) << ' ' << fmt17(pt.y) << ' ' << fmt17(pt.z) << '\n';
        for (int r = 1; r < p.n_alpha; ++r) {
            for (int k = 1; k < p.n_r; ++k) {
                int v00 = base + (r - 1) * p.n_r + (k - 1) + 1;
                int v01 = base + (r - 1) * p.n_r + k + 1;
                int v10 = base + r * p.n_r + (k - 1) + 1;
                int v11 = base + r * p.n_r + k + 1;
                if (k > 1) os << "f " << v00 << ' ' << v10 << ' ' << v11 << '\n';
                os << "f " << v00 << ' ' << v11 << ' ' << v01 << '\n';
            }
        }
        base += int(p.points.size());
    }
}

void write_patch_obj(const std::string& path, const std::vector<SchwarzPatch>& patches) {
    auto os = open_out(path);
    write_patch_obj(os, patches);
}

void write_patch_csv(std::ostream& os, const std::vector<SchwarzPatch>& patches) {
    os << "piece r_hat alpha x y z\n";
    for (const auto& p : patches) {
        const char* name = p.piece == Piece::FrontRight ? "front-right" : "front-left";
        for (size_t i = 0; i < p.points.size(); ++i)
            os << name << ' ' << fmt17(p.params[i].first) << ' ' << fmt17(p.params[i].second)
               << ' ' << fmt17(p.points[i].x) << ' ' << fmt17(p.points[i].y) << ' '
               << fmt17(p.points[i].z) << '\n';
    }
}

void write_patch_csv(const std::string& path, const std::vector<SchwarzPatch>& patches) {
    auto os = open_out(path);
    write_patch_csv(os, patches);
}

void Report::add(const std::string& name, const std::string& value) {
    items.emplace_back(name, value);
}

void Report::add(const std::string& name, double value) { items.emplace_back(name, fmt17(value)); }

void Report::write(std::ostream& os) const {
    for (const auto& [k, v] : items) os << k << " = " << v << '\n';
}

void Report::write(const std::string& path) const {
    auto os = open_out(path);
    write(os);
}

} // namespace minsurf
