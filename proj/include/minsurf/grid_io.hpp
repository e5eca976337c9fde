#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "minsurf/geometry.hpp"
#include "minsurf/grid.hpp"
#include "minsurf/schwarz.hpp"

namespace minsurf {

// CSV grid format: header "N du dv config r d", then N+1 rows of N+1 heights,
// space separated, 17 significant digits (lossless round trip).
void write_grid_csv(std::ostream& os, const HeightGrid& g);
void write_grid_csv(const std::string& path, const HeightGrid& g);
HeightGrid read_grid_csv(std::istream& is);
HeightGrid read_grid_csv(const std::string& path);

// OBJ triangle mesh of a height grid, vertices in row-major order, two
// triangles per cell split along the same diagonal as the triangulation
// estimator.
void write_grid_obj(std::ostream& os, const HeightGrid& g);
void write_grid_obj(const std::string& path, const HeightGrid& g);

// OBJ / CSV exports of Schwarz patches.
void write_patch_obj(std::ostream& os, const std::vector<SchwarzPatch>& patches);
void write_patch_obj(const std::string& path, const std::vector<SchwarzPatch>& patches);
void write_patch_csv(std::ostream& os, const std::vector<SchwarzPatch>& patches);
void write_patch_csv(const std::string& path, const std::vector<SchwarzPatch>& patches);

// Plain-text report of labeled "name = value" lines.
struct Report {
    std::vector<std::pair<std::string, std::string>> items;
    void add(const std::string& name, const std::string& value);
    void add(const std::string& name, double value);
    void write(std::ostream& os) const;
    void write(const std::string& path) const;
};

} // namespace minsurf
