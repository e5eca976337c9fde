// Command-line front end: reproduces the published area table and Schwarz
// constants, runs solves, prints area reports, and exports grids/meshes.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "minsurf/area.hpp"
#include "minsurf/errors.hpp"
#include "minsurf/geometry.hpp"
#include "minsurf/grid_io.hpp"
#include "minsurf/schwarz.hpp"
#include "minsurf/solver.hpp"

using namespace minsurf;

namespace {

Config parse_config(const std::string& s) {
    if (s == "ruled1") return Config::Ruled1;
    if (s == "ruled2") return Config::Ruled2;
    throw std::domain_error("unknown config: " + s);
}

struct SolveFlags {
    std::string config = "ruled2";
    double r = 1.0, d = 1.0;
    int n = 40;
    double reduction = 0.5;
    int max_iters = 200;
    double tol = -1.0;
};

void add_solve_flags(CLI::App* cmd, SolveFlags& f) {
    cmd->add_option("--config", f.config, "boundary configuration: ruled1|ruled2");
    cmd->add_option("--r", f.r, "scale parameter r");
    cmd->add_option("--d", f.d, "scale parameter d");
    cmd->add_option("--n", f.n, "grid order N ((N+1)^2 points)");
    cmd->add_option("--reduction", f.reduction, "Newton reduction factor in (0,1]");
    cmd->add_option("--max-iters", f.max_iters, "iteration cap");
    cmd->add_option("--tol", f.tol, "residual tolerance (max-norm of F); <0 = auto");
}

SolverConfig to_solver_config(const SolveFlags& f) {
    SolverConfig cfg;
    cfg.reduction_factor = f.reduction;
    cfg.max_iters = f.max_iters;
    cfg.residual_tol = f.tol;
    return cfg;
}

const char* status_name(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::MaxIters: return "MaxIters";
        default: return "Diverged";
    }
}

int cmd_table1(int N, const SolveFlags& flags) {
    static const double pairs[7][2] = {{1, 1}, {2, 1}, {1, 2}, {3, 1}, {1, 3}, {3, 2}, {2, 3}};
    std::printf("%-6s %-22s %-14s %-14s %s\n", "r,d", "numerical area", "ruled2 area",
                "ruled1 area", "status");
    for (auto& p : pairs) {
        double r = p[0], d = p[1];
        SolverConfig cfg = to_solver_config(flags);
        QuadBoundary q = make_quad(Config::Ruled1, r, d);
        auto [grid, rep] = solve(q, N, cfg);
        double area = 0.0, unc = 0.0;
        std::string num = "-";
        if (rep.status != SolveStatus::Diverged) {
            area = area_biquadratic(grid, 1e-9);
            HeightGrid g2 = grid;
            SolverConfig one = cfg;
            newton_step(g2, one);
            unc = std::fabs(area_biquadratic(g2, 1e-9) - area);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.4f(%.0e)", area, unc);
            num = buf;
        }
        std::printf("%g, %g  %-22s %-14.9f %-14.9f %s\n", r, d, num.c_str(), ruled2_area(r, d),
                    ruled1_area(r, d), status_name(rep.status));
    }
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"minimal surfaces over skew quadrilaterals"};
    app.require_subcommand(1);
    // command-line flags override values from an optional key=value file
    app.set_config("--params", "", "key=value parameter file");

    SolveFlags flags;
    std::string out, format = "csv", in_path, piece = "both";
    double margin = 0.02, areas_tol = 1e-9;
    int n_r = 32, n_alpha = 32;

    auto* c_table = app.add_subcommand("table1", "minimal vs ruled areas for the seven (r,d) pairs");
    add_solve_flags(c_table, flags);

    auto* c_solve = app.add_subcommand("solve", "run the Newton solver from the bilinear seed");
    add_solve_flags(c_solve, flags);
    c_solve->add_option("--out", out, "output CSV grid path");
    c_solve->add_option("--format", format, "csv|report");

    auto* c_areas = app.add_subcommand("areas", "area estimators for a grid file or a fresh seed");
    add_solve_flags(c_areas, flags);
    c_areas->add_option("--in", in_path, "input CSV grid (otherwise a bilinear seed is built)");
    c_areas->add_option("--quad-tol", areas_tol, "biquadratic quadrature tolerance");

    auto* c_schwarz = app.add_subcommand("schwarz", "generate the exact Schwarz surface");
    c_schwarz->add_option("--piece", piece, "front-right|front-left|both");
    c_schwarz->add_option("--margin", margin, "excluded band around corner rays (radians)");
    c_schwarz->add_option("--n-r", n_r, "radial samples per ray");
    c_schwarz->add_option("--n-alpha", n_alpha, "angular samples per piece");
    c_schwarz->add_option("--out", out, "output path");
    c_schwarz->add_option("--format", format, "obj|csv");

    auto* c_export = app.add_subcommand("export", "convert a CSV grid to an OBJ triangle mesh");
    c_export->add_option("--in", in_path, "input CSV grid")->required();
    c_export->add_option("--out", out, "output OBJ path")->required();

    CLI11_PARSE(app, argc, argv);

    if (c_table->parsed()) return cmd_table1(flags.n, flags);

    if (c_solve->parsed()) {
        QuadBoundary q = make_quad(parse_config(flags.config), flags.r, flags.d);
        auto [grid, rep] = solve(q, flags.n, to_solver_config(flags));
        if (!out.empty()) write_grid_csv(out, grid);
        Report rp;
        rp.add("status", status_name(rep.status));
        rp.add("iterations", double(rep.iterations));
        if (!rep.max_residual.empty()) {
            rp.add("final_max_residual", rep.max_residual.back());
            rp.add("final_max_step", rep.max_step.back());
        }
        if (!out.empty()) rp.add("grid", out);
        rp.write(std::cout);
        return rep.status == SolveStatus::Converged ? 0 : 3;
    }

    if (c_areas->parsed()) {
        HeightGrid g = in_path.empty()
                           ? bilinear_height_grid(make_quad(parse_config(flags.config), flags.r,
                                                            flags.d),
                                                  flags.n)
                           : read_grid_csv(in_path);
        AreaReport a = area_report(g, areas_tol);
        Report rp;
        rp.add("N", double(a.order));
        rp.add("gradient_sum", a.gradient_sum);
        rp.add("triangulation", a.triangulation);
        if (a.order % 2 == 0) rp.add("biquadratic", a.biquadratic);
        if (a.analytic_ruled) rp.add("analytic_ruled", *a.analytic_ruled);
        rp.write(std::cout);
        return 0;
    }

    if (c_schwarz->parsed()) {
        std::vector<SchwarzPatch> patches;
        if (piece == "front-right" || piece == "both")
            patches.push_back(schwarz_mesh(Piece::FrontRight, n_r, n_alpha, margin));
        if (piece == "front-left" || piece == "both")
            patches.push_back(schwarz_mesh(Piece::FrontLeft, n_r, n_alpha, margin));
        if (patches.empty()) throw std::domain_error("unknown piece: " + piece);
        if (!out.empty()) {
            if (format == "obj")
                write_patch_obj(out, patches);
            else if (format == "csv")
                write_patch_csv(out, patches);
            else
                throw std::domain_error("unknown format: " + format);
        }
        KappaScale k = compute_kappa();
        Report rp;
        rp.add("edge_integral", k.edge_integral);
        rp.add("kappa", k.kappa);
        double zmin = 0, zmax = 0;
        for (const auto& p : patches)
            for (const Point3& pt : p.points) {
                zmin = std::min(zmin, pt.z);
                zmax = std::max(zmax, pt.z);
            }
        rp.add("z_min", zmin);
        rp.add("z_max", zmax);
        if (!out.empty()) rp.add("mesh", out);
        rp.write(std::cout);
        return 0;
    }

    if (c_export->parsed()) {
        HeightGrid g = read_grid_csv(in_path);
        write_grid_obj(out, g);
        return 0;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
