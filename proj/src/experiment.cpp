#include "wavescat/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace wavescat {

namespace {

namespace fs = std::filesystem;

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

template <typename Real>
struct Solutions {
    std::optional<OriResult<Real>> ori;
    std::optional<CellResult<Real>> red;
    std::optional<CellResult<Real>> ie;
};

// slice layer whose coordinate is nearest side/2; ties go up
int center_layer(int count, double cell, double first_coord_offset, double side) {
    const double target = 0.5 * side;
    auto idx = static_cast<int>(std::llround((target - first_coord_offset) / cell));
    return std::clamp(idx, 0, count - 1);
}

template <typename Real>
FormulationRun base_run(Formulation f, const SolveReport<Real>& rep, std::int64_t unknowns) {
    FormulationRun run;
    run.formulation = f;
    run.unknowns = unknowns;
    run.converged = rep.converged;
    run.status = rep.status;
    run.iterations = rep.iterations;
    run.rel_residual = rep.rel_residual;
    run.seconds = rep.seconds;
    run.message = rep.message;
    return run;
}

template <typename Real>
void extract_cube_slice(FormulationRun& run, const std::vector<std::complex<Real>>& values, int side, double cell,
                        double first_coord, double domain_side) {
    run.slice_index = center_layer(side, cell, first_coord, domain_side);
    run.slice_coord = first_coord + run.slice_index * cell;
    run.slice_side = side;
    run.slice_values.resize(static_cast<std::size_t>(side) * side);
    const std::size_t base = static_cast<std::size_t>(run.slice_index) * side * side;
    for (std::size_t i = 0; i < run.slice_values.size(); ++i) {
        const auto& v = values[base + i];
        run.slice_values[i] = Cplx(static_cast<double>(v.real()), static_cast<double>(v.imag()));
    }
}

template <typename Real>
ExperimentOutcome compute_impl(const ExperimentConfig& cfg, std::ostream& log) {
    ExperimentOutcome out;
    const MaterialSpec spec = make_material(cfg);
    out.k = spec.k;
    out.h = spec.h;
    log << "k = " << fmt("%.9g", spec.k) << ", h = " << format_complex(spec.h) << "\n";

    const auto wants = [&](Formulation f) {
        return std::find(cfg.formulations.begin(), cfg.formulations.end(), f) != cfg.formulations.end();
    };

    std::optional<UniformLattice> lat;
    if (wants(Formulation::ORI)) {
        lat = cfg.b ? build_lattice_from_b(*cfg.b, cfg.kappa, cfg.domain_side, cfg.origin)
                    : build_lattice_from_count(*cfg.particles, cfg.kappa, cfg.domain_side, cfg.origin);
        const double lambda = 2.0 * std::numbers::pi / spec.k;
        if (lat->d / lambda > 0.1)
            warn("particle spacing is not small against the wavelength: d/lambda = " + fmt("%.3g", lat->d / lambda));
    }

    std::vector<double> ticks = cfg.report_ticks;
    const std::vector<Vec3> grid = report_grid_points(ticks, cfg.origin);

    KernelCache<Real> cache;
    SolveOptions opts;
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;
    opts.restart = cfg.restart;

    Solutions<Real> sol;
    for (Formulation f : cfg.formulations) {
        switch (f) {
            case Formulation::ORI: {
                log << "ORI: M = " << lat->particle_count() << " (b = " << lat->b << ")\n";
                sol.ori = solve_ori<Real>(*lat, spec, opts, cfg.pad, &cache);
                FormulationRun run = base_run(Formulation::ORI, sol.ori->report, lat->particle_count());
                run.grid_points = grid;
                const FieldCube<Real> q = charges(sol.ori->u, *lat, spec);
                run.grid_values = evaluate_field_many(grid, q, *lat, spec);
                extract_cube_slice(run, sol.ori->u.values, lat->b, lat->d, lat->origin.x, cfg.domain_side);
                out.runs.push_back(std::move(run));
                break;
            }
            case Formulation::RED: {
                const SubcubePartition part =
                    lat ? partition(*lat, cfg.p_side) : make_partition(cfg.domain_side, cfg.origin, cfg.p_side);
                log << "RED: P = " << part.count() << " (p_side = " << part.p_side << ")\n";
                sol.red = solve_red<Real>(part, spec, opts);
                FormulationRun run = base_run(Formulation::RED, sol.red->report, part.count());
                run.grid_points = grid;
                run.grid_values = cell_field_values(grid, sol.red->field(), sol.red->coupling, spec);
                extract_cube_slice(run, sol.red->u, sol.red->side, sol.red->cell,
                                   sol.red->origin.x + 0.5 * sol.red->cell, cfg.domain_side);
                out.runs.push_back(std::move(run));
                break;
            }
            case Formulation::IE: {
                log << "IE: C = " << static_cast<std::int64_t>(cfg.c_side) * cfg.c_side * cfg.c_side
                    << " (c_side = " << cfg.c_side << ")\n";
                sol.ie = solve_ie<Real>(cfg.c_side, cfg.domain_side, cfg.origin, spec, opts, cfg.pad, &cache);
                FormulationRun run = base_run(Formulation::IE, sol.ie->report, sol.ie->u.size());
                run.grid_points = grid;
                run.grid_values = cell_field_values(grid, sol.ie->field(), sol.ie->coupling, spec);
                extract_cube_slice(run, sol.ie->u, sol.ie->side, sol.ie->cell,
                                   sol.ie->origin.x + 0.5 * sol.ie->cell, cfg.domain_side);
                out.runs.push_back(std::move(run));
                break;
            }
        }
        const FormulationRun& r = out.runs.back();
        log << "  " << to_string(r.formulation) << ": " << (r.converged ? "converged" : to_string(r.status))
            << ", iterations = " << r.iterations << ", rel_residual = " << fmt("%.6e", r.rel_residual)
            << ", seconds = " << fmt("%.2f", r.seconds) << "\n";
        out.all_converged = out.all_converged && r.converged;
    }

    // pairwise differences, aggregated over the reduced-system subcubes
    const int pairs = (sol.ori && sol.red ? 1 : 0) + (sol.red && sol.ie ? 1 : 0) + (sol.ori && sol.ie ? 1 : 0);
    if (pairs == 0) return out;
    const SubcubePartition agg =
        lat ? partition(*lat, cfg.p_side) : make_partition(cfg.domain_side, cfg.origin, cfg.p_side);
    if (sol.ori && sol.red) {
        out.diffs.push_back(diff_ori_red(sol.ori->lat, to_double(sol.ori->u), sol.red->field(), agg));
        log << "diff ORI-RED: " << fmt("%.4f", round4(out.diffs.back().metric)) << "\n";
    }
    if (sol.red && sol.ie) {
        const CellField ie_field = sol.ie->field();
        std::vector<Vec3> centers;
        centers.reserve(ie_field.values.size());
        for (int c1 = 0; c1 < ie_field.side; ++c1)
            for (int c2 = 0; c2 < ie_field.side; ++c2)
                for (int c3 = 0; c3 < ie_field.side; ++c3) centers.push_back(ie_field.center({c1, c2, c3}));
        out.diffs.push_back(diff_points_vs_cells(centers, ie_field.values, sol.red->field(), agg, "RED-IE"));
        log << "diff RED-IE: " << fmt("%.4f", round4(out.diffs.back().metric)) << "\n";
    }
    if (sol.ori && sol.ie) {
        out.diffs.push_back(diff_lattice_vs_cells(sol.ori->lat, to_double(sol.ori->u), sol.ie->field(), agg, "ORI-IE"));
        log << "diff ORI-IE: " << fmt("%.4f", round4(out.diffs.back().metric)) << "\n";
    }
    return out;
}

void write_grid_csv(const fs::path& path, const FormulationRun& run, const std::string& hash) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << "# config=" << hash << " formulation=" << to_string(run.formulation) << "\n";
    os << "x,y,z,re,im\n";
    for (std::size_t i = 0; i < run.grid_points.size(); ++i) {
        const Vec3& p = run.grid_points[i];
        os << fmt("%.10g", p.x) << ',' << fmt("%.10g", p.y) << ',' << fmt("%.10g", p.z) << ','
           << fmt("%.10e", run.grid_values[i].real()) << ',' << fmt("%.10e", run.grid_values[i].imag()) << "\n";
    }
}

void write_slice_csv(const fs::path& path, const FormulationRun& run, const std::string& hash) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << "# config=" << hash << " formulation=" << to_string(run.formulation) << " plane_x="
       << fmt("%.10g", run.slice_coord) << " plane_index=" << run.slice_index << "\n";
    os << "i,j,re,im\n";
    for (int i = 0; i < run.slice_side; ++i)
        for (int j = 0; j < run.slice_side; ++j) {
            const Cplx v = run.slice_values[static_cast<std::size_t>(i) * run.slice_side + j];
            os << i << ',' << j << ',' << fmt("%.10e", v.real()) << ',' << fmt("%.10e", v.imag()) << "\n";
        }
}

void write_solve_txt(const fs::path& path, const FormulationRun& run, const std::string& hash) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << "config = " << hash << "\n"
       << "formulation = " << to_string(run.formulation) << "\n"
       << "unknowns = " << run.unknowns << "\n"
       << "converged = " << (run.converged ? "true" : "false") << "\n"
       << "status = " << to_string(run.status) << "\n"
       << "iterations = " << run.iterations << "\n"
       << "rel_residual = " << fmt("%.10e", run.rel_residual) << "\n"
       << "seconds = " << fmt("%.3f", run.seconds) << "\n";
    if (!run.message.empty()) os << "message = " << run.message << "\n";
}

void write_diff_csv(const fs::path& path, const DiffReport& diff, const std::string& hash) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    os << "# config=" << hash << " pair=" << diff.pair << " metric=" << fmt("%.10e", diff.metric)
       << " metric_rounded=" << fmt("%.4f", round4(diff.metric)) << "\n";
    os << "subcube,mean_abs_diff\n";
    for (const auto& [q, mean] : diff.per_subcube) os << q << ',' << fmt("%.10e", mean) << "\n";
}

}  // namespace

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

ExperimentOutcome compute_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    if (cfg.precision == Precision::Single) return compute_impl<float>(cfg, log);
    return compute_impl<double>(cfg, log);
}

int write_artifacts(const ExperimentOutcome& outcome, const ExperimentConfig& cfg, std::ostream& log) {
    const std::string hash = hash_hex(cfg.hash);
    try {
        fs::create_directories(cfg.outdir);
        const fs::path dir(cfg.outdir);

        std::vector<std::string> files;
        for (const FormulationRun& run : outcome.runs) {
            const std::string tag = to_string(run.formulation);
            write_grid_csv(dir / (tag + "_report_grid.csv"), run, hash);
            write_slice_csv(dir / (tag + "_slice.csv"), run, hash);
            write_solve_txt(dir / (tag + "_solve.txt"), run, hash);
            files.push_back(tag + "_report_grid.csv");
            files.push_back(tag + "_slice.csv");
            files.push_back(tag + "_solve.txt");
        }
        for (const DiffReport& diff : outcome.diffs) {
            std::string name = "diff_" + diff.pair + ".csv";
            std::replace(name.begin(), name.end(), '-', '_');
            write_diff_csv(dir / name, diff, hash);
            files.push_back(name);
        }

        std::ofstream manifest(dir / "MANIFEST.txt");
        if (!manifest) throw std::runtime_error("cannot write MANIFEST.txt");
        manifest << "config = " << hash << "\n";
        manifest << "k = " << fmt("%.12g", outcome.k) << "\n";
        manifest << "h = " << format_complex(outcome.h) << "\n";
        manifest << "status = " << (outcome.all_converged ? "ok" : "FAILED: solver did not converge") << "\n";
        for (const FormulationRun& run : outcome.runs)
            manifest << "formulation " << to_string(run.formulation) << " = "
                     << (run.converged ? "converged" : to_string(run.status)) << " (iterations " << run.iterations
                     << ", rel_residual " << fmt("%.6e", run.rel_residual) << ")\n";
        for (const DiffReport& diff : outcome.diffs)
            manifest << "diff " << diff.pair << " = " << fmt("%.4f", round4(diff.metric)) << "\n";
        for (const std::string& f : files) manifest << "file " << f << "\n";
    } catch (const std::exception& e) {
        log << "error: " << e.what() << "\n";
        return ExitIo;
    }
    return outcome.all_converged ? ExitOk : ExitNoConvergence;
}

int run_experiment(const ExperimentConfig& cfg, std::ostream& log) {
    const ExperimentOutcome outcome = compute_experiment(cfg, log);
    const int code = write_artifacts(outcome, cfg, log);
    if (code == ExitNoConvergence) log << "error: a solver did not converge; partial artifacts kept\n";
    return code;
}

int run_design(const ExperimentConfig& cfg, std::ostream& out) {
    if (!cfg.n_target) throw ConfigError("n_target", "the design recipe needs a target refraction coefficient");
    MaterialSpec spec = make_material(cfg);
    // design from the target regardless of any explicit h
    spec.h = h_from_target_n(*cfg.n_target, spec);
    validate(spec);
    const Cplx n_check = n_from_h(spec);

    std::ostringstream text;
    text << "config = " << hash_hex(cfg.hash) << "\n"
         << "k = " << fmt("%.12g", spec.k) << "\n"
         << "n0 = " << format_complex(spec.n0) << "\n"
         << "n_target = " << format_complex(*cfg.n_target) << "\n"
         << "h = " << fmt("%.5E", spec.h.real()) << " + i" << fmt("%.5E", spec.h.imag()) << "\n"
         << "round_trip_n = " << format_complex(n_check) << "\n";
    out << text.str();

    try {
        fs::create_directories(cfg.outdir);
        std::ofstream os(fs::path(cfg.outdir) / "design.txt");
        if (!os) throw std::runtime_error("cannot write design.txt");
        os << text.str();
    } catch (const std::exception& e) {
        out << "error: " << e.what() << "\n";
        return ExitIo;
    }
    return ExitOk;
}

}  // namespace wavescat
