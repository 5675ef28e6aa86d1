#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "wavescat/compare.hpp"
#include "wavescat/config.hpp"
#include "wavescat/scattering.hpp"

namespace wavescat {

/// Exit codes of the batch front-end.
enum ExitCode : int { ExitOk = 0, ExitConfig = 2, ExitNoConvergence = 3, ExitIo = 4 };

struct FormulationRun {
    Formulation formulation = Formulation::ORI;
    std::int64_t unknowns = 0;
    bool converged = false;
    SolveStatus status = SolveStatus::Converged;
    int iterations = 0;
    double rel_residual = 0.0;
    double seconds = 0.0;
    std::string message;

    std::vector<Vec3> grid_points;
    std::vector<Cplx> grid_values;

    // central vertical slice: the solution layer whose first coordinate is
    // nearest domain_side/2, indexed (i,j) over the remaining two axes
    int slice_index = 0;
    double slice_coord = 0.0;
    int slice_side = 0;
    std::vector<Cplx> slice_values;
};

struct ExperimentOutcome {
    double k = 0.0;
    Cplx h;
    std::vector<FormulationRun> runs;
    std::vector<DiffReport> diffs;
    bool all_converged = true;
};

/// Solves every requested formulation and assembles report grids, slices and
/// pairwise differences. No file I/O; the CLI persists the outcome.
ExperimentOutcome compute_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// Persists an outcome under cfg.outdir (tables, slices, solve reports,
/// diffs, MANIFEST). Returns ExitOk, ExitNoConvergence or ExitIo.
int write_artifacts(const ExperimentOutcome& outcome, const ExperimentConfig& cfg, std::ostream& log);

/// compute + write; the `run` subcommand body.
int run_experiment(const ExperimentConfig& cfg, std::ostream& log);

/// The `design` subcommand body: h from the target refraction coefficient
/// plus the round-trip verification, printed and persisted.
int run_design(const ExperimentConfig& cfg, std::ostream& out);

std::string hash_hex(std::uint64_t h);

}  // namespace wavescat
