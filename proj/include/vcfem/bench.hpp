#pragma once
#include <vector>

#include "vcfem/config.hpp"
#include "vcfem/report.hpp"

namespace vcfem {

// Everything a caller needs after a run: the discretization, the retained
// snapshots (always including n = 0 and n = N) and the per-step time series.
struct RunResult {
    Mesh mesh;
    DofMap dofmap;
    std::vector<TimeState> snapshots;
    std::vector<TimeseriesRow> timeseries;

    const TimeState& final_state() const { return snapshots.back(); }
};

// Execute a configured run (no file output).
RunResult run_simulation(const SimConfig& cfg);

// Write fields_t0.vtk, fields_tN.vtk and timeseries.csv into cfg.out_dir.
void write_run_outputs(const SimConfig& cfg, const RunResult& result);

// Where convergence errors are measured: at the final time (the only node
// shared by every time grid) or as the max over the time nodes common to
// the sweep run and the reference run.
enum class ErrorTime { Final, MaxOverCommonNodes };

// Convergence study on the square-domain benchmark: runs the reference
// resolution once (or reuses a caller-provided run), then sweeps the h or k
// ladder, transferring every solution to the reference mesh and measuring
// relative errors.
ConvergenceReport run_convergence(char sweep, const std::vector<double>& values, double fixed,
                                  double ref, const RunResult* ref_run = nullptr,
                                  const SolverTolerances* tol = nullptr,
                                  ErrorTime error_time = ErrorTime::Final);

}  // namespace vcfem
