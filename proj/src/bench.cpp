#include "vcfem/bench.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "vcfem/vtk.hpp"

namespace vcfem {

RunResult run_simulation(const SimConfig& cfg) {
    cfg.validate();

    RunResult result;
    result.mesh = build_structured_mesh(cfg.width, cfg.height, cfg.h);
    classify_boundary(result.mesh, cfg.boundary);
    result.dofmap = build_velocity_dofmap(result.mesh);

    const Mesh& mesh = result.mesh;
    const double zeta0 = cfg.zeta0;
    const TimeGrid grid = cfg.grid();

    run_timestepper(
        mesh, result.dofmap, cfg.material, cfg.friction, cfg.load, grid, cfg.tol,
        [](double, double) { return std::array<double, 2>{0.0, 0.0}; },
        [zeta0](double, double) { return zeta0; },
        [&](const TimeState& state) {
            TimeseriesRow row;
            row.n = state.n;
            row.t = state.t;
            const auto [lo, hi] = std::minmax_element(state.zeta.v.begin(), state.zeta.v.end());
            row.min_zeta = *lo;
            row.max_zeta = *hi;
            row.w_V = state.n == 0 ? 0.0 : v_norm(mesh, state.w);
            result.timeseries.push_back(row);
            if (cfg.snapshots.keep(state.n, grid.N)) result.snapshots.push_back(state);
        });
    return result;
}

void write_run_outputs(const SimConfig& cfg, const RunResult& result) {
    if (cfg.out_dir.empty()) throw ConfigError("output directory not set");
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path dir(cfg.out_dir);
    write_vtk((dir / "fields_t0.vtk").string(), result.mesh, result.snapshots.front());
    write_vtk((dir / "fields_tN.vtk").string(), result.mesh, result.final_state());
    write_timeseries_csv((dir / "timeseries.csv").string(), result.timeseries);
}

namespace {

SimConfig sweep_entry_config(char sweep, double value, double fixed,
                             const SolverTolerances* tol, ErrorTime error_time) {
    SimConfig cfg =
        sweep == 'h' ? benchmark_config(value, fixed) : benchmark_config(fixed, value);
    cfg.snapshots.policy = error_time == ErrorTime::Final ? SnapshotSpec::Policy::Final
                                                          : SnapshotSpec::Policy::All;
    if (tol) cfg.tol = *tol;
    return cfg;
}

struct ErrorPair {
    double w;
    double zeta;
};

ErrorPair state_errors(const TimeState& state, const Mesh& mesh, const TimeState& ref_state,
                       const Mesh& ref_mesh) {
    VectorField w_on_ref = transfer_to_fine(state.w, mesh, ref_mesh);
    ScalarField z_on_ref = transfer_to_fine(state.zeta, mesh, ref_mesh);
    for (size_t i = 0; i < w_on_ref.v.size(); ++i) w_on_ref.v[i] -= ref_state.w.v[i];
    for (size_t i = 0; i < z_on_ref.v.size(); ++i) z_on_ref.v[i] -= ref_state.zeta.v[i];
    return {v_norm(ref_mesh, w_on_ref), z0_norm(ref_mesh, z_on_ref)};
}

}  // namespace

ConvergenceReport run_convergence(char sweep, const std::vector<double>& values, double fixed,
                                  double ref, const RunResult* ref_run,
                                  const SolverTolerances* tol, ErrorTime error_time) {
    if (sweep != 'h' && sweep != 'k')
        throw ConfigError("sweep variable must be 'h' or 'k'");
    if (values.size() < 2)
        throw ConfigError("convergence study needs at least two sweep values");
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    for (size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] >= sorted[i - 1])
            throw ConfigError("sweep values must strictly refine");

    RunResult local_ref;
    if (!ref_run) {
        local_ref = run_simulation(sweep_entry_config(sweep, ref, fixed, tol, error_time));
        ref_run = &local_ref;
    }
    const Mesh& ref_mesh = ref_run->mesh;
    const TimeState& ref_state = ref_run->final_state();
    const int ref_steps = ref_run->final_state().n;
    if (error_time == ErrorTime::MaxOverCommonNodes &&
        static_cast<int>(ref_run->snapshots.size()) != ref_steps + 1)
        throw ConfigError("max-over-nodes errors need every reference snapshot retained");

    ConvergenceReport report;
    report.sweep = sweep;
    report.fixed_value = fixed;
    report.ref_value = ref;
    report.ref_norm_w_V = v_norm(ref_mesh, ref_state.w);
    report.ref_norm_zeta_Z0 = z0_norm(ref_mesh, ref_state.zeta);

    std::vector<double> errs_w, errs_z;
    for (double value : sorted) {
        const RunResult run =
            run_simulation(sweep_entry_config(sweep, value, fixed, tol, error_time));

        ErrorPair err{};
        if (error_time == ErrorTime::Final) {
            err = state_errors(run.final_state(), run.mesh, ref_state, ref_mesh);
        } else {
            // max over the time nodes both grids share (t = n k = m k_ref)
            const int steps = run.final_state().n;
            for (const auto& state : run.snapshots) {
                if (state.n == 0) continue;
                const long num = static_cast<long>(state.n) * ref_steps;
                if (num % steps != 0) continue;
                const TimeState& ref_at = ref_run->snapshots[num / steps];
                const ErrorPair e = state_errors(state, run.mesh, ref_at, ref_mesh);
                err.w = std::max(err.w, e.w);
                err.zeta = std::max(err.zeta, e.zeta);
            }
        }

        ConvergenceReport::Row row;
        row.value = value;
        row.rel_err_w_V = err.w / report.ref_norm_w_V;
        row.rel_err_zeta_Z0 = err.zeta / report.ref_norm_zeta_Z0;
        errs_w.push_back(row.rel_err_w_V);
        errs_z.push_back(row.rel_err_zeta_Z0);
        report.rows.push_back(row);
    }

    // Orders stay NaN when a self-comparison produced an exact zero.
    const bool all_positive =
        std::all_of(errs_w.begin(), errs_w.end(), [](double e) { return e > 0.0; }) &&
        std::all_of(errs_z.begin(), errs_z.end(), [](double e) { return e > 0.0; });
    if (all_positive) {
        const std::vector<double> ow = compute_orders(errs_w);
        const std::vector<double> oz = compute_orders(errs_z);
        for (size_t i = 1; i < report.rows.size(); ++i) {
            report.rows[i].order_w = ow[i - 1];
            report.rows[i].order_zeta = oz[i - 1];
        }
    }
    return report;
}

}  // namespace vcfem
