#include "vcfem/timestepper.hpp"

#include <cmath>
#include <iostream>
#include <string>

namespace vcfem {

Assemblies build_assemblies(const Mesh& mesh, const DofMap& dm, const MaterialParams& mat,
                            const LoadSpec& load, const TimeGrid& grid) {
    Assemblies ops;
    ops.K = assemble_viscosity(mesh, dm, mat);
    auto [mass, stiff] = assemble_damage_operators(mesh, mat);
    ops.M = std::move(mass);
    ops.S = std::move(stiff);

    // M/k + S; both matrices share the P1 vertex-neighbour pattern, so the
    // stiffness pattern (a superset through identical element loops) hosts it.
    ops.H_damage = ops.S;
    const double inv_k = 1.0 / grid.k();
    for (int r = 0; r < ops.M.n; ++r)
        for (int k = ops.M.row_ptr[r]; k < ops.M.row_ptr[r + 1]; ++k)
            ops.H_damage.at(r, ops.M.col_idx[k]) += inv_k * ops.M.vals[k];
    ops.H_damage.rebuild_diag();

    ops.quad = gamma3_quadrature(mesh, dm);
    ops.load_free = assemble_load(load, mesh, dm);
    return ops;
}

TimeState initial_state(const Mesh& mesh, const DofMap& dm, const VectorInitial& u0,
                        const ScalarInitial& zeta0) {
    TimeState s;
    s.n = 0;
    s.t = 0.0;
    const size_t nv = mesh.vertices.size();
    s.u.v.assign(2 * nv, 0.0);
    s.w.v.assign(2 * nv, 0.0);
    s.zeta.v.assign(nv, 0.0);
    s.sigma.t.assign(static_cast<size_t>(mesh.num_triangles()), SymTensor2{});

    bool clamped = false;
    for (size_t v = 0; v < nv; ++v) {
        const double x = mesh.vertices[v][0];
        const double y = mesh.vertices[v][1];
        const auto uv = u0(x, y);
        s.u.v[2 * v] = dm.dof(static_cast<int>(v), 0) >= 0 ? uv[0] : 0.0;
        s.u.v[2 * v + 1] = dm.dof(static_cast<int>(v), 1) >= 0 ? uv[1] : 0.0;
        double z = zeta0(x, y);
        if (z < -1e-12 || z > 1.0 + 1e-12) clamped = true;
        s.zeta.v[v] = std::min(1.0, std::max(0.0, z));
    }
    if (clamped)
        std::cerr << "warning: initial damage field clamped into [0,1]\n";
    return s;
}

ElementTensorField stress_update(const Mesh& mesh, const VectorField& w_n,
                                 const VectorField& u_prev, const ScalarField& zeta_prev,
                                 const MaterialParams& mat) {
    ElementTensorField sigma;
    sigma.t.resize(static_cast<size_t>(mesh.num_triangles()));
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const double zbar =
            (zeta_prev.v[tri[0]] + zeta_prev.v[tri[1]] + zeta_prev.v[tri[2]]) / 3.0;
        sigma.t[t] = apply_viscosity_A(strain(mesh, w_n, t), mat) +
                     apply_elasticity(strain(mesh, u_prev, t), zbar, mat);
    }
    return sigma;
}

TimeState step(const TimeState& prev, const TimeGrid& grid, const Assemblies& ops,
               const Mesh& mesh, const DofMap& dm, const MaterialParams& mat,
               const FrictionModel& friction, const SolverTolerances& tol) {
    TimeState next;
    next.n = prev.n + 1;
    next.t = next.n * grid.k();

    try {
        // velocity: rhs = f_n - elastic residual of the lagged state
        std::vector<double> rhs = ops.load_free;
        const std::vector<double> elast =
            assemble_elastic_residual(prev.u, prev.zeta, mesh, dm, mat);
        for (size_t i = 0; i < rhs.size(); ++i) rhs[i] -= elast[i];

        const std::vector<double> w_prev_free = gather_free(dm, prev.w);
        const std::vector<double> w_free =
            solve_velocity_step(ops.K, rhs, ops.quad, friction, tol, &w_prev_free);
        next.w = scatter_free(dm, w_free);

        // displacement update
        const double k = grid.k();
        next.u.v.resize(prev.u.v.size());
        for (size_t i = 0; i < prev.u.v.size(); ++i)
            next.u.v[i] = prev.u.v[i] + k * next.w.v[i];

        // damage: (M/k + S) zeta = (M/k) zeta_prev + source, boxed into [0,1]
        std::vector<double> b = ops.M.matvec(prev.zeta.v);
        for (auto& v : b) v /= k;
        const std::vector<double> src =
            assemble_damage_source_load(prev.u, prev.zeta, mesh, mat);
        for (size_t i = 0; i < b.size(); ++i) b[i] += src[i];
        next.zeta.v = solve_box_qp(ops.H_damage, b, 0.0, 1.0, tol.qp_rel_tol,
                                   tol.sor_relaxation, tol.qp_max_iters, &prev.zeta.v);

        next.sigma = stress_update(mesh, next.w, prev.u, prev.zeta, mat);
    } catch (const SolverError& err) {
        throw SolverError("time step " + std::to_string(next.n) + " (t = " +
                          std::to_string(next.t) + "): " + err.what());
    }
    return next;
}

void run_timestepper(const Mesh& mesh, const DofMap& dm, const MaterialParams& mat,
                     const FrictionModel& friction, const LoadSpec& load, const TimeGrid& grid,
                     const SolverTolerances& tol, const VectorInitial& u0,
                     const ScalarInitial& zeta0,
                     const std::function<void(const TimeState&)>& on_state) {
    grid.validate();
    mat.validate();
    friction.validate();
    tol.validate();

    const Assemblies ops = build_assemblies(mesh, dm, mat, load, grid);
    TimeState state = initial_state(mesh, dm, u0, zeta0);
    on_state(state);
    for (int n = 1; n <= grid.N; ++n) {
        state = step(state, grid, ops, mesh, dm, mat, friction, tol);
        on_state(state);
    }
}

}  // namespace vcfem
