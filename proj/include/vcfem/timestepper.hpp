#pragma once
#include <functional>
#include <vector>

#include "vcfem/assembly.hpp"
#include "vcfem/solvers.hpp"

namespace vcfem {

struct TimeGrid {
    double T = 1.0;
    int N = 1;
    double k() const { return T / N; }

    void validate() const {
        if (!(T > 0.0) || N < 1) throw ConfigError("time grid requires T > 0 and N >= 1");
    }
};

// Solution snapshot at one time level. The velocity and stress are defined
// from step 1 on; at n = 0 they are zero-initialized placeholders.
struct TimeState {
    int n = 0;
    double t = 0.0;
    VectorField u;
    VectorField w;
    ScalarField zeta;
    ElementTensorField sigma;
};

// Operators that stay fixed along a run: viscosity matrix on free unknowns,
// damage mass/stiffness, their backward-Euler combination, the contact
// quadrature and the (time-independent) load.
struct Assemblies {
    SparseSpd K;
    SparseSpd M;
    SparseSpd S;
    SparseSpd H_damage;  // M / k + S
    Gamma3Quadrature quad;
    std::vector<double> load_free;
};

Assemblies build_assemblies(const Mesh& mesh, const DofMap& dm, const MaterialParams& mat,
                            const LoadSpec& load, const TimeGrid& grid);

using ScalarInitial = std::function<double(double, double)>;
using VectorInitial = std::function<std::array<double, 2>(double, double)>;

// Nodal interpolants of the initial data; velocity constraints are applied
// to u0 and zeta0 is clamped into [0,1] (with a warning when clamping was
// actually needed beyond roundoff).
TimeState initial_state(const Mesh& mesh, const DofMap& dm, const VectorInitial& u0,
                        const ScalarInitial& zeta0);

// One backward-Euler step of the coupled scheme:
//   1. rhs = load - elastic residual at (u_{n-1}, zeta_{n-1})
//   2. velocity w_n from the frictional minimization
//   3. u_n = u_{n-1} + k w_n
//   4. zeta_n from the box-constrained damage system
//   5. elementwise stress from (w_n, u_{n-1}, zeta_{n-1})
TimeState step(const TimeState& prev, const TimeGrid& grid, const Assemblies& ops,
               const Mesh& mesh, const DofMap& dm, const MaterialParams& mat,
               const FrictionModel& friction, const SolverTolerances& tol);

// March N steps from the initial state; the callback sees every state
// (including n = 0) and decides what to retain.
void run_timestepper(const Mesh& mesh, const DofMap& dm, const MaterialParams& mat,
                     const FrictionModel& friction, const LoadSpec& load, const TimeGrid& grid,
                     const SolverTolerances& tol, const VectorInitial& u0,
                     const ScalarInitial& zeta0,
                     const std::function<void(const TimeState&)>& on_state);

// Stress field of the discrete constitutive relation at step n.
ElementTensorField stress_update(const Mesh& mesh, const VectorField& w_n,
                                 const VectorField& u_prev, const ScalarField& zeta_prev,
                                 const MaterialParams& mat);

}  // namespace vcfem
