#pragma once
#include <vector>

#include "vcfem/assembly.hpp"
#include "vcfem/friction.hpp"

namespace vcfem {

struct SolverTolerances {
    double cg_rel_tol = 1e-12;
    double qp_rel_tol = 1e-10;
    double newton_grad_tol = 1e-9;  // scaled by max(1, ||rhs||)
    int cg_max_iters = 50000;
    int qp_max_iters = 500000;
    int newton_max_iters = 200;
    double rho_init = 1e-2;     // regularization continuation start
    double rho_divisor = 10.0;  // divide until rho <= friction.rho
    double sor_relaxation = 1.5;

    void validate() const {
        if (!(cg_rel_tol > 0.0 && qp_rel_tol > 0.0 && newton_grad_tol > 0.0))
            throw ConfigError("solver tolerances must be positive");
        if (!(rho_init > 0.0 && rho_divisor > 1.0))
            throw ConfigError("regularization schedule must decrease from a positive start");
        if (!(sor_relaxation > 0.0 && sor_relaxation < 2.0))
            throw ConfigError("SOR relaxation must lie in (0, 2)");
    }
};

// Jacobi-preconditioned conjugate gradients; returns x with
// ||A x - b|| <= tol * ||b||.
std::vector<double> cg_solve(const SparseSpd& A, const std::vector<double>& b, double tol,
                             int max_iters, const std::vector<double>* x0 = nullptr);

// min 1/2 x^T H x - b^T x subject to lower <= x <= upper, by projected SOR.
// Terminates when the projected-gradient norm drops below tol * ||b||;
// the iterate satisfies the bounds exactly at all times.
std::vector<double> solve_box_qp(const SparseSpd& H, const std::vector<double>& b, double lower,
                                 double upper, double tol, double relaxation, int max_iters,
                                 const std::vector<double>* x0 = nullptr);

// One quasistatic velocity step: minimize
//   E(w) = 1/2 w^T K w - rhs^T w + integral of j(w_t) over the contact boundary
// via regularization continuation and damped Newton. With an empty contact
// boundary this reduces to a single CG solve.
std::vector<double> solve_velocity_step(const SparseSpd& K, const std::vector<double>& rhs,
                                        const Gamma3Quadrature& quad, const FrictionModel& model,
                                        const SolverTolerances& tol,
                                        const std::vector<double>* x0 = nullptr);

// Regularized energy at a trial point (diagnostics and tests).
double velocity_energy(const SparseSpd& K, const std::vector<double>& rhs,
                       const Gamma3Quadrature& quad, const FrictionModel& model, double rho,
                       const std::vector<double>& w);

// Nonsmooth energy with the exact friction potential.
double velocity_energy_exact(const SparseSpd& K, const std::vector<double>& rhs,
                             const Gamma3Quadrature& quad, const FrictionModel& model,
                             const std::vector<double>& w);

}  // namespace vcfem
