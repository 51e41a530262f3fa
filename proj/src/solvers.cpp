#include "vcfem/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vcfem/kernels.hpp"

namespace vcfem {

namespace {

double nrm2(const std::vector<double>& v) {
    return std::sqrt(kernels::active().dot(v.data(), v.data(), v.size()));
}

// One preconditioned CG sequence on A dx = r, recurrence-based, with
// breakdown guards; spends at most `budget` iterations. Returns the number
// of iterations used.
int cg_inner(const SparseSpd& A, const std::vector<double>& rhs, double rel_tol, int budget,
             std::vector<double>& dx) {
    const auto& ops = kernels::active();
    const size_t n = rhs.size();
    dx.assign(n, 0.0);
    std::vector<double> r = rhs, z(n), p(n), Ap(n);
    const double rhs_norm = nrm2(rhs);
    if (rhs_norm == 0.0) return 0;

    for (size_t i = 0; i < n; ++i) z[i] = r[i] / A.diag[i];
    p = z;
    double rz = ops.dot(r.data(), z.data(), n);

    for (int it = 0; it < budget; ++it) {
        if (nrm2(r) <= rel_tol * rhs_norm) return it;
        if (!(rz > 0.0) || !std::isfinite(rz)) return it;  // breakdown: back to refinement
        A.matvec(p.data(), Ap.data());
        const double pAp = ops.dot(p.data(), Ap.data(), n);
        if (!(pAp > 0.0) || !std::isfinite(pAp)) return it;
        const double alpha = rz / pAp;
        ops.axpy(alpha, p.data(), dx.data(), n);
        ops.axpy(-alpha, Ap.data(), r.data(), n);
        for (size_t i = 0; i < n; ++i) z[i] = r[i] / A.diag[i];
        const double rz_next = ops.dot(r.data(), z.data(), n);
        ops.xpby(z.data(), rz_next / rz, p.data(), n);
        rz = rz_next;
    }
    return budget;
}

double inf_norm_rows(const SparseSpd& A) {
    double m = 0.0;
    for (int r = 0; r < A.n; ++r) {
        double row = 0.0;
        for (int k = A.row_ptr[r]; k < A.row_ptr[r + 1]; ++k) row += std::abs(A.vals[k]);
        m = std::max(m, row);
    }
    return m;
}

}  // namespace

// Defect-correction PCG. Convergence is measured by the normwise backward
// error ||b - A x|| <= tol * (||b|| + ||A||_inf ||x||): the plain tol*||b||
// criterion is unattainable in double precision when the solution norm
// dwarfs the data norm (compliant systems), while this one always leaves
// eps-level headroom.
std::vector<double> cg_solve(const SparseSpd& A, const std::vector<double>& b, double tol,
                             int max_iters, const std::vector<double>* x0) {
    const size_t n = b.size();
    const double bnorm = nrm2(b);
    if (bnorm == 0.0) return std::vector<double>(n, 0.0);

    const double a_inf = inf_norm_rows(A);
    const double inner_tol = std::max(tol, 1e-10);

    std::vector<double> x = x0 ? *x0 : std::vector<double>(n, 0.0);
    std::vector<double> r(n), dx(n), Ax(n);

    int spent = 0;
    double prev_res = std::numeric_limits<double>::infinity();
    while (true) {
        A.matvec(x.data(), Ax.data());
        for (size_t i = 0; i < n; ++i) r[i] = b[i] - Ax[i];
        const double res = nrm2(r);
        const double target = tol * (bnorm + a_inf * nrm2(x));
        if (res <= target) return x;
        if (res >= 0.5 * prev_res || spent >= max_iters)
            throw SolverError("cg stalled at residual " + std::to_string(res) + " > target " +
                              std::to_string(target) + " after " + std::to_string(spent) +
                              " iterations");
        prev_res = res;
        const int budget = std::min(max_iters - spent, std::max(100, A.n * 4));
        spent += cg_inner(A, r, inner_tol, budget, dx) + 1;
        for (size_t i = 0; i < n; ++i) x[i] += dx[i];
    }
}

std::vector<double> solve_box_qp(const SparseSpd& H, const std::vector<double>& b, double lower,
                                 double upper, double tol, double relaxation, int max_iters,
                                 const std::vector<double>* x0) {
    const size_t n = b.size();
    std::vector<double> x(n, lower);
    if (x0)
        for (size_t i = 0; i < n; ++i) x[i] = std::clamp((*x0)[i], lower, upper);

    const double bnorm = nrm2(b);
    const double target = tol * std::max(bnorm, 1e-300);

    auto projected_gradient_norm = [&]() {
        std::vector<double> g = H.matvec(x);
        double acc = 0.0;
        for (size_t i = 0; i < n; ++i) {
            g[i] -= b[i];
            double pg = g[i];
            if (x[i] <= lower && pg > 0.0) pg = 0.0;
            if (x[i] >= upper && pg < 0.0) pg = 0.0;
            acc += pg * pg;
        }
        return std::sqrt(acc);
    };

    for (int sweep = 0; sweep < max_iters; ++sweep) {
        for (size_t i = 0; i < n; ++i) {
            double sigma = 0.0;
            for (int k = H.row_ptr[i]; k < H.row_ptr[i + 1]; ++k) {
                const int c = H.col_idx[k];
                if (static_cast<size_t>(c) != i) sigma += H.vals[k] * x[c];
            }
            const double xi_new = (b[i] - sigma) / H.diag[i];
            x[i] = std::clamp(x[i] + relaxation * (xi_new - x[i]), lower, upper);
        }
        if (sweep % 4 == 3 || sweep == max_iters - 1)
            if (projected_gradient_norm() <= target) return x;
    }
    if (projected_gradient_norm() <= target) return x;
    throw SolverError("projected SOR did not converge in " + std::to_string(max_iters) +
                      " sweeps; projected gradient " +
                      std::to_string(projected_gradient_norm()) + " > target " +
                      std::to_string(target));
}

namespace {

// Tangential velocity at one quadrature point.
inline double tangential_value(const std::vector<double>& w, const FrictionEdgeQuad& e,
                               const FrictionQuadPoint& p) {
    double s = 0.0;
    if (e.dof_a >= 0) s += p.phi_a * w[e.dof_a];
    if (e.dof_b >= 0) s += p.phi_b * w[e.dof_b];
    return s;
}

double friction_energy(const std::vector<double>& w, const Gamma3Quadrature& quad,
                       const FrictionModel& model, double rho) {
    double acc = 0.0;
    for (const auto& e : quad.edges)
        for (const auto& p : e.pts)
            acc += p.weight * j_reg_value1(model.bound, tangential_value(w, e, p), rho);
    return acc;
}

void add_friction_gradient(const std::vector<double>& w, const Gamma3Quadrature& quad,
                           const FrictionModel& model, double rho, std::vector<double>& g) {
    for (const auto& e : quad.edges) {
        for (const auto& p : e.pts) {
            const double c = p.weight * j_reg_grad1(model.bound, tangential_value(w, e, p), rho);
            if (e.dof_a >= 0) g[e.dof_a] += c * p.phi_a;
            if (e.dof_b >= 0) g[e.dof_b] += c * p.phi_b;
        }
    }
}

void add_friction_hessian(const std::vector<double>& w, const Gamma3Quadrature& quad,
                          const FrictionModel& model, double rho, SparseSpd& H) {
    for (const auto& e : quad.edges) {
        for (const auto& p : e.pts) {
            const double c = p.weight * j_reg_hess1(model.bound, tangential_value(w, e, p), rho);
            if (e.dof_a >= 0) H.at(e.dof_a, e.dof_a) += c * p.phi_a * p.phi_a;
            if (e.dof_b >= 0) H.at(e.dof_b, e.dof_b) += c * p.phi_b * p.phi_b;
            if (e.dof_a >= 0 && e.dof_b >= 0) {
                const double off = c * p.phi_a * p.phi_b;
                H.at(e.dof_a, e.dof_b) += off;
                H.at(e.dof_b, e.dof_a) += off;
            }
        }
    }
}

double quadratic_energy(const SparseSpd& K, const std::vector<double>& rhs,
                        const std::vector<double>& w) {
    const auto& ops = kernels::active();
    const std::vector<double> Kw = K.matvec(w);
    return 0.5 * ops.dot(w.data(), Kw.data(), w.size()) -
           ops.dot(rhs.data(), w.data(), w.size());
}

}  // namespace

double velocity_energy(const SparseSpd& K, const std::vector<double>& rhs,
                       const Gamma3Quadrature& quad, const FrictionModel& model, double rho,
                       const std::vector<double>& w) {
    return quadratic_energy(K, rhs, w) + friction_energy(w, quad, model, rho);
}

double velocity_energy_exact(const SparseSpd& K, const std::vector<double>& rhs,
                             const Gamma3Quadrature& quad, const FrictionModel& model,
                             const std::vector<double>& w) {
    double acc = quadratic_energy(K, rhs, w);
    for (const auto& e : quad.edges)
        for (const auto& p : e.pts)
            acc += p.weight * model.bound * std::abs(tangential_value(w, e, p));
    return acc;
}

std::vector<double> solve_velocity_step(const SparseSpd& K, const std::vector<double>& rhs,
                                        const Gamma3Quadrature& quad, const FrictionModel& model,
                                        const SolverTolerances& tol,
                                        const std::vector<double>* x0) {
    const size_t n = rhs.size();
    if (quad.empty() || model.bound == 0.0)
        return cg_solve(K, rhs, tol.cg_rel_tol, tol.cg_max_iters, x0);

    const auto& ops = kernels::active();
    const double grad_target = tol.newton_grad_tol * std::max(1.0, nrm2(rhs));

    std::vector<double> w = x0 ? *x0 : std::vector<double>(n, 0.0);
    std::vector<double> g(n), d(n);

    double rho = tol.rho_init;
    bool last_stage = false;
    while (!last_stage) {
        if (rho <= model.rho * (1.0 + 1e-9)) {
            rho = model.rho;
            last_stage = true;
        }
        for (int it = 0;; ++it) {
            K.matvec(w.data(), g.data());
            for (size_t i = 0; i < n; ++i) g[i] -= rhs[i];
            add_friction_gradient(w, quad, model, rho, g);
            if (nrm2(g) <= grad_target) break;
            if (it >= tol.newton_max_iters)
                throw SolverError("velocity Newton exceeded " +
                                  std::to_string(tol.newton_max_iters) +
                                  " iterations at regularization " + std::to_string(rho));

            SparseSpd H = K;
            add_friction_hessian(w, quad, model, rho, H);
            H.rebuild_diag();
            std::vector<double> neg_g(n);
            for (size_t i = 0; i < n; ++i) neg_g[i] = -g[i];
            d = cg_solve(H, neg_g, tol.cg_rel_tol, tol.cg_max_iters);

            double slope = ops.dot(g.data(), d.data(), n);
            if (slope >= 0.0) {
                // not a descent direction (should not happen for SPD H);
                // fall back to a plain gradient step
                d = neg_g;
                slope = -ops.dot(g.data(), g.data(), n);
            }

            const double e0 = velocity_energy(K, rhs, quad, model, rho, w);

            // When the Newton decrement falls below the resolution of the
            // energy in double precision, Armijo cannot be certified; the
            // full step is a pure polish step inside the convergence basin
            // (the energy gap is about half the decrement).
            const double noise =
                64.0 * std::numeric_limits<double>::epsilon() * (std::abs(e0) + 1.0);
            if (-slope <= noise) {
                for (size_t i = 0; i < n; ++i) w[i] += d[i];
                continue;
            }

            double step = 1.0;
            std::vector<double> trial(n);
            for (;;) {
                for (size_t i = 0; i < n; ++i) trial[i] = w[i] + step * d[i];
                if (velocity_energy(K, rhs, quad, model, rho, trial) <=
                    e0 + 1e-4 * step * slope)
                    break;
                step *= 0.5;
                if (step < 1e-14)
                    throw SolverError("velocity line search failed at regularization " +
                                      std::to_string(rho));
            }
            w.swap(trial);
        }
        rho /= tol.rho_divisor;
    }
    return w;
}

}  // namespace vcfem
