// Independent reference implementations used only by the tests. These favour
// brute force and closed forms over the code paths they check.
#pragma once
#include <array>
#include <vector>

#include "vcfem/assembly.hpp"
#include "vcfem/friction.hpp"
#include "vcfem/material.hpp"
#include "vcfem/mesh.hpp"
#include "vcfem/solvers.hpp"
#include "vcfem/spaces.hpp"
#include "vcfem/timestepper.hpp"

namespace oracle {

// Row-major dense matrix.
struct Dense {
    int rows = 0, cols = 0;
    std::vector<double> a;
    Dense() = default;
    Dense(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
    double& operator()(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
    double operator()(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }
};

Dense to_dense(const vcfem::SparseSpd& m);

// Cholesky solve for SPD systems; throws on a non-positive pivot.
std::vector<double> cholesky_solve(Dense a, std::vector<double> b);

// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
std::vector<double> symmetric_eigenvalues(Dense a, int max_sweeps = 100);

// Largest eigenvalue of an SPD sparse matrix by power iteration.
double power_lambda_max(const vcfem::SparseSpd& m, int iters = 2000);

// Quadrature rules on one triangle of a mesh. The midpoint rule is exact
// through degree 2, the vertex rule through degree 1.
struct QuadPoint {
    double x, y, w;
};
std::array<QuadPoint, 3> midpoint_rule(const vcfem::Mesh& mesh, int tri);
std::array<QuadPoint, 3> vertex_rule(const vcfem::Mesh& mesh, int tri);

// P1 evaluation by brute-force point location (scan all triangles).
double eval_anywhere(const vcfem::Mesh& mesh, const vcfem::ScalarField& f, double x, double y);
std::array<double, 2> eval_anywhere(const vcfem::Mesh& mesh, const vcfem::VectorField& f,
                                    double x, double y);

// Element viscosity matrix via the Voigt B-matrix route: K_e = A * B^T D B.
std::array<std::array<double, 6>, 6> element_viscosity_voigt(const vcfem::Mesh& mesh, int tri,
                                                             const vcfem::MaterialParams& p);

// Box QP by exhaustive active-set enumeration (n <= 8): exact solution of
// min 1/2 x^T H x - b^T x on [lo, hi]^n.
std::vector<double> box_qp_enumerate(const Dense& h, const std::vector<double>& b, double lo,
                                     double hi);

// Long-run projected-subgradient descent on the exact (nonsmooth) velocity
// energy; diminishing steps scaled from the largest stiffness eigenvalue.
std::vector<double> velocity_subgradient(const vcfem::SparseSpd& k,
                                         const std::vector<double>& rhs,
                                         const vcfem::Gamma3Quadrature& quad,
                                         const vcfem::FrictionModel& model, long iterations);

// Dense brute-force implementation of one full time step of the discrete
// scheme (stress update, frictional velocity inequality, damage inequality,
// displacement update). The frictional solve enumerates sliding-sign
// patterns and solves each candidate linear system exactly; it requires the
// optimum to slide (no zero tangential velocity at quadrature points).
struct DenseStepResult {
    std::vector<double> w;      // nodal, interleaved
    std::vector<double> u;
    std::vector<double> zeta;
    std::vector<vcfem::SymTensor2> sigma;
};
DenseStepResult dense_one_step(const vcfem::Mesh& mesh, const vcfem::DofMap& dm,
                               const vcfem::MaterialParams& mat,
                               const vcfem::FrictionModel& friction,
                               const vcfem::LoadSpec& load, double dt,
                               const vcfem::VectorField& u_prev,
                               const vcfem::ScalarField& zeta_prev);

}  // namespace oracle
