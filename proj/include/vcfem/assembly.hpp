#pragma once
#include <array>
#include <map>
#include <utility>
#include <vector>

#include "vcfem/material.hpp"
#include "vcfem/mesh.hpp"
#include "vcfem/spaces.hpp"

namespace vcfem {

// Symmetric positive definite sparse matrix in compressed-row layout.
struct SparseSpd {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col_idx;
    std::vector<double> vals;
    std::vector<double> diag;

    void matvec(const double* x, double* y) const;
    std::vector<double> matvec(const std::vector<double>& x) const;
    double& at(int r, int c);         // existing entry only
    double get(int r, int c) const;   // 0 when the entry is absent
    void rebuild_diag();
};

// Accumulates (row, col, value) contributions and compresses them.
class SparseBuilder {
  public:
    explicit SparseBuilder(int n) : n_(n), entries_(static_cast<size_t>(n)) {}
    void add(int r, int c, double v) { entries_[r][c] += v; }
    SparseSpd compress() const;

  private:
    int n_;
    std::vector<std::map<int, double>> entries_;
};

// Constant body force and constant traction on Gamma2.
struct LoadSpec {
    std::array<double, 2> f0{0.0, 0.0};
    std::array<double, 2> f2{0.0, 0.0};
};

// Viscosity bilinear form on the free velocity unknowns.
SparseSpd assemble_viscosity(const Mesh& mesh, const DofMap& dm, const MaterialParams& p);

// Elastic residual r_i = (B(eps(u), zeta), eps(phi_i))_Q over free unknowns;
// zeta enters at the element barycenter.
std::vector<double> assemble_elastic_residual(const VectorField& u, const ScalarField& zeta,
                                              const Mesh& mesh, const DofMap& dm,
                                              const MaterialParams& p);

// Load vector over all nodal components (no constraints applied).
std::vector<double> assemble_load_raw(const LoadSpec& load, const Mesh& mesh);
// Same, compressed to free unknowns.
std::vector<double> assemble_load(const LoadSpec& load, const Mesh& mesh, const DofMap& dm);

// Damage mass matrix M and diffusion stiffness S = kappa * (grad, grad),
// both over all vertices (the damage flux condition is natural).
std::pair<SparseSpd, SparseSpd> assemble_damage_operators(const Mesh& mesh,
                                                          const MaterialParams& p);

// Damage source load (phi(eps(u), zeta), xi)_{Z0} by vertex quadrature:
// strain is elementwise constant, zeta is taken at the vertices.
std::vector<double> assemble_damage_source_load(const VectorField& u, const ScalarField& zeta,
                                                const Mesh& mesh, const MaterialParams& p);

// Two-point Gauss quadrature along the contact boundary with tangential
// extraction. dof_a/dof_b are free velocity indices of the tangential
// components (-1 when constrained away).
struct FrictionQuadPoint {
    double weight;  // quadrature weight (edge portion of arclength)
    double phi_a;   // P1 shape values at the point
    double phi_b;
};

struct FrictionEdgeQuad {
    int va = -1, vb = -1;
    int dof_a = -1, dof_b = -1;
    std::array<double, 2> tangent{1.0, 0.0};
    double length = 0.0;
    std::array<FrictionQuadPoint, 2> pts;
};

struct Gamma3Quadrature {
    std::vector<FrictionEdgeQuad> edges;
    double total_length = 0.0;
    bool empty() const { return edges.empty(); }
};

Gamma3Quadrature gamma3_quadrature(const Mesh& mesh, const DofMap& dm);

// Norms of P1 fields: ||v||_V = ||eps(v)||_Q, the L2 norm, and the H1
// seminorm. Exact for P1 data.
double v_norm(const Mesh& mesh, const VectorField& w);
double z0_norm(const Mesh& mesh, const ScalarField& zeta);
double z_seminorm(const Mesh& mesh, const ScalarField& zeta);

struct ErrorNorms {
    double w_V = 0.0;
    double zeta_Z0 = 0.0;
    double zeta_Zsemi = 0.0;
};
ErrorNorms error_norms(const Mesh& mesh, const VectorField& w_err, const ScalarField& zeta_err);

}  // namespace vcfem
