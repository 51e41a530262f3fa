#include "vcfem/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vcfem/kernels.hpp"

namespace vcfem {

void SparseSpd::matvec(const double* x, double* y) const {
    kernels::active().csr_matvec(static_cast<std::size_t>(n), row_ptr.data(), col_idx.data(),
                                 vals.data(), x, y);
}

std::vector<double> SparseSpd::matvec(const std::vector<double>& x) const {
    std::vector<double> y(static_cast<size_t>(n));
    matvec(x.data(), y.data());
    return y;
}

double& SparseSpd::at(int r, int c) {
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
        if (col_idx[k] == c) return vals[k];
    throw ContractError("sparse entry (" + std::to_string(r) + "," + std::to_string(c) +
                        ") not present in pattern");
}

double SparseSpd::get(int r, int c) const {
    for (int k = row_ptr[r]; k < row_ptr[r + 1]; ++k)
        if (col_idx[k] == c) return vals[k];
    return 0.0;
}

void SparseSpd::rebuild_diag() {
    diag.assign(static_cast<size_t>(n), 0.0);
    for (int r = 0; r < n; ++r) diag[r] = get(r, r);
}

SparseSpd SparseBuilder::compress() const {
    SparseSpd m;
    m.n = n_;
    m.row_ptr.reserve(static_cast<size_t>(n_) + 1);
    m.row_ptr.push_back(0);
    for (int r = 0; r < n_; ++r) {
        for (const auto& [c, v] : entries_[r]) {
            m.col_idx.push_back(c);
            m.vals.push_back(v);
        }
        m.row_ptr.push_back(static_cast<int>(m.col_idx.size()));
    }
    m.rebuild_diag();
    return m;
}

namespace {

// Strain tensors of the six local vector shape functions phi_i e_c.
inline SymTensor2 basis_strain(const std::array<double, 2>& g, int comp) {
    if (comp == 0) return {g[0], 0.0, 0.5 * g[1]};
    return {0.0, g[1], 0.5 * g[0]};
}

}  // namespace

SparseSpd assemble_viscosity(const Mesh& mesh, const DofMap& dm, const MaterialParams& p) {
    if (dm.n_free == 0) throw ConfigError("viscosity assembly with zero free unknowns");

    SparseBuilder builder(dm.n_free);
    const double a2 = 2.0 * p.visc_shear;
    const double b = p.visc_bulk;

    std::array<std::array<double, 2>, 3> g;
    double area;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        p1_gradients(mesh, t, g, area);
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i) {
            for (int ci = 0; ci < 2; ++ci) {
                const int di = dm.dof(tri[i], ci);
                if (di < 0) continue;
                const SymTensor2 ei = basis_strain(g[i], ci);
                for (int j = 0; j < 3; ++j) {
                    for (int cj = 0; cj < 2; ++cj) {
                        const int dj = dm.dof(tri[j], cj);
                        if (dj < 0) continue;
                        const SymTensor2 ej = basis_strain(g[j], cj);
                        const double v = area * (a2 * ddot(ei, ej) + b * ei.trace() * ej.trace());
                        builder.add(di, dj, v);
                    }
                }
            }
        }
    }
    return builder.compress();
}

std::vector<double> assemble_elastic_residual(const VectorField& u, const ScalarField& zeta,
                                              const Mesh& mesh, const DofMap& dm,
                                              const MaterialParams& p) {
    std::vector<double> r(static_cast<size_t>(dm.n_free), 0.0);
    std::array<std::array<double, 2>, 3> g;
    double area;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        p1_gradients(mesh, t, g, area);
        const auto& tri = mesh.triangles[t];
        const double zbar = (zeta.v[tri[0]] + zeta.v[tri[1]] + zeta.v[tri[2]]) / 3.0;
        const SymTensor2 stress = apply_elasticity(strain(mesh, u, t), zbar, p);
        for (int i = 0; i < 3; ++i) {
            const int dx = dm.dof(tri[i], 0);
            const int dy = dm.dof(tri[i], 1);
            // stress : eps(phi_i e_c) integrated over the element
            if (dx >= 0) r[dx] += area * (stress.xx * g[i][0] + stress.xy * g[i][1]);
            if (dy >= 0) r[dy] += area * (stress.yy * g[i][1] + stress.xy * g[i][0]);
        }
    }
    return r;
}

std::vector<double> assemble_load_raw(const LoadSpec& load, const Mesh& mesh) {
    std::vector<double> r(2 * mesh.vertices.size(), 0.0);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const double third = mesh.signed_area(t) / 3.0;
        for (int vertex : mesh.triangles[t]) {
            r[2 * vertex] += third * load.f0[0];
            r[2 * vertex + 1] += third * load.f0[1];
        }
    }
    for (const auto& edge : mesh.boundary_edges) {
        if (edge.tag != BoundaryTag::Gamma2) continue;
        const auto& pa = mesh.vertices[edge.a];
        const auto& pb = mesh.vertices[edge.b];
        const double half = 0.5 * std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
        for (int vertex : {edge.a, edge.b}) {
            r[2 * vertex] += half * load.f2[0];
            r[2 * vertex + 1] += half * load.f2[1];
        }
    }
    return r;
}

std::vector<double> assemble_load(const LoadSpec& load, const Mesh& mesh, const DofMap& dm) {
    const std::vector<double> raw = assemble_load_raw(load, mesh);
    std::vector<double> r(static_cast<size_t>(dm.n_free), 0.0);
    for (size_t c = 0; c < dm.comp.size(); ++c)
        if (dm.comp[c] >= 0) r[dm.comp[c]] = raw[c];
    return r;
}

std::pair<SparseSpd, SparseSpd> assemble_damage_operators(const Mesh& mesh,
                                                          const MaterialParams& p) {
    const int nv = mesh.num_vertices();
    SparseBuilder mass(nv);
    SparseBuilder stiff(nv);
    std::array<std::array<double, 2>, 3> g;
    double area;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        p1_gradients(mesh, t, g, area);
        const auto& tri = mesh.triangles[t];
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                mass.add(tri[i], tri[j], area / 12.0 * (i == j ? 2.0 : 1.0));
                stiff.add(tri[i], tri[j],
                          p.kappa * area * (g[i][0] * g[j][0] + g[i][1] * g[j][1]));
            }
        }
    }
    return {mass.compress(), stiff.compress()};
}

std::vector<double> assemble_damage_source_load(const VectorField& u, const ScalarField& zeta,
                                                const Mesh& mesh, const MaterialParams& p) {
    std::vector<double> r(mesh.vertices.size(), 0.0);
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const double third = mesh.signed_area(t) / 3.0;
        const SymTensor2 eps = strain(mesh, u, t);
        for (int vertex : mesh.triangles[t])
            r[vertex] += third * damage_source(eps, zeta.v[vertex], p.source_floor);
    }
    return r;
}

Gamma3Quadrature gamma3_quadrature(const Mesh& mesh, const DofMap& dm) {
    (void)mesh;
    Gamma3Quadrature q;
    const double offset = 0.5 / std::sqrt(3.0);
    for (const auto& ge : dm.gamma3) {
        FrictionEdgeQuad eq;
        eq.va = ge.va;
        eq.vb = ge.vb;
        eq.dof_a = dm.dof(ge.va, ge.tangent_comp);
        eq.dof_b = dm.dof(ge.vb, ge.tangent_comp);
        eq.tangent = ge.tangent;
        eq.length = ge.length;
        const double w = 0.5 * ge.length;
        for (int k = 0; k < 2; ++k) {
            const double xi = 0.5 + (k == 0 ? -offset : offset);
            eq.pts[k] = {w, 1.0 - xi, xi};
        }
        q.edges.push_back(eq);
        q.total_length += ge.length;
    }
    return q;
}

double v_norm(const Mesh& mesh, const VectorField& w) {
    if (w.v.size() != 2 * mesh.vertices.size())
        throw ConfigError("vector field size does not match mesh");
    double acc = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t)
        acc += mesh.signed_area(t) * strain(mesh, w, t).norm2();
    return std::sqrt(acc);
}

double z0_norm(const Mesh& mesh, const ScalarField& zeta) {
    if (zeta.v.size() != mesh.vertices.size())
        throw ConfigError("scalar field size does not match mesh");
    double acc = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const double z0 = zeta.v[tri[0]], z1 = zeta.v[tri[1]], z2 = zeta.v[tri[2]];
        const double sum = z0 + z1 + z2;
        // v^T M v with the exact P1 mass matrix
        acc += mesh.signed_area(t) / 12.0 * (sum * sum + z0 * z0 + z1 * z1 + z2 * z2);
    }
    return std::sqrt(acc);
}

double z_seminorm(const Mesh& mesh, const ScalarField& zeta) {
    if (zeta.v.size() != mesh.vertices.size())
        throw ConfigError("scalar field size does not match mesh");
    double acc = 0.0;
    std::array<std::array<double, 2>, 3> g;
    double area;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        p1_gradients(mesh, t, g, area);
        const auto& tri = mesh.triangles[t];
        double gx = 0.0, gy = 0.0;
        for (int i = 0; i < 3; ++i) {
            gx += g[i][0] * zeta.v[tri[i]];
            gy += g[i][1] * zeta.v[tri[i]];
        }
        acc += area * (gx * gx + gy * gy);
    }
    return std::sqrt(acc);
}

ErrorNorms error_norms(const Mesh& mesh, const VectorField& w_err, const ScalarField& zeta_err) {
    return {v_norm(mesh, w_err), z0_norm(mesh, zeta_err), z_seminorm(mesh, zeta_err)};
}

}  // namespace vcfem
