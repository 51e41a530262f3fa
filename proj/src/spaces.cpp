#include "vcfem/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace vcfem {

DofMap build_velocity_dofmap(const Mesh& mesh) {
    if (!mesh.boundary_tagged)
        throw ConfigError("mesh boundary must be classified before building the dof map");

    const int nv = mesh.num_vertices();
    // 0 free, bit 1 = x fixed, bit 2 = y fixed
    std::vector<unsigned char> fixed(static_cast<size_t>(nv), 0);

    DofMap dm;
    dm.n_vertices = nv;

    for (const auto& edge : mesh.boundary_edges) {
        const auto& pa = mesh.vertices[edge.a];
        const auto& pb = mesh.vertices[edge.b];
        const bool horizontal = std::abs(pa[1] - pb[1]) < 1e-12;
        const bool vertical = std::abs(pa[0] - pb[0]) < 1e-12;

        if (edge.tag == BoundaryTag::Gamma1) {
            fixed[edge.a] |= 3;
            fixed[edge.b] |= 3;
        } else if (edge.tag == BoundaryTag::Gamma3) {
            if (!horizontal && !vertical)
                throw ConfigError("contact boundary must be axis-aligned; edge (" +
                                  std::to_string(edge.a) + "," + std::to_string(edge.b) +
                                  ") is not");
            // Bilateral contact clamps the normal component: y on horizontal
            // edges, x on vertical ones.
            const unsigned char bit = horizontal ? 2 : 1;
            fixed[edge.a] |= bit;
            fixed[edge.b] |= bit;

            DofMap::Gamma3Edge ge;
            ge.va = edge.a;
            ge.vb = edge.b;
            const double dx = pb[0] - pa[0];
            const double dy = pb[1] - pa[1];
            ge.length = std::hypot(dx, dy);
            ge.tangent = {dx / ge.length, dy / ge.length};
            ge.tangent_comp = horizontal ? 0 : 1;
            dm.gamma3.push_back(ge);
        }
    }

    dm.comp.assign(static_cast<size_t>(2) * nv, -1);
    int next = 0;
    for (int v = 0; v < nv; ++v) {
        if (!(fixed[v] & 1)) dm.comp[2 * v] = next++;
        if (!(fixed[v] & 2)) dm.comp[2 * v + 1] = next++;
    }
    dm.n_free = next;
    return dm;
}

std::vector<double> gather_free(const DofMap& dm, const VectorField& f) {
    std::vector<double> x(static_cast<size_t>(dm.n_free), 0.0);
    for (size_t c = 0; c < dm.comp.size(); ++c)
        if (dm.comp[c] >= 0) x[dm.comp[c]] = f.v[c];
    return x;
}

VectorField scatter_free(const DofMap& dm, const std::vector<double>& x) {
    VectorField f;
    f.v.assign(dm.comp.size(), 0.0);
    for (size_t c = 0; c < dm.comp.size(); ++c)
        if (dm.comp[c] >= 0) f.v[c] = x[dm.comp[c]];
    return f;
}

void p1_gradients(const Mesh& mesh, int tri, std::array<std::array<double, 2>, 3>& grad,
                  double& area) {
    const auto& t = mesh.triangles[tri];
    const auto& p0 = mesh.vertices[t[0]];
    const auto& p1 = mesh.vertices[t[1]];
    const auto& p2 = mesh.vertices[t[2]];
    const double two_a = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    area = 0.5 * two_a;
    grad[0] = {(p1[1] - p2[1]) / two_a, (p2[0] - p1[0]) / two_a};
    grad[1] = {(p2[1] - p0[1]) / two_a, (p0[0] - p2[0]) / two_a};
    grad[2] = {(p0[1] - p1[1]) / two_a, (p1[0] - p0[0]) / two_a};
}

SymTensor2 strain(const Mesh& mesh, const VectorField& u, int tri) {
    std::array<std::array<double, 2>, 3> g;
    double area;
    p1_gradients(mesh, tri, g, area);
    const auto& t = mesh.triangles[tri];
    SymTensor2 eps;
    for (int i = 0; i < 3; ++i) {
        const double ux = u.v[2 * t[i]];
        const double uy = u.v[2 * t[i] + 1];
        eps.xx += g[i][0] * ux;
        eps.yy += g[i][1] * uy;
        eps.xy += 0.5 * (g[i][1] * ux + g[i][0] * uy);
    }
    return eps;
}

namespace {

std::array<double, 3> barycentric(const Mesh& mesh, int tri, double x, double y) {
    const auto& t = mesh.triangles[tri];
    const auto& p0 = mesh.vertices[t[0]];
    const auto& p1 = mesh.vertices[t[1]];
    const auto& p2 = mesh.vertices[t[2]];
    const double two_a = (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
    const double l1 = ((x - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (y - p0[1])) / two_a;
    const double l2 = ((p1[0] - p0[0]) * (y - p0[1]) - (x - p0[0]) * (p1[1] - p0[1])) / two_a;
    return {1.0 - l1 - l2, l1, l2};
}

}  // namespace

double eval_p1(const Mesh& mesh, const ScalarField& f, int tri, double x, double y) {
    const auto lam = barycentric(mesh, tri, x, y);
    const auto& t = mesh.triangles[tri];
    return lam[0] * f.v[t[0]] + lam[1] * f.v[t[1]] + lam[2] * f.v[t[2]];
}

std::array<double, 2> eval_p1(const Mesh& mesh, const VectorField& f, int tri, double x,
                              double y) {
    const auto lam = barycentric(mesh, tri, x, y);
    const auto& t = mesh.triangles[tri];
    return {lam[0] * f.v[2 * t[0]] + lam[1] * f.v[2 * t[1]] + lam[2] * f.v[2 * t[2]],
            lam[0] * f.v[2 * t[0] + 1] + lam[1] * f.v[2 * t[1] + 1] + lam[2] * f.v[2 * t[2] + 1]};
}

ElementTensorField project_Qh(const Mesh& mesh,
                              const std::function<SymTensor2(int, double, double)>& sampler) {
    ElementTensorField out;
    out.t.resize(static_cast<size_t>(mesh.num_triangles()));
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto bc = mesh.barycenter(t);
        out.t[t] = sampler(t, bc[0], bc[1]);
    }
    return out;
}

bool meshes_nested(const Mesh& coarse, const Mesh& fine) {
    if (std::abs(coarse.width - fine.width) > 1e-12 ||
        std::abs(coarse.height - fine.height) > 1e-12)
        return false;
    if (fine.nx % coarse.nx != 0 || fine.ny % coarse.ny != 0) return false;
    return fine.nx / coarse.nx == fine.ny / coarse.ny;
}

int locate_triangle(const Mesh& mesh, double x, double y) {
    const double dx = mesh.width / mesh.nx;
    const double dy = mesh.height / mesh.ny;
    int i = static_cast<int>(std::floor(x / dx));
    int j = static_cast<int>(std::floor(y / dy));
    i = std::clamp(i, 0, mesh.nx - 1);
    j = std::clamp(j, 0, mesh.ny - 1);
    const double xi = x / dx - i;
    const double eta = y / dy - j;
    // The diagonal runs from the square's lower-left to upper-right corner.
    const int which = (eta <= xi) ? 0 : 1;
    return 2 * (j * mesh.nx + i) + which;
}

namespace {

void check_nested(const Mesh& coarse, const Mesh& fine) {
    if (!meshes_nested(coarse, fine))
        throw ConfigError("field transfer requires nested meshes over the same rectangle");
}

}  // namespace

ScalarField transfer_to_fine(const ScalarField& f, const Mesh& coarse, const Mesh& fine) {
    check_nested(coarse, fine);
    ScalarField out;
    out.v.resize(fine.vertices.size());
    for (size_t v = 0; v < fine.vertices.size(); ++v) {
        const double x = fine.vertices[v][0];
        const double y = fine.vertices[v][1];
        out.v[v] = eval_p1(coarse, f, locate_triangle(coarse, x, y), x, y);
    }
    return out;
}

VectorField transfer_to_fine(const VectorField& f, const Mesh& coarse, const Mesh& fine) {
    check_nested(coarse, fine);
    VectorField out;
    out.v.resize(2 * fine.vertices.size());
    for (size_t v = 0; v < fine.vertices.size(); ++v) {
        const double x = fine.vertices[v][0];
        const double y = fine.vertices[v][1];
        const auto val = eval_p1(coarse, f, locate_triangle(coarse, x, y), x, y);
        out.v[2 * v] = val[0];
        out.v[2 * v + 1] = val[1];
    }
    return out;
}

ElementTensorField transfer_to_fine(const ElementTensorField& f, const Mesh& coarse,
                                    const Mesh& fine) {
    check_nested(coarse, fine);
    ElementTensorField out;
    out.t.resize(static_cast<size_t>(fine.num_triangles()));
    for (int t = 0; t < fine.num_triangles(); ++t) {
        const auto bc = fine.barycenter(t);
        out.t[t] = f.t[locate_triangle(coarse, bc[0], bc[1])];
    }
    return out;
}

}  // namespace vcfem
