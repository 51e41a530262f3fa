#include "vcfem/mesh.hpp"

#include <cmath>
#include <string>

namespace vcfem {

namespace {

int checked_subdivisions(double extent, double inv_h, const char* axis_name) {
    const double cells = extent * inv_h;
    const double rounded = std::round(cells);
    if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells))
        throw ConfigError(std::string("mesh size does not divide the ") + axis_name +
                          " extent " + std::to_string(extent) + ": got " +
                          std::to_string(cells) + " cells");
    return static_cast<int>(rounded);
}

}  // namespace

Mesh build_structured_mesh(double width, double height, double h) {
    if (!(width > 0.0) || !(height > 0.0))
        throw ConfigError("rectangle extents must be positive, got " +
                          std::to_string(width) + " x " + std::to_string(height));
    if (!(h > 0.0)) throw ConfigError("mesh size must be positive, got " + std::to_string(h));

    const double m_real = 1.0 / h;
    const double m_round = std::round(m_real);
    if (m_round < 1.0 || std::abs(m_real - m_round) > 1e-9 * m_real)
        throw ConfigError("mesh size must be the reciprocal of a positive integer, got h = " +
                          std::to_string(h) + " (1/h = " + std::to_string(m_real) + ")");

    Mesh mesh;
    mesh.width = width;
    mesh.height = height;
    mesh.nx = checked_subdivisions(width, m_round, "x");
    mesh.ny = checked_subdivisions(height, m_round, "y");

    const int npx = mesh.nx + 1;
    const int npy = mesh.ny + 1;
    mesh.vertices.reserve(static_cast<size_t>(npx) * npy);
    const double dx = width / mesh.nx;
    const double dy = height / mesh.ny;
    for (int j = 0; j < npy; ++j)
        for (int i = 0; i < npx; ++i)
            mesh.vertices.push_back({i * dx, j * dy});

    // Two triangles per square, both using the lower-left/upper-right diagonal.
    mesh.triangles.reserve(static_cast<size_t>(2) * mesh.nx * mesh.ny);
    for (int j = 0; j < mesh.ny; ++j) {
        for (int i = 0; i < mesh.nx; ++i) {
            const int v00 = mesh.vid(i, j);
            const int v10 = mesh.vid(i + 1, j);
            const int v01 = mesh.vid(i, j + 1);
            const int v11 = mesh.vid(i + 1, j + 1);
            mesh.triangles.push_back({v00, v10, v11});
            mesh.triangles.push_back({v00, v11, v01});
        }
    }

    auto tri_id = [&](int i, int j, int which) { return 2 * (j * mesh.nx + i) + which; };

    // Counterclockwise boundary edges with their owning triangle.
    for (int i = 0; i < mesh.nx; ++i)  // bottom, lower triangle edge (v00, v10)
        mesh.boundary_edges.push_back({mesh.vid(i, 0), mesh.vid(i + 1, 0), tri_id(i, 0, 0)});
    for (int j = 0; j < mesh.ny; ++j)  // right, lower triangle edge (v10, v11)
        mesh.boundary_edges.push_back(
            {mesh.vid(mesh.nx, j), mesh.vid(mesh.nx, j + 1), tri_id(mesh.nx - 1, j, 0)});
    for (int i = mesh.nx; i > 0; --i)  // top, upper triangle edge (v11, v01)
        mesh.boundary_edges.push_back(
            {mesh.vid(i, mesh.ny), mesh.vid(i - 1, mesh.ny), tri_id(i - 1, mesh.ny - 1, 1)});
    for (int j = mesh.ny; j > 0; --j)  // left, upper triangle edge (v01, v00)
        mesh.boundary_edges.push_back({mesh.vid(0, j), mesh.vid(0, j - 1), tri_id(0, j - 1, 1)});

    return mesh;
}

void classify_boundary(Mesh& mesh, const BoundarySpec& spec) {
    for (auto& edge : mesh.boundary_edges) {
        const auto& pa = mesh.vertices[edge.a];
        const auto& pb = mesh.vertices[edge.b];
        const double mx = 0.5 * (pa[0] + pb[0]);
        const double my = 0.5 * (pa[1] + pb[1]);
        const bool edge_horizontal = std::abs(pa[1] - pb[1]) < 1e-12;

        int hits = 0;
        BoundaryTag tag = BoundaryTag::Gamma2;
        for (const auto& seg : spec.segments) {
            if (seg.horizontal != edge_horizontal) continue;
            const double fixed = edge_horizontal ? my : mx;
            const double run = edge_horizontal ? mx : my;
            if (std::abs(fixed - seg.fixed_coord) > 1e-12) continue;
            if (run < seg.lo || run > seg.hi) continue;
            ++hits;
            tag = seg.tag;
        }
        if (hits != 1)
            throw ConfigError("boundary edge midpoint (" + std::to_string(mx) + ", " +
                              std::to_string(my) + ") covered by " + std::to_string(hits) +
                              " segments; expected exactly 1");
        edge.tag = tag;
    }
    mesh.boundary_tagged = true;
}

}  // namespace vcfem
