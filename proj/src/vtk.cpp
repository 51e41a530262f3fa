#include "vcfem/vtk.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace vcfem {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

double von_mises_2d(const SymTensor2& s) {
    return std::sqrt(s.xx * s.xx - s.xx * s.yy + s.yy * s.yy + 3.0 * s.xy * s.xy);
}

}  // namespace

void write_vtk(const std::string& path, const Mesh& mesh, const TimeState& state) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open VTK file for writing: " + path);

    const int nv = mesh.num_vertices();
    const int nt = mesh.num_triangles();

    out << "# vtk DataFile Version 3.0\n";
    out << "viscoelastic contact with damage, step " << state.n << " t=" << num(state.t) << "\n";
    out << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
    out << "POINTS " << nv << " double\n";
    for (const auto& p : mesh.vertices) out << num(p[0]) << ' ' << num(p[1]) << " 0\n";

    out << "CELLS " << nt << ' ' << 4 * nt << "\n";
    for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << "\n";
    out << "CELL_TYPES " << nt << "\n";
    for (int t = 0; t < nt; ++t) out << "5\n";

    out << "POINT_DATA " << nv << "\n";
    out << "VECTORS displacement double\n";
    for (int v = 0; v < nv; ++v)
        out << num(state.u.v[2 * v]) << ' ' << num(state.u.v[2 * v + 1]) << " 0\n";
    out << "VECTORS velocity double\n";
    for (int v = 0; v < nv; ++v)
        out << num(state.w.v[2 * v]) << ' ' << num(state.w.v[2 * v + 1]) << " 0\n";
    out << "SCALARS damage double 1\nLOOKUP_TABLE default\n";
    for (int v = 0; v < nv; ++v) out << num(state.zeta.v[v]) << "\n";

    out << "CELL_DATA " << nt << "\n";
    out << "TENSORS stress double\n";
    for (int t = 0; t < nt; ++t) {
        const auto& s = state.sigma.t[t];
        out << num(s.xx) << ' ' << num(s.xy) << " 0\n";
        out << num(s.xy) << ' ' << num(s.yy) << " 0\n";
        out << "0 0 0\n";
    }
    out << "SCALARS stress_von_mises double 1\nLOOKUP_TABLE default\n";
    for (int t = 0; t < nt; ++t) out << num(von_mises_2d(state.sigma.t[t])) << "\n";
}

VtkSummary validate_vtk(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open VTK file: " + path);

    VtkSummary summary;
    bool in_cell_data = false;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string word;
        ls >> word;
        if (word == "POINTS") {
            ls >> summary.num_points;
            continue;
        }
        if (word == "CELLS") {
            int n = 0, total = 0;
            ls >> n >> total;
            summary.num_cells = n;
            if (total != 4 * n) throw ConfigError("unexpected CELLS record size in " + path);
            continue;
        }
        if (word == "CELL_TYPES") {
            int n = 0;
            ls >> n;
            if (n != summary.num_cells)
                throw ConfigError("CELL_TYPES count mismatch in " + path);
            continue;
        }
        if (word == "POINT_DATA" || word == "CELL_DATA") {
            int n = 0;
            ls >> n;
            const int expect = word[0] == 'P' ? summary.num_points : summary.num_cells;
            if (n != expect) throw ConfigError(word + " count mismatch in " + path);
            in_cell_data = word[0] == 'C';
            continue;
        }
        if (word == "VECTORS" || word == "SCALARS" || word == "TENSORS") {
            (in_cell_data ? summary.cell_arrays : summary.point_arrays) += 1;
            continue;
        }
        if (word == "LOOKUP_TABLE" || word == "ASCII" || word == "DATASET" || word == "#")
            continue;
        std::istringstream ns(line);
        double v;
        while (ns >> v)
            if (!std::isfinite(v)) throw ConfigError("non-finite value in " + path);
    }
    if (summary.num_points <= 0 || summary.num_cells <= 0)
        throw ConfigError("VTK file missing geometry: " + path);
    return summary;
}

}  // namespace vcfem
