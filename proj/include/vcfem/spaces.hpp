#pragma once
#include <array>
#include <functional>
#include <vector>

#include "vcfem/mesh.hpp"
#include "vcfem/tensor.hpp"

namespace vcfem {

// Nodal P1 scalar field (one value per vertex).
struct ScalarField {
    std::vector<double> v;
};

// Nodal P1 vector field, interleaved (x0, y0, x1, y1, ...).
struct VectorField {
    std::vector<double> v;
};

// Piecewise-constant symmetric tensor field (one value per triangle).
struct ElementTensorField {
    std::vector<SymTensor2> t;
};

// Constraint map for the velocity space: full clamping on Gamma1 vertices,
// zero normal component on Gamma3 vertices. Free unknowns are compressed
// to contiguous indices; fixed components carry -1.
struct DofMap {
    int n_vertices = 0;
    std::vector<int> comp;  // size 2*n_vertices: free index or -1
    int n_free = 0;

    struct Gamma3Edge {
        int va = -1, vb = -1;
        double length = 0.0;
        std::array<double, 2> tangent{1.0, 0.0};  // unit vector along the edge
        int tangent_comp = 0;                     // 0: tangent along x, 1: along y
    };
    std::vector<Gamma3Edge> gamma3;

    int dof(int vertex, int component) const { return comp[2 * vertex + component]; }
    bool vertex_fully_fixed(int v) const { return dof(v, 0) < 0 && dof(v, 1) < 0; }
};

DofMap build_velocity_dofmap(const Mesh& mesh);

// Compress a nodal field to the free-unknown vector and back. Scatter fills
// constrained components with zero.
std::vector<double> gather_free(const DofMap& dm, const VectorField& f);
VectorField scatter_free(const DofMap& dm, const std::vector<double>& x);

// Constant strain of a P1 vector field on one triangle.
SymTensor2 strain(const Mesh& mesh, const VectorField& u, int tri);

// P1 shape-function gradients on a triangle; grad[i] = (d phi_i/dx, d phi_i/dy).
void p1_gradients(const Mesh& mesh, int tri, std::array<std::array<double, 2>, 3>& grad,
                  double& area);

// Evaluate nodal fields at a point of a given triangle.
double eval_p1(const Mesh& mesh, const ScalarField& f, int tri, double x, double y);
std::array<double, 2> eval_p1(const Mesh& mesh, const VectorField& f, int tri, double x,
                              double y);

// Orthogonal projection onto the piecewise-constant tensor space: elementwise
// averaging. The sampler must be affine (or constant) on each element, so the
// average equals the barycenter value.
ElementTensorField project_Qh(const Mesh& mesh,
                              const std::function<SymTensor2(int, double, double)>& sampler);

// Exact evaluation of coarse fields at the vertices (or barycenters) of a
// nested finer mesh; throws on non-nested inputs.
bool meshes_nested(const Mesh& coarse, const Mesh& fine);
ScalarField transfer_to_fine(const ScalarField& f, const Mesh& coarse, const Mesh& fine);
VectorField transfer_to_fine(const VectorField& f, const Mesh& coarse, const Mesh& fine);
ElementTensorField transfer_to_fine(const ElementTensorField& f, const Mesh& coarse,
                                    const Mesh& fine);

// Locate the triangle of a structured mesh containing (x, y); points on the
// interior diagonal resolve to the lower triangle.
int locate_triangle(const Mesh& mesh, double x, double y);

}  // namespace vcfem
