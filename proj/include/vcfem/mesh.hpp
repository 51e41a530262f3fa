#pragma once
#include <array>
#include <vector>

#include "vcfem/errors.hpp"

namespace vcfem {

enum class BoundaryTag { Gamma1, Gamma2, Gamma3 };

// A boundary edge (a,b) traversed counterclockwise around the domain,
// owned by exactly one triangle.
struct BoundaryEdge {
    int a = -1;
    int b = -1;
    int tri = -1;
    BoundaryTag tag = BoundaryTag::Gamma2;
};

// Uniform triangulation of an axis-aligned rectangle. Each grid square is
// split along its lower-left to upper-right diagonal, which keeps meshes
// for h and h/2 nested.
struct Mesh {
    double width = 0.0;
    double height = 0.0;
    int nx = 0;  // squares along x
    int ny = 0;  // squares along y
    std::vector<std::array<double, 2>> vertices;        // row-major grid order
    std::vector<std::array<int, 3>> triangles;          // counterclockwise
    std::vector<BoundaryEdge> boundary_edges;
    bool boundary_tagged = false;

    double h() const { return width / nx; }
    int num_vertices() const { return static_cast<int>(vertices.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }
    int vid(int i, int j) const { return j * (nx + 1) + i; }

    double signed_area(int t) const {
        const auto& tr = triangles[t];
        const auto& p0 = vertices[tr[0]];
        const auto& p1 = vertices[tr[1]];
        const auto& p2 = vertices[tr[2]];
        return 0.5 * ((p1[0] - p0[0]) * (p2[1] - p0[1]) -
                      (p2[0] - p0[0]) * (p1[1] - p0[1]));
    }
    std::array<double, 2> barycenter(int t) const {
        const auto& tr = triangles[t];
        return {(vertices[tr[0]][0] + vertices[tr[1]][0] + vertices[tr[2]][0]) / 3.0,
                (vertices[tr[0]][1] + vertices[tr[1]][1] + vertices[tr[2]][1]) / 3.0};
    }
};

// Axis-aligned piece of the rectangle boundary carrying one tag.
// horizontal: the segment lies on y = fixed_coord with x in [lo, hi];
// otherwise on x = fixed_coord with y in [lo, hi]. Interval endpoints are
// treated as closed; classification happens at edge midpoints, which never
// coincide with segment endpoints on compatible meshes.
struct BoundarySegment {
    bool horizontal = true;
    double fixed_coord = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    BoundaryTag tag = BoundaryTag::Gamma2;
};

struct BoundarySpec {
    std::vector<BoundarySegment> segments;
};

// Build the structured mesh for mesh size h = 1/m. width*m and height*m
// must be integers so the grid fits the rectangle exactly.
Mesh build_structured_mesh(double width, double height, double h);

// Tag every boundary edge by the unique segment containing its midpoint.
void classify_boundary(Mesh& mesh, const BoundarySpec& spec);

}  // namespace vcfem
