#pragma once
#include <string>

#include "vcfem/mesh.hpp"
#include "vcfem/timestepper.hpp"

namespace vcfem {

// Legacy ASCII VTK unstructured grid: displacement/velocity/damage as point
// data, stress components and von Mises magnitude as cell data.
void write_vtk(const std::string& path, const Mesh& mesh, const TimeState& state);

// Minimal structural check used by the tests: section counts consistent and
// every numeric token finite.
struct VtkSummary {
    int num_points = 0;
    int num_cells = 0;
    int point_arrays = 0;
    int cell_arrays = 0;
};
VtkSummary validate_vtk(const std::string& path);

}  // namespace vcfem
