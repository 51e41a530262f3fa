#pragma once
#include <string>

#include "vcfem/assembly.hpp"
#include "vcfem/friction.hpp"
#include "vcfem/material.hpp"
#include "vcfem/mesh.hpp"
#include "vcfem/solvers.hpp"
#include "vcfem/timestepper.hpp"

namespace vcfem {

struct SnapshotSpec {
    enum class Policy { Final, All, EveryM } policy = Policy::Final;
    int every = 1;

    bool keep(int n, int N) const {
        if (n == 0 || n == N) return true;
        switch (policy) {
            case Policy::Final: return false;
            case Policy::All: return true;
            case Policy::EveryM: return n % every == 0;
        }
        return false;
    }
};

// Complete description of one simulation run.
struct SimConfig {
    double width = 2.0;
    double height = 1.0;
    BoundarySpec boundary;
    MaterialParams material;
    FrictionModel friction;
    LoadSpec load;
    double T = 1.0;
    int N = 32;
    double h = 1.0 / 32.0;
    double zeta0 = 1.0;  // constant initial damage; 1 = undamaged
    SolverTolerances tol;
    SnapshotSpec snapshots;
    std::string out_dir;
    int experiment = 0;  // informational: 1..3, or 0 for the benchmark/custom

    TimeGrid grid() const { return {T, N}; }
    void validate() const;
};

// The three experiment setups on (0,2)x(0,1).
SimConfig experiment_config(int id, double h, double k);

// Square-domain configuration used for the convergence studies.
SimConfig benchmark_config(double h, double k);

// Parse "1/32" or "0.03125" into a mesh/time size.
double parse_resolution(const std::string& text);

// Flat "key = value" configuration file ('#' starts a comment). Returns the
// pairs in file order; duplicate keys keep the last value.
std::vector<std::pair<std::string, std::string>> read_flat_config(const std::string& path);

}  // namespace vcfem
