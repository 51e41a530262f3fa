#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "vcfem/config.hpp"
#include "vcfem/mesh.hpp"
#include "vcfem/spaces.hpp"

using namespace vcfem;

TEST_CASE("structured mesh: basic counts") {
    const Mesh m1 = build_structured_mesh(1.0, 1.0, 1.0);
    CHECK(m1.num_vertices() == 4);
    CHECK(m1.num_triangles() == 2);

    const Mesh m2 = build_structured_mesh(1.0, 1.0, 0.5);
    CHECK(m2.num_vertices() == 9);
    CHECK(m2.num_triangles() == 8);
    CHECK(m2.boundary_edges.size() == 8);
}

TEST_CASE("structured mesh: counts verified by enumeration") {
    const Mesh m = build_structured_mesh(2.0, 1.0, 1.0 / 32.0);
    CHECK(m.num_vertices() == 2145);
    CHECK(m.num_triangles() == 4096);

    // enumerate distinct vertex coordinates reachable from triangles
    std::set<std::pair<long, long>> seen;
    for (const auto& t : m.triangles)
        for (int v : t)
            seen.insert({std::lround(m.vertices[v][0] * 1e6), std::lround(m.vertices[v][1] * 1e6)});
    CHECK(seen.size() == 2145);
}

TEST_CASE("structured mesh: invalid sizes are rejected with the value named") {
    CHECK_THROWS_AS(build_structured_mesh(1.0, 1.0, 0.3), ConfigError);
    CHECK_THROWS_AS(build_structured_mesh(0.3, 1.0, 0.25), ConfigError);
    CHECK_THROWS_AS(build_structured_mesh(1.0, 1.0, -0.5), ConfigError);
    try {
        build_structured_mesh(1.0, 1.0, 0.3);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("0.3") != std::string::npos);
    }
}

TEST_CASE("structured mesh: geometric invariants") {
    const Mesh m = build_structured_mesh(2.0, 1.0, 0.125);
    const double half_cell = 0.125 * 0.125 / 2.0;

    double total = 0.0;
    for (int t = 0; t < m.num_triangles(); ++t) {
        const double a = m.signed_area(t);
        CHECK(a > 0.0);
        CHECK(a == doctest::Approx(half_cell).epsilon(1e-12));
        total += a;
    }
    CHECK(total == doctest::Approx(2.0).epsilon(1e-12));

    double boundary_len = 0.0;
    for (const auto& e : m.boundary_edges) {
        const auto& pa = m.vertices[e.a];
        const auto& pb = m.vertices[e.b];
        boundary_len += std::hypot(pb[0] - pa[0], pb[1] - pa[1]);
    }
    CHECK(boundary_len == doctest::Approx(2.0 * (2.0 + 1.0)).epsilon(1e-12));

    // every boundary edge is an edge of exactly one triangle
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : m.triangles)
        for (int k = 0; k < 3; ++k) {
            int a = t[k], b = t[(k + 1) % 3];
            if (a > b) std::swap(a, b);
            edge_count[{a, b}]++;
        }
    for (const auto& e : m.boundary_edges) {
        int a = e.a, b = e.b;
        if (a > b) std::swap(a, b);
        REQUIRE(edge_count.count({a, b}) == 1);
        CHECK(edge_count[{a, b}] == 1);
        // the recorded owning triangle really contains the edge
        const auto& t = m.triangles[e.tri];
        int matches = 0;
        for (int v : t) matches += (v == e.a) + (v == e.b);
        CHECK(matches == 2);
    }
}

TEST_CASE("structured mesh: refinement nests") {
    const Mesh coarse = build_structured_mesh(2.0, 1.0, 0.25);
    const Mesh fine = build_structured_mesh(2.0, 1.0, 0.125);
    CHECK(meshes_nested(coarse, fine));

    // every coarse vertex coincides with a fine vertex
    std::set<std::pair<long, long>> fine_pts;
    for (const auto& p : fine.vertices)
        fine_pts.insert({std::lround(p[0] * 1e9), std::lround(p[1] * 1e9)});
    for (const auto& p : coarse.vertices)
        CHECK(fine_pts.count({std::lround(p[0] * 1e9), std::lround(p[1] * 1e9)}) == 1);

    // point location of fine vertices in the coarse mesh succeeds
    for (const auto& p : fine.vertices) {
        const int tri = locate_triangle(coarse, p[0], p[1]);
        REQUIRE(tri >= 0);
        REQUIRE(tri < coarse.num_triangles());
        const auto& t = coarse.triangles[tri];
        const auto& p0 = coarse.vertices[t[0]];
        const auto& p1 = coarse.vertices[t[1]];
        const auto& p2 = coarse.vertices[t[2]];
        const double den =
            (p1[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p1[1] - p0[1]);
        const double l1 =
            ((p[0] - p0[0]) * (p2[1] - p0[1]) - (p2[0] - p0[0]) * (p[1] - p0[1])) / den;
        const double l2 =
            ((p1[0] - p0[0]) * (p[1] - p0[1]) - (p[0] - p0[0]) * (p1[1] - p0[1])) / den;
        CHECK(l1 >= -1e-12);
        CHECK(l2 >= -1e-12);
        CHECK(1.0 - l1 - l2 >= -1e-12);
    }
}

TEST_CASE("boundary classification: experiment setups") {
    // experiment 1: left edge clamped, everything else traction, no contact
    {
        SimConfig cfg = experiment_config(1, 1.0 / 4.0, 1.0 / 4.0);
        Mesh m = build_structured_mesh(cfg.width, cfg.height, cfg.h);
        classify_boundary(m, cfg.boundary);
        for (const auto& e : m.boundary_edges) {
            const auto& pa = m.vertices[e.a];
            const auto& pb = m.vertices[e.b];
            const bool left = pa[0] == 0.0 && pb[0] == 0.0;
            CHECK(e.tag == (left ? BoundaryTag::Gamma1 : BoundaryTag::Gamma2));
        }
    }
    // experiment 2 at h=1/32: the bottom edge splits at x=1 by midpoint
    {
        SimConfig cfg = experiment_config(2, 1.0 / 32.0, 1.0 / 32.0);
        Mesh m = build_structured_mesh(cfg.width, cfg.height, cfg.h);
        classify_boundary(m, cfg.boundary);
        int gamma3 = 0;
        for (const auto& e : m.boundary_edges) {
            const auto& pa = m.vertices[e.a];
            const auto& pb = m.vertices[e.b];
            if (pa[1] != 0.0 || pb[1] != 0.0) continue;
            const double mid = 0.5 * (pa[0] + pb[0]);
            if (std::abs(mid - 0.984375) < 1e-9) CHECK(e.tag == BoundaryTag::Gamma3);
            if (std::abs(mid - 1.015625) < 1e-9) CHECK(e.tag == BoundaryTag::Gamma2);
            gamma3 += e.tag == BoundaryTag::Gamma3;
        }
        CHECK(gamma3 == 32);
    }
}

TEST_CASE("boundary classification: uncovered edges rejected") {
    Mesh m = build_structured_mesh(1.0, 1.0, 0.5);
    BoundarySpec spec;
    spec.segments = {{false, 0.0, 0.0, 1.0, BoundaryTag::Gamma1},
                     {true, 1.0, 0.0, 1.0, BoundaryTag::Gamma2},
                     {false, 1.0, 0.0, 1.0, BoundaryTag::Gamma2}};
    CHECK_THROWS_AS(classify_boundary(m, spec), ConfigError);
}
