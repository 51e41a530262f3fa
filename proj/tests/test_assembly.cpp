#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vcfem/assembly.hpp"
#include "vcfem/config.hpp"

using namespace vcfem;

namespace {

Mesh contact_square(double h) {
    Mesh m = build_structured_mesh(1.0, 1.0, h);
    BoundarySpec spec;
    spec.segments = {{false, 0.0, 0.0, 1.0, BoundaryTag::Gamma1},
                     {true, 1.0, 0.0, 1.0, BoundaryTag::Gamma2},
                     {false, 1.0, 0.0, 1.0, BoundaryTag::Gamma2},
                     {true, 0.0, 0.0, 1.0, BoundaryTag::Gamma3}};
    classify_boundary(m, spec);
    return m;
}

// the canonical reference triangle (0,0)-(1,0)-(0,1) as a bare mesh
Mesh reference_triangle() {
    Mesh m;
    m.width = 1.0;
    m.height = 1.0;
    m.nx = 1;
    m.ny = 1;
    m.vertices = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    m.triangles = {{0, 1, 2}};
    return m;
}

}  // namespace

TEST_CASE("viscosity matrix equals the Voigt-route assembly") {
    const Mesh m = contact_square(0.5);
    const DofMap dm = build_velocity_dofmap(m);
    MaterialParams p;
    const SparseSpd k = assemble_viscosity(m, dm, p);

    oracle::Dense kd(dm.n_free, dm.n_free);
    for (int tri = 0; tri < m.num_triangles(); ++tri) {
        const auto ke = oracle::element_viscosity_voigt(m, tri, p);
        const auto& t = m.triangles[tri];
        for (int i = 0; i < 3; ++i)
            for (int ci = 0; ci < 2; ++ci) {
                const int di = dm.dof(t[i], ci);
                if (di < 0) continue;
                for (int j = 0; j < 3; ++j)
                    for (int cj = 0; cj < 2; ++cj) {
                        const int dj = dm.dof(t[j], cj);
                        if (dj >= 0) kd(di, dj) += ke[2 * i + ci][2 * j + cj];
                    }
            }
    }
    for (int r = 0; r < dm.n_free; ++r)
        for (int c = 0; c < dm.n_free; ++c)
            CHECK(k.get(r, c) == doctest::Approx(kd(r, c)).epsilon(1e-14));
}

TEST_CASE("viscosity matrix: symmetry and definiteness") {
    const Mesh m = contact_square(0.25);
    const DofMap dm = build_velocity_dofmap(m);
    MaterialParams p;
    const SparseSpd k = assemble_viscosity(m, dm, p);

    for (int r = 0; r < k.n; ++r)
        for (int idx = k.row_ptr[r]; idx < k.row_ptr[r + 1]; ++idx)
            CHECK(k.vals[idx] == doctest::Approx(k.get(k.col_idx[idx], r)).epsilon(1e-12));

    // all eigenvalues positive (dense Jacobi oracle)
    const auto ev = oracle::symmetric_eigenvalues(oracle::to_dense(k));
    CHECK(ev.front() > 0.0);

    // random Rayleigh quotients bounded below by the monotonicity constant
    // times the strain quotient (spot check: simply positive and >= m_A * lam_min_strain)
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> x(static_cast<size_t>(k.n));
        for (auto& v : x) v = u(rng);
        const std::vector<double> kx = k.matvec(x);
        double xkx = 0.0, xx = 0.0;
        for (int i = 0; i < k.n; ++i) {
            xkx += x[i] * kx[i];
            xx += x[i] * x[i];
        }
        CHECK(xkx > 0.0);
        CHECK(xkx / xx >= ev.front() - 1e-10);
    }
}

TEST_CASE("viscosity matrix is SPD for every experiment configuration") {
    for (int id : {1, 2, 3}) {
        SimConfig cfg = experiment_config(id, 0.25, 0.25);
        Mesh m = build_structured_mesh(cfg.width, cfg.height, cfg.h);
        classify_boundary(m, cfg.boundary);
        const DofMap dm = build_velocity_dofmap(m);
        const SparseSpd k = assemble_viscosity(m, dm, cfg.material);
        const auto ev = oracle::symmetric_eigenvalues(oracle::to_dense(k));
        CHECK(ev.front() > 0.0);
    }
}

TEST_CASE("viscosity matrix annihilates translations on interior rows") {
    const Mesh m = contact_square(0.25);
    const DofMap dm = build_velocity_dofmap(m);
    MaterialParams p;
    const SparseSpd k = assemble_viscosity(m, dm, p);

    // constant translation scattered over the free unknowns
    std::vector<double> x(static_cast<size_t>(dm.n_free), 0.0);
    for (int v = 0; v < m.num_vertices(); ++v) {
        if (dm.dof(v, 0) >= 0) x[dm.dof(v, 0)] = 0.7;
        if (dm.dof(v, 1) >= 0) x[dm.dof(v, 1)] = -0.3;
    }
    const std::vector<double> kx = k.matvec(x);

    // rows of vertices whose whole stencil is free see a genuine translation
    for (int v = 0; v < m.num_vertices(); ++v) {
        const auto& pt = m.vertices[v];
        const bool deep = pt[0] > 0.26 && pt[0] < 0.74 && pt[1] > 0.26 && pt[1] < 0.74;
        if (!deep) continue;
        CHECK(std::abs(kx[dm.dof(v, 0)]) <= 1e-12);
        CHECK(std::abs(kx[dm.dof(v, 1)]) <= 1e-12);
    }
}

TEST_CASE("elastic residual") {
    const Mesh m = contact_square(0.25);
    const DofMap dm = build_velocity_dofmap(m);
    MaterialParams p;

    VectorField u;
    u.v.assign(2 * m.vertices.size(), 0.0);
    ScalarField zeta;
    zeta.v.assign(m.vertices.size(), 1.0);

    SUBCASE("zero displacement gives a zero residual") {
        const auto r = assemble_elastic_residual(u, zeta, m, dm, p);
        for (double v : r) CHECK(v == 0.0);
    }

    SUBCASE("full damage kills the residual") {
        std::mt19937_64 rng(61);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (auto& v : u.v) v = dist(rng);
        zeta.v.assign(m.vertices.size(), 0.0);
        const auto r = assemble_elastic_residual(u, zeta, m, dm, p);
        for (double v : r) CHECK(std::abs(v) <= 1e-15);
    }

    SUBCASE("random data matches the quadrature oracle") {
        std::mt19937_64 rng(67);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::uniform_real_distribution<double> dz(0.0, 1.0);
        for (auto& v : u.v) v = dist(rng);
        for (auto& v : zeta.v) v = dz(rng);
        const auto r = assemble_elastic_residual(u, zeta, m, dm, p);

        std::vector<double> ref(static_cast<size_t>(dm.n_free), 0.0);
        for (int tri = 0; tri < m.num_triangles(); ++tri) {
            const auto& t = m.triangles[tri];
            const SymTensor2 eps = strain(m, u, tri);
            std::array<std::array<double, 2>, 3> g;
            double area;
            p1_gradients(m, tri, g, area);
            for (const auto& q : oracle::midpoint_rule(m, tri)) {
                const double zq = eval_p1(m, zeta, tri, q.x, q.y);
                const SymTensor2 s = apply_elasticity_B(eps, zq, p);
                for (int i = 0; i < 3; ++i) {
                    const int dx = dm.dof(t[i], 0);
                    const int dy = dm.dof(t[i], 1);
                    if (dx >= 0) ref[dx] += q.w * (s.xx * g[i][0] + s.xy * g[i][1]);
                    if (dy >= 0) ref[dy] += q.w * (s.yy * g[i][1] + s.xy * g[i][0]);
                }
            }
        }
        for (size_t i = 0; i < ref.size(); ++i)
            CHECK(r[i] == doctest::Approx(ref[i]).epsilon(1e-13));
    }
}

TEST_CASE("load assembly") {
    SUBCASE("body force sums to f0 * area (experiment 1 data)") {
        SimConfig cfg = experiment_config(1, 0.25, 0.25);
        Mesh m = build_structured_mesh(cfg.width, cfg.height, cfg.h);
        classify_boundary(m, cfg.boundary);
        const auto raw = assemble_load_raw(cfg.load, m);
        double sum_y = 0.0, sum_x = 0.0;
        for (size_t v = 0; v < m.vertices.size(); ++v) {
            sum_x += raw[2 * v];
            sum_y += raw[2 * v + 1];
        }
        CHECK(sum_x == doctest::Approx(0.0));
        CHECK(sum_y == doctest::Approx(-0.2 * 2.0).epsilon(1e-12));
    }

    SUBCASE("traction sums to f2 * |Gamma2| (experiment 3 data)") {
        SimConfig cfg = experiment_config(3, 0.25, 0.25);
        Mesh m = build_structured_mesh(cfg.width, cfg.height, cfg.h);
        classify_boundary(m, cfg.boundary);
        const auto raw = assemble_load_raw(cfg.load, m);
        double sum_x = 0.0, sum_y = 0.0;
        for (size_t v = 0; v < m.vertices.size(); ++v) {
            sum_x += raw[2 * v];
            sum_y += raw[2 * v + 1];
        }
        CHECK(sum_x == doctest::Approx(-3.0).epsilon(1e-12));
        CHECK(sum_y == doctest::Approx(-3.0).epsilon(1e-12));
    }

    SUBCASE("zero loads and linearity") {
        const Mesh m = contact_square(0.25);
        const DofMap dm = build_velocity_dofmap(m);
        LoadSpec zero;
        for (double v : assemble_load(zero, m, dm)) CHECK(v == 0.0);

        LoadSpec a{{0.3, -0.1}, {1.0, 2.0}};
        LoadSpec b{{-0.7, 0.4}, {0.5, -1.5}};
        LoadSpec ab{{a.f0[0] + b.f0[0], a.f0[1] + b.f0[1]},
                    {a.f2[0] + b.f2[0], a.f2[1] + b.f2[1]}};
        const auto la = assemble_load(a, m, dm);
        const auto lb = assemble_load(b, m, dm);
        const auto lab = assemble_load(ab, m, dm);
        for (size_t i = 0; i < la.size(); ++i)
            CHECK(lab[i] == doctest::Approx(la[i] + lb[i]).epsilon(1e-13));
    }
}

TEST_CASE("damage operators") {
    MaterialParams p;  // kappa = 0.5

    SUBCASE("local stiffness on the reference triangle") {
        const Mesh ref = reference_triangle();
        auto [mass, stiff] = assemble_damage_operators(ref, p);
        const double expected[3][3] = {{2, -1, -1}, {-1, 1, 0}, {-1, 0, 1}};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(stiff.get(i, j) ==
                      doctest::Approx(0.5 * 0.5 * expected[i][j]).epsilon(1e-14));
        // mass total equals the triangle area
        double total = 0.0;
        for (double v : mass.vals) total += v;
        CHECK(total == doctest::Approx(0.5).epsilon(1e-14));
    }

    SUBCASE("stiffness row sums vanish; mass total is the domain area") {
        const Mesh m = contact_square(0.125);
        auto [mass, stiff] = assemble_damage_operators(m, p);
        for (int r = 0; r < stiff.n; ++r) {
            double row = 0.0;
            for (int k = stiff.row_ptr[r]; k < stiff.row_ptr[r + 1]; ++k) row += stiff.vals[k];
            CHECK(std::abs(row) <= 1e-12);
        }
        double total = 0.0;
        for (double v : mass.vals) total += v;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

        // stiffness kernel is exactly the constants (second smallest eigenvalue > 0)
        const auto ev = oracle::symmetric_eigenvalues(oracle::to_dense(stiff));
        CHECK(std::abs(ev[0]) <= 1e-12);
        CHECK(ev[1] > 1e-8);
    }
}

TEST_CASE("contact boundary quadrature") {
    const Mesh m = contact_square(0.25);
    const DofMap dm = build_velocity_dofmap(m);
    const Gamma3Quadrature quad = gamma3_quadrature(m, dm);
    REQUIRE(quad.edges.size() == 4);
    CHECK(quad.total_length == doctest::Approx(1.0));

    SUBCASE("weights sum to the edge length") {
        for (const auto& e : quad.edges)
            CHECK(e.pts[0].weight + e.pts[1].weight == doctest::Approx(e.length).epsilon(1e-14));
    }

    SUBCASE("affine integrand integrated exactly") {
        // integral of (2 + 3x) over the bottom edge [0,1]: 2 + 3/2
        double total = 0.0;
        for (const auto& e : quad.edges) {
            const double xa = m.vertices[e.va][0];
            const double xb = m.vertices[e.vb][0];
            for (const auto& p : e.pts) {
                const double x = p.phi_a * xa + p.phi_b * xb;
                total += p.weight * (2.0 + 3.0 * x);
            }
        }
        CHECK(total == doctest::Approx(3.5).epsilon(1e-14));
    }

    SUBCASE("regularized potential of a constant slip has a closed form") {
        FrictionModel fm;
        const double c = 0.37, rho = 1e-3;
        double total = 0.0;
        for (const auto& e : quad.edges)
            for (const auto& p : e.pts)
                total += p.weight * j_reg_value1(fm.bound, c, rho);
        const double closed = fm.bound * (std::sqrt(c * c + rho * rho) - rho) * 1.0;
        CHECK(total == doctest::Approx(closed).epsilon(1e-13));
    }
}

TEST_CASE("norms of P1 fields") {
    const Mesh m = contact_square(0.25);

    SUBCASE("constant strain field") {
        VectorField v;
        v.v.resize(2 * m.vertices.size());
        for (size_t i = 0; i < m.vertices.size(); ++i) {
            v.v[2 * i] = m.vertices[i][1];  // v = (y, 0)
            v.v[2 * i + 1] = 0.0;
        }
        CHECK(v_norm(m, v) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
    }

    SUBCASE("constant damage field") {
        ScalarField z;
        z.v.assign(m.vertices.size(), 0.75);
        CHECK(z0_norm(m, z) == doctest::Approx(0.75).epsilon(1e-13));
        CHECK(z_seminorm(m, z) == doctest::Approx(0.0));
    }

    SUBCASE("random fields match the quadrature oracle") {
        std::mt19937_64 rng(71);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        VectorField w;
        w.v.resize(2 * m.vertices.size());
        for (auto& x : w.v) x = u(rng);
        ScalarField z;
        z.v.resize(m.vertices.size());
        for (auto& x : z.v) x = u(rng);

        double vq = 0.0, z0q = 0.0, zsq = 0.0;
        for (int tri = 0; tri < m.num_triangles(); ++tri) {
            const SymTensor2 eps = strain(m, w, tri);
            std::array<std::array<double, 2>, 3> g;
            double area;
            p1_gradients(m, tri, g, area);
            const auto& t = m.triangles[tri];
            double gx = 0.0, gy = 0.0;
            for (int i = 0; i < 3; ++i) {
                gx += g[i][0] * z.v[t[i]];
                gy += g[i][1] * z.v[t[i]];
            }
            for (const auto& q : oracle::midpoint_rule(m, tri)) {
                vq += q.w * eps.norm2();
                const double zq = eval_p1(m, z, tri, q.x, q.y);
                z0q += q.w * zq * zq;
                zsq += q.w * (gx * gx + gy * gy);
            }
        }
        const ErrorNorms norms = error_norms(m, w, z);
        CHECK(norms.w_V == doctest::Approx(std::sqrt(vq)).epsilon(1e-12));
        CHECK(norms.zeta_Z0 == doctest::Approx(std::sqrt(z0q)).epsilon(1e-12));
        CHECK(norms.zeta_Zsemi == doctest::Approx(std::sqrt(zsq)).epsilon(1e-12));
    }

    SUBCASE("mismatched sizes are rejected") {
        VectorField bad;
        bad.v.resize(4);
        CHECK_THROWS_AS(v_norm(m, bad), ConfigError);
    }
}
