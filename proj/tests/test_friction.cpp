#include <doctest.h>

#include <cmath>
#include <random>

#include "vcfem/friction.hpp"

using namespace vcfem;

namespace {

Vec2 random_vec(std::mt19937_64& rng, double scale = 3.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

}  // namespace

TEST_CASE("potential value") {
    FrictionModel m;  // bound = 20
    CHECK(j_value(m, {0.0, 0.0}) == 0.0);
    CHECK(j_value(m, {3.0, 4.0}) == doctest::Approx(100.0));
    CHECK(j_value(m, {-3.0, -4.0}) == doctest::Approx(100.0));
}

TEST_CASE("directional derivative") {
    FrictionModel m;
    CHECK(j0_dir(m, {0.0, 0.0}, {3.0, 4.0}) == doctest::Approx(100.0));
    const Vec2 xi{1.5, -2.0};
    CHECK(j0_dir(m, xi, xi) == doctest::Approx(j_value(m, xi)));
    CHECK(j0_dir(m, {1.0, 0.0}, {0.0, 1.0}) == doctest::Approx(0.0));
}

TEST_CASE("directional derivative identities") {
    FrictionModel m;
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> ut(0.0, 5.0);
    for (int i = 0; i < 5000; ++i) {
        const Vec2 xi = random_vec(rng);
        const Vec2 d1 = random_vec(rng);
        const Vec2 d2 = random_vec(rng);
        const double t = ut(rng);

        // positive homogeneity in the direction
        CHECK(j0_dir(m, xi, {t * d1[0], t * d1[1]}) ==
              doctest::Approx(t * j0_dir(m, xi, d1)).epsilon(1e-12));

        // subadditivity
        CHECK(j0_dir(m, xi, {d1[0] + d2[0], d1[1] + d2[1]}) <=
              j0_dir(m, xi, d1) + j0_dir(m, xi, d2) + 1e-10);

        // growth bound
        CHECK(std::abs(j0_dir(m, xi, d1)) <=
              m.bound * std::hypot(d1[0], d1[1]) + 1e-12);

        // relaxed monotonicity with zero constant (convexity of the norm)
        const Vec2 xi2 = random_vec(rng);
        const Vec2 fwd{xi2[0] - xi[0], xi2[1] - xi[1]};
        const Vec2 bwd{xi[0] - xi2[0], xi[1] - xi2[1]};
        CHECK(j0_dir(m, xi, fwd) + j0_dir(m, xi2, bwd) <= 1e-10);
    }
}

TEST_CASE("regularized potential") {
    FrictionModel m;
    const double rho = 1e-3;

    SUBCASE("zero point") {
        const JReg r = j_reg(m, {0.0, 0.0}, rho);
        CHECK(r.value == 0.0);
        CHECK(r.grad[0] == 0.0);
        CHECK(r.grad[1] == 0.0);
    }

    SUBCASE("asymptotics away from the kink") {
        const Vec2 xi{2.0, -1.0};
        const double n = std::hypot(xi[0], xi[1]);
        const JReg r = j_reg(m, xi, rho);
        const double rel = rho * rho / (n * n);
        CHECK(std::abs(r.grad[0] - m.bound * xi[0] / n) <= 2.0 * rel * m.bound);
        CHECK(std::abs(r.grad[1] - m.bound * xi[1] / n) <= 2.0 * rel * m.bound);
    }

    SUBCASE("uniform gap to the exact potential") {
        std::mt19937_64 rng(43);
        for (int i = 0; i < 2000; ++i) {
            const Vec2 xi = random_vec(rng);
            const JReg r = j_reg(m, xi, rho);
            CHECK(std::abs(r.value - j_value(m, xi)) <= m.bound * rho + 1e-12);
        }
    }

    SUBCASE("gradient matches central finite differences") {
        std::mt19937_64 rng(47);
        const double step = 1e-6;
        for (int i = 0; i < 200; ++i) {
            const Vec2 xi = random_vec(rng);
            const JReg r = j_reg(m, xi, 1e-2);
            for (int c = 0; c < 2; ++c) {
                Vec2 lo = xi, hi = xi;
                lo[c] -= step;
                hi[c] += step;
                const double fd =
                    (j_reg(m, hi, 1e-2).value - j_reg(m, lo, 1e-2).value) / (2.0 * step);
                const double scale = std::max(1.0, std::abs(r.grad[c]));
                CHECK(std::abs(fd - r.grad[c]) / scale <= 1e-6);
            }
        }
    }
}

TEST_CASE("model validation") {
    FrictionModel m;
    m.bound = -1.0;
    CHECK_THROWS_AS(m.validate(), ConfigError);
    m.bound = 20.0;
    m.rho = 0.0;
    CHECK_THROWS_AS(m.validate(), ConfigError);
}
