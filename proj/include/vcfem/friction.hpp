#pragma once
#include <array>
#include <cmath>

#include "vcfem/errors.hpp"

namespace vcfem {

// Friction dissipation pseudopotential j(xi) = bound * ||xi|| on the contact
// boundary, together with its directional derivative and the smooth
// regularization used by the velocity solver.
struct FrictionModel {
    double bound = 20.0;  // friction coefficient in front of the norm
    double rho = 1e-8;    // target (final) regularization parameter

    void validate() const {
        if (bound < 0.0) throw ConfigError("friction bound must be >= 0");
        if (!(rho > 0.0)) throw ConfigError("friction regularization must be > 0");
    }
};

using Vec2 = std::array<double, 2>;

inline double j_value(const FrictionModel& m, const Vec2& xi) {
    return m.bound * std::hypot(xi[0], xi[1]);
}

// Directional derivative of the norm potential. Convex case: equals the
// classical directional derivative; at zero it is bound * ||direction||.
inline double j0_dir(const FrictionModel& m, const Vec2& xi, const Vec2& dir) {
    const double n = std::hypot(xi[0], xi[1]);
    if (n == 0.0) return m.bound * std::hypot(dir[0], dir[1]);
    return m.bound * (xi[0] * dir[0] + xi[1] * dir[1]) / n;
}

struct JReg {
    double value;
    Vec2 grad;
};

// Smoothed potential bound*(sqrt(||xi||^2 + rho^2) - rho). The gap to
// j_value is at most bound*rho everywhere.
inline JReg j_reg(const FrictionModel& m, const Vec2& xi, double rho) {
    const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + rho * rho);
    return {m.bound * (r - rho), {m.bound * xi[0] / r, m.bound * xi[1] / r}};
}

// Scalar versions for the tangentially extracted velocity s = w . t.
inline double j_reg_value1(double bound, double s, double rho) {
    return bound * (std::sqrt(s * s + rho * rho) - rho);
}
inline double j_reg_grad1(double bound, double s, double rho) {
    return bound * s / std::sqrt(s * s + rho * rho);
}
inline double j_reg_hess1(double bound, double s, double rho) {
    const double q = s * s + rho * rho;
    return bound * rho * rho / (q * std::sqrt(q));
}

}  // namespace vcfem
