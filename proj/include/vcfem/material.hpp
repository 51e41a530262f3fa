#pragma once
#include <cmath>
#include <string>

#include "vcfem/errors.hpp"
#include "vcfem/tensor.hpp"

namespace vcfem {

enum class ElasticityLaw {
    LinearDamage,         // B(tau, zeta) = zeta * (2 mu tau + lambda tr(tau) I)
    VonMisesProjection,   // B(tau, zeta) = eta * (tau - P_{K(zeta)}(tau))
};

// Isotropic Kelvin-Voigt viscoelasticity with damage-degraded elasticity.
// Defaults are the simulation data set used throughout the experiments.
struct MaterialParams {
    double visc_shear = 2.0;    // shear viscosity coefficient
    double visc_bulk = 2.0;     // bulk (trace) viscosity coefficient
    double lame_mu = 4.0;
    double lame_lambda = 4.0;
    double kappa = 0.5;         // microcrack diffusion coefficient
    double source_floor = 0.2;  // damage below this value no longer amplifies the source

    // Von Mises variant only. Never exercised by the stock experiments;
    // the defaults are artifact choices, not calibrated values.
    double yield_sigma = 1.0;
    double eta = 1.0;
    ElasticityLaw law = ElasticityLaw::LinearDamage;

    void validate() const {
        auto positive = [](double v, const char* name) {
            if (!(v > 0.0))
                throw ConfigError(std::string("material parameter ") + name +
                                  " must be positive, got " + std::to_string(v));
        };
        positive(visc_shear, "visc_shear");
        positive(visc_bulk, "visc_bulk");
        positive(lame_mu, "lame_mu");
        positive(lame_lambda, "lame_lambda");
        positive(kappa, "kappa");
        positive(source_floor, "source_floor");
        if (law == ElasticityLaw::VonMisesProjection) {
            positive(yield_sigma, "yield_sigma");
            positive(eta, "eta");
        }
    }

    // Strong monotonicity constant of the viscosity operator.
    double monotonicity_constant() const { return 2.0 * visc_shear; }
};

// A(tau) = 2*visc_shear*tau + visc_bulk*tr(tau)*I
inline SymTensor2 apply_viscosity_A(const SymTensor2& tau, const MaterialParams& p) {
    const double tr = p.visc_bulk * tau.trace();
    const double a = 2.0 * p.visc_shear;
    return {a * tau.xx + tr, a * tau.yy + tr, a * tau.xy};
}

// B(tau, zeta) = zeta * (2*mu*tau + lambda*tr(tau)*I), zeta in [0,1].
// Values within 1e-12 of the interval are clamped; anything farther is a
// damage-solver defect and rejected.
inline SymTensor2 apply_elasticity_B(const SymTensor2& tau, double zeta,
                                     const MaterialParams& p) {
    if (zeta < -1e-12 || zeta > 1.0 + 1e-12)
        throw ContractError("elasticity operator called with damage value " +
                            std::to_string(zeta) + " outside [0,1]");
    const double z = zeta < 0.0 ? 0.0 : (zeta > 1.0 ? 1.0 : zeta);
    const double tr = p.lame_lambda * tau.trace();
    const double a = 2.0 * p.lame_mu;
    return {z * (a * tau.xx + tr), z * (a * tau.yy + tr), z * a * tau.xy};
}

// Mechanical damage source. Continuous at zeta = floor by construction:
// the lower branch is the upper branch frozen at the floor value.
inline double damage_source(const SymTensor2& tau, double zeta, double floor = 0.2) {
    const double z = zeta < floor ? floor : zeta;
    return 2.0 * (1.0 - z) / z - 20.0 * tau.norm2();
}

// Orthogonal projection onto {tau : ||dev(tau)|| <= zeta * sigma_Y}.
inline SymTensor2 project_von_mises(const SymTensor2& tau, double zeta,
                                    const MaterialParams& p) {
    const double radius = zeta * p.yield_sigma;
    const SymTensor2 dev = tau.deviator();
    const double dn = dev.norm();
    if (dn <= radius) return tau;
    const double m = 0.5 * tau.trace();
    const double s = radius / dn;
    return {m + s * dev.xx, m + s * dev.yy, s * dev.xy};
}

inline SymTensor2 apply_elasticity_von_mises(const SymTensor2& tau, double zeta,
                                             const MaterialParams& p) {
    return p.eta * (tau - project_von_mises(tau, zeta, p));
}

// Dispatch on the configured law.
inline SymTensor2 apply_elasticity(const SymTensor2& tau, double zeta,
                                   const MaterialParams& p) {
    if (p.law == ElasticityLaw::VonMisesProjection)
        return apply_elasticity_von_mises(tau, zeta, p);
    return apply_elasticity_B(tau, zeta, p);
}

}  // namespace vcfem
