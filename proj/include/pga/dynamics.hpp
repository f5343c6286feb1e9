//==============================================================================
// dynamics.hpp
// Right-hand sides of the three systems:
//   Primitive          u_t = nu u_zz - P_m[u u_x + w u_z] - eps1 u + f0 v - p_x
//                      v_t = nu v_zz - P_m[u v_x + w v_z] - eps1 v - f0 u
//                      T_t = kappa lap T - Pi_m[u T_x + w T_z]
//   Voigt              (I - alpha^2 d_zz) u_t = momentum force (temperature is
//                      not regularized)
//   HydrostaticDamped  the f0 = 0, v = T = 0 reduction in u alone; alpha > 0
//                      selects its Voigt variant.
//==============================================================================
#pragma once

#include "pga/fields.hpp"

namespace pga {

enum class SystemKind { Primitive, Voigt, HydrostaticDamped };

struct Tendency {
    SpectralField du;  // EvenZ
    SpectralField dv;  // EvenZ
    SpectralField dT;  // OddZ

    static Tendency zero(int m);
};

Tendency rhs_primitive(const State& state, const Params& p);

// Divides mode k2 by (1 + alpha^2 (2 pi k2)^2); exact inverse of
// (I - alpha^2 d_zz) on the truncated space. alpha = 0 is the identity.
SpectralField helmholtz_invert(const SpectralField& f, double alpha);

// (I - alpha^2 d_zz) f, the forward operator.
SpectralField helmholtz_apply(const SpectralField& f, double alpha);

// Requires p.alpha > 0. Momentum forces are Helmholtz-inverted; dT is not.
Tendency rhs_voigt(const State& state, const Params& p);

// u-only subsystem; alpha = 0 gives the damped hydrostatic system, alpha > 0
// its Voigt regularization.
SpectralField rhs_hydrostatic_damped(const SpectralField& u, const Params& p, double alpha);

}  // namespace pga
