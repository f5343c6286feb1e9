//==============================================================================
// fields.hpp
// Prognostic state (u, v, T) and the diagnostic reconstruction of w, p_x, p_z
// from it:
//   w   = -int_0^z u_x ds
//   p_z = -T - eps2 w
//   p_x = eps2 J - int_0^z T_x + zmean(int_0^z T_x - eps2 J + f0 v)
//         - zmean(P_m[2 u u_x]) - f0 mean(v),      J = int int u_xx
// u must satisfy the compatibility condition int_0^1 u_x dz = 0, i.e. its
// (k1 != 0, k2 = 0) modes vanish; the (0,0) mode is the barotropic mean c(t).
//==============================================================================
#pragma once

#include "pga/spectral.hpp"

namespace pga {

struct Params {
    double nu = 0.0;     // vertical viscosity, >= 0
    double kappa = 1.0;  // diffusivity, > 0
    double eps1 = 1.0;   // Rayleigh damping, > 0
    double eps2 = 1.0;   // hydrostatic damping, > 0 (the weak dissipation)
    double f0 = 0.0;     // Coriolis parameter
    double alpha = 0.0;  // Voigt length, >= 0 (0 selects the unregularized systems)
    int m = 1;           // truncation, >= 1

    void validate() const;
};

struct State {
    SpectralField u;  // EvenZ
    SpectralField v;  // EvenZ
    SpectralField T;  // OddZ
    double t = 0.0;

    State() = default;
    State(SpectralField u_, SpectralField v_, SpectralField T_, double t_ = 0.0);

    static State zero(int m);

    int m() const { return u.m(); }
    bool all_finite() const { return u.all_finite() && v.all_finite() && T.all_finite(); }

    // Throws unless parities/truncations match and defects are within tol.
    void validate(double tol = 1e-10) const;
};

struct Diagnostics {
    SpectralField w;   // OddZ
    SpectralField px;  // EvenZ
    SpectralField pz;  // OddZ
    double c = 0.0;    // barotropic mean of u, the (0,0) coefficient
    SpectralField d;   // z-mean of v (even field carried on the k2 = 0 row)
};

// L2 norm of the (k1 != 0, k2 = 0) content of an even field.
double compatibility_defect(const SpectralField& u);

// Zeroes the (k1 != 0, k2 = 0) modes; returns the projected field and the
// L2 norm of what was removed. The (0,0) barotropic mode is preserved.
std::pair<SpectralField, double> enforce_compatibility(const SpectralField& u);

SpectralField compute_w(const SpectralField& u);

SpectralField compute_pz(const SpectralField& u, const SpectralField& T, const Params& p);

SpectralField compute_px(const State& state, const Params& p);

Diagnostics compute_diagnostics(const State& state, const Params& p);

// d/dt of the (0,0) mode of u: -eps1 c + f0 * mean(v).
double barotropic_ode_rhs(const State& state, const Params& p);

namespace detail {
// p_x from precomputed u_x and P_m[u u_x], so tendency evaluation can share
// the product work. T may be a zero field; for the hydrostatic special case
// pass f0 = 0 in p.
SpectralField assemble_px(const SpectralField& ux, const SpectralField& v,
                          const SpectralField& T, const SpectralField& puux,
                          const Params& p);
}  // namespace detail

}  // namespace pga
