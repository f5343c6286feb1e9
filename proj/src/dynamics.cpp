#include "pga/dynamics.hpp"

#include <stdexcept>

namespace pga {

namespace {

void hard_zero_compat_row(SpectralField& du) {
    const int m = du.m();
    for (int r = 0; r < 2 * m + 1; ++r) {
        if (r == m) continue;
        du.coeffs()(r, 0) = Complex(0.0, 0.0);
    }
}

}  // namespace

Tendency Tendency::zero(int m) {
    return {SpectralField(m, Parity::EvenZ), SpectralField(m, Parity::EvenZ),
            SpectralField(m, Parity::OddZ)};
}

Tendency rhs_primitive(const State& state, const Params& p) {
    state.validate();
    if (state.m() != p.m) throw std::invalid_argument("rhs_primitive: truncation mismatch");
    const SpectralField& u = state.u;
    const SpectralField& v = state.v;
    const SpectralField& T = state.T;

    SpectralField ux = differentiate(u, Axis::X);
    SpectralField uz = differentiate(u, Axis::Z);
    SpectralField w = -antiderivative_z(ux);

    SpectralField puux = galerkin_product(u, ux, Parity::EvenZ);
    SpectralField nu_adv = puux + galerkin_product(w, uz, Parity::EvenZ);
    SpectralField nv_adv = galerkin_product(u, differentiate(v, Axis::X), Parity::EvenZ) +
                           galerkin_product(w, differentiate(v, Axis::Z), Parity::EvenZ);
    SpectralField nT_adv = galerkin_product(u, differentiate(T, Axis::X), Parity::OddZ) +
                           galerkin_product(w, differentiate(T, Axis::Z), Parity::OddZ);

    SpectralField px = detail::assemble_px(ux, v, T, puux, p);

    Tendency out;
    out.du = p.nu * second_derivative_z(u) - nu_adv - p.eps1 * u + p.f0 * v - px;
    out.dv = p.nu * second_derivative_z(v) - nv_adv - p.eps1 * v - p.f0 * u;
    out.dT = p.kappa * laplacian(T) - nT_adv;
    hard_zero_compat_row(out.du);
    return out;
}

SpectralField helmholtz_invert(const SpectralField& f, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("helmholtz_invert: alpha must be >= 0");
    if (alpha == 0.0) return f;
    SpectralField out = f;
    for (int k2 = 1; k2 <= f.m(); ++k2) {
        const double w = kTwoPi * k2;
        out.coeffs().col(k2) /= 1.0 + alpha * alpha * w * w;
    }
    return out;
}

SpectralField helmholtz_apply(const SpectralField& f, double alpha) {
    SpectralField out = f;
    for (int k2 = 1; k2 <= f.m(); ++k2) {
        const double w = kTwoPi * k2;
        out.coeffs().col(k2) *= 1.0 + alpha * alpha * w * w;
    }
    return out;
}

Tendency rhs_voigt(const State& state, const Params& p) {
    if (!(p.alpha > 0.0))
        throw std::invalid_argument("rhs_voigt: alpha must be > 0 (alpha = 0 is the primitive system)");
    state.validate();
    if (state.m() != p.m) throw std::invalid_argument("rhs_voigt: truncation mismatch");
    const SpectralField& u = state.u;
    const SpectralField& v = state.v;
    const SpectralField& T = state.T;

    SpectralField ux = differentiate(u, Axis::X);
    SpectralField uz = differentiate(u, Axis::Z);
    SpectralField w = -antiderivative_z(ux);

    SpectralField puux = galerkin_product(u, ux, Parity::EvenZ);
    SpectralField nu_adv = puux + galerkin_product(w, uz, Parity::EvenZ);
    SpectralField nv_adv = galerkin_product(u, differentiate(v, Axis::X), Parity::EvenZ) +
                           galerkin_product(w, differentiate(v, Axis::Z), Parity::EvenZ);
    SpectralField nT_adv = galerkin_product(u, differentiate(T, Axis::X), Parity::OddZ) +
                           galerkin_product(w, differentiate(T, Axis::Z), Parity::OddZ);

    SpectralField px = detail::assemble_px(ux, v, T, puux, p);

    SpectralField fu = p.nu * second_derivative_z(u) - nu_adv - p.eps1 * u + p.f0 * v - px;
    SpectralField fv = p.nu * second_derivative_z(v) - nv_adv - p.eps1 * v - p.f0 * u;

    Tendency out;
    out.du = helmholtz_invert(fu, p.alpha);
    out.dv = helmholtz_invert(fv, p.alpha);
    out.dT = p.kappa * laplacian(T) - nT_adv;
    hard_zero_compat_row(out.du);
    return out;
}

SpectralField rhs_hydrostatic_damped(const SpectralField& u, const Params& p, double alpha) {
    if (u.parity() != Parity::EvenZ)
        throw std::invalid_argument("rhs_hydrostatic_damped: u must be even in z");
    if (alpha < 0.0) throw std::invalid_argument("rhs_hydrostatic_damped: alpha must be >= 0");
    const double defect = compatibility_defect(u);
    if (defect > 1e-10)
        throw std::invalid_argument("rhs_hydrostatic_damped: incompatible u (defect " +
                                    std::to_string(defect) + ")");

    SpectralField ux = differentiate(u, Axis::X);
    SpectralField w = -antiderivative_z(ux);
    SpectralField puux = galerkin_product(u, ux, Parity::EvenZ);
    SpectralField adv = puux + galerkin_product(w, differentiate(u, Axis::Z), Parity::EvenZ);

    // p_x of the reduced system: eps2 (J - zmean J) - zmean(P_m[2 u u_x]).
    SpectralField J = antiderivative_z(antiderivative_z(differentiate(ux, Axis::X)));
    SpectralField px = p.eps2 * (J - zmean(J)) - 2.0 * zmean(puux);

    SpectralField du = p.nu * second_derivative_z(u) - adv - p.eps1 * u - px;
    if (alpha > 0.0) du = helmholtz_invert(du, alpha);
    hard_zero_compat_row(du);
    return du;
}

}  // namespace pga
