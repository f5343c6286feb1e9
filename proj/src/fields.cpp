#include "pga/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace pga {

void Params::validate() const {
    if (m < 1) throw std::invalid_argument("params: truncation m must be >= 1");
    if (nu < 0.0) throw std::invalid_argument("params: nu must be >= 0");
    if (!(kappa > 0.0)) throw std::invalid_argument("params: kappa must be > 0");
    if (!(eps1 > 0.0)) throw std::invalid_argument("params: eps1 must be > 0");
    if (!(eps2 > 0.0))
        throw std::invalid_argument("params: eps2 must be > 0 (weak dissipation is required)");
    if (alpha < 0.0) throw std::invalid_argument("params: alpha must be >= 0");
    if (!std::isfinite(f0)) throw std::invalid_argument("params: f0 must be finite");
}

State::State(SpectralField u_, SpectralField v_, SpectralField T_, double t_)
    : u(std::move(u_)), v(std::move(v_)), T(std::move(T_)), t(t_) {}

State State::zero(int m) {
    return {SpectralField(m, Parity::EvenZ), SpectralField(m, Parity::EvenZ),
            SpectralField(m, Parity::OddZ), 0.0};
}

void State::validate(double tol) const {
    if (u.parity() != Parity::EvenZ || v.parity() != Parity::EvenZ ||
        T.parity() != Parity::OddZ)
        throw std::invalid_argument("state: parity layout must be (even, even, odd)");
    if (u.m() != v.m() || u.m() != T.m())
        throw std::invalid_argument("state: fields must share the truncation");
    if (!all_finite()) throw std::invalid_argument("state: non-finite coefficient");
    const double sym = std::max({u.conjugate_symmetry_defect(), v.conjugate_symmetry_defect(),
                                 T.conjugate_symmetry_defect()});
    if (sym > tol)
        throw std::invalid_argument("state: conjugate symmetry defect " + std::to_string(sym));
    const double comp = compatibility_defect(u);
    if (comp > tol)
        throw std::invalid_argument("state: compatibility defect " + std::to_string(comp));
}

double compatibility_defect(const SpectralField& u) {
    if (u.parity() != Parity::EvenZ)
        throw std::invalid_argument("compatibility_defect: expects an even field");
    const int m = u.m();
    double s = 0.0;
    for (int r = 0; r < 2 * m + 1; ++r) {
        if (r == m) continue;
        s += std::norm(u.coeffs()(r, 0));
    }
    return std::sqrt(s);
}

std::pair<SpectralField, double> enforce_compatibility(const SpectralField& u) {
    const double defect = compatibility_defect(u);
    SpectralField out = u;
    const int m = u.m();
    for (int r = 0; r < 2 * m + 1; ++r) {
        if (r == m) continue;
        out.coeffs()(r, 0) = Complex(0.0, 0.0);
    }
    return {out, defect};
}

SpectralField compute_w(const SpectralField& u) {
    // Incompatibility surfaces as a nonzero z-mean row of u_x and is rejected
    // by antiderivative_z.
    return -antiderivative_z(differentiate(u, Axis::X));
}

SpectralField compute_pz(const SpectralField& u, const SpectralField& T, const Params& p) {
    if (u.m() != T.m()) throw std::invalid_argument("compute_pz: truncation mismatch");
    return -T - p.eps2 * compute_w(u);
}

namespace detail {

SpectralField assemble_px(const SpectralField& ux, const SpectralField& v,
                          const SpectralField& T, const SpectralField& puux,
                          const Params& p) {
    SpectralField J = antiderivative_z(antiderivative_z(differentiate(ux, Axis::X)));
    SpectralField A = p.eps2 * J - antiderivative_z(differentiate(T, Axis::X));
    SpectralField px = A - zmean(A) + p.f0 * zmean(v) - 2.0 * zmean(puux);
    px.coeffs()(px.m(), 0) -= p.f0 * mean(v);
    return px;
}

}  // namespace detail

SpectralField compute_px(const State& state, const Params& p) {
    state.validate();
    SpectralField ux = differentiate(state.u, Axis::X);
    SpectralField puux = galerkin_product(state.u, ux, Parity::EvenZ);
    return detail::assemble_px(ux, state.v, state.T, puux, p);
}

Diagnostics compute_diagnostics(const State& state, const Params& p) {
    state.validate();
    Diagnostics d;
    d.w = compute_w(state.u);
    d.px = compute_px(state, p);
    d.pz = compute_pz(state.u, state.T, p);
    d.c = mean(state.u);
    d.d = zmean(state.v);
    return d;
}

double barotropic_ode_rhs(const State& state, const Params& p) {
    return -p.eps1 * mean(state.u) + p.f0 * mean(state.v);
}

}  // namespace pga
