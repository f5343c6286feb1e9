#include "pga/energy.hpp"

namespace pga {

namespace {

double sq(double x) { return x * x; }

// Sum over modes of |a_k|^2 (2 pi k1)^{2ax} (2 pi k2)^{2az}.
double seminorm2(const SpectralField& f, int ax, int az) {
    return sq(sobolev_seminorm(f, ax, az));
}

}  // namespace

EnergyReport energy_functionals(const State& state) {
    EnergyReport r;
    const SpectralField& u = state.u;
    const SpectralField& v = state.v;
    const SpectralField& T = state.T;
    SpectralField w = compute_w(u);

    r.u2 = seminorm2(u, 0, 0);
    r.v2 = seminorm2(v, 0, 0);
    r.T2 = seminorm2(T, 0, 0);
    r.w2 = seminorm2(w, 0, 0);

    r.ux2 = seminorm2(u, 1, 0);
    r.uz2 = seminorm2(u, 0, 1);
    r.vx2 = seminorm2(v, 1, 0);
    r.vz2 = seminorm2(v, 0, 1);
    r.Tx2 = seminorm2(T, 1, 0);
    r.Tz2 = seminorm2(T, 0, 1);
    r.wx2 = seminorm2(w, 1, 0);
    r.wz2 = seminorm2(w, 0, 1);
    r.uxx2 = seminorm2(u, 2, 0);

    r.grad_u2 = r.ux2 + r.uz2;
    r.grad_v2 = r.vx2 + r.vz2;
    r.grad_T2 = r.Tx2 + r.Tz2;
    r.grad_w2 = r.wx2 + r.wz2;

    r.grad_ux2 = r.uxx2 + seminorm2(u, 1, 1);
    r.grad_vx2 = seminorm2(v, 2, 0) + seminorm2(v, 1, 1);
    r.grad_Tx2 = seminorm2(T, 2, 0) + seminorm2(T, 1, 1);
    r.grad_wx2 = seminorm2(w, 2, 0) + seminorm2(w, 1, 1);

    r.grad_uz2 = seminorm2(u, 1, 1) + seminorm2(u, 0, 2);
    r.grad_vz2 = seminorm2(v, 1, 1) + seminorm2(v, 0, 2);
    r.grad_uxz2 = seminorm2(u, 2, 1) + seminorm2(u, 1, 2);
    r.grad_vxz2 = seminorm2(v, 2, 1) + seminorm2(v, 1, 2);

    // ||lap f||^2 = s(2,0) + 2 s(1,1) + s(0,2) by Parseval.
    r.lapT2 = seminorm2(T, 2, 0) + 2.0 * seminorm2(T, 1, 1) + seminorm2(T, 0, 2);
    r.lapTx2 = seminorm2(T, 3, 0) + 2.0 * seminorm2(T, 2, 1) + seminorm2(T, 1, 2);

    r.cross_Tw = inner_product(T, w);
    return r;
}

}  // namespace pga
