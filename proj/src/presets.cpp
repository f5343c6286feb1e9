#include "pga/presets.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace pga {

SpectralField zonal_field(int m, double amplitude, int k) {
    if (k < 1 || k > m) throw std::invalid_argument("zonal preset: need 1 <= k <= m");
    SpectralField u(m, Parity::EvenZ);
    u.set_coeff(0, k, Complex(amplitude / std::sqrt(2.0), 0.0));
    return u;
}

State taylor_like_state(int m, double amp_u, double amp_v, double amp_T, int kx, int kz) {
    if (kx < 1 || kx > m || kz < 1 || kz > m)
        throw std::invalid_argument("taylor-like preset: need 1 <= kx, kz <= m");
    State s = State::zero(m);
    // sin(2 pi kx x) cos(2 pi kz z) = -i/(2 sqrt 2) phi_{kx,kz} + conj mirror
    s.u.set_coeff(kx, kz, Complex(0.0, -amp_u / (2.0 * std::sqrt(2.0))));
    // cos(2 pi kx x) cos(2 pi kz z) = 1/(2 sqrt 2) phi_{kx,kz} + conj mirror
    s.v.set_coeff(kx, kz, Complex(amp_v / (2.0 * std::sqrt(2.0)), 0.0));
    // cos(2 pi kx x) sin(2 pi kz z) = 1/(2 sqrt 2) psi_{kx,kz} + conj mirror
    s.T.set_coeff(kx, kz, Complex(amp_T / (2.0 * std::sqrt(2.0)), 0.0));
    return s;
}

SpectralField random_band_field(int m, Parity parity, const RandomBandSpec& spec,
                                bool compatible) {
    const int kmax = (spec.kmax < 0) ? m : spec.kmax;
    if (kmax > m) throw std::invalid_argument("random-band preset: kmax must be <= m");
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SpectralField f(m, parity);
    const int k2min = (parity == Parity::OddZ) ? 1 : 0;
    for (int k1 = 0; k1 <= kmax; ++k1) {
        for (int k2 = k2min; k2 <= kmax; ++k2) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            const double mag = std::pow(1.0 + k1 * k1 + k2 * k2, -spec.decay);
            f.set_coeff(k1, k2, Complex(re, k1 == 0 ? 0.0 : im) * mag);
        }
    }
    if (compatible) f = enforce_compatibility(f).first;
    const double n = norm_l2(f);
    if (spec.amplitude > 0.0 && n > 0.0) f *= spec.amplitude / n;
    return f;
}

State random_band_state(int m, const RandomBandSpec& spec) {
    RandomBandSpec su = spec, sv = spec, sT = spec;
    sv.seed = spec.seed + 0x9e3779b97f4a7c15ULL;
    sT.seed = spec.seed + 0x3c6ef372fe94f82aULL;
    State s = State::zero(m);
    s.u = random_band_field(m, Parity::EvenZ, su, /*compatible=*/true);
    s.v = random_band_field(m, Parity::EvenZ, sv);
    s.T = random_band_field(m, Parity::OddZ, sT);
    return s;
}

}  // namespace pga
