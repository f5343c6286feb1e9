// Shared test helpers: independent brute-force oracles (plain loops, no
// transform machinery) and seeded random states.
#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "pga/fields.hpp"
#include "pga/presets.hpp"

namespace pga::test {

using RealFn = std::function<double(double, double)>;

// Direct evaluation of a field at a point: sum of a_k basis_k(x, z).
inline double eval_field(const SpectralField& f, double x, double z) {
    const int m = f.m();
    const double sqrt2 = std::sqrt(2.0);
    std::complex<double> acc(0.0, 0.0);
    for (int r = 0; r < 2 * m + 1; ++r) {
        const int k1 = r - m;
        const std::complex<double> ex(std::cos(kTwoPi * k1 * x), std::sin(kTwoPi * k1 * x));
        for (int c = 0; c <= m; ++c) {
            double basis_z;
            if (f.parity() == Parity::EvenZ)
                basis_z = (c == 0) ? 1.0 : sqrt2 * std::cos(kTwoPi * c * z);
            else
                basis_z = (c == 0) ? 0.0 : sqrt2 * std::sin(kTwoPi * c * z);
            acc += f.coeffs()(r, c) * ex * basis_z;
        }
    }
    return acc.real();
}

// int f conj(basis_{k1,k2}) by the n x n midpoint sum (exact for resolved
// trigonometric polynomials).
inline std::complex<double> oracle_coeff(const RealFn& f, Parity parity, int k1, int k2, int n) {
    const double sqrt2 = std::sqrt(2.0);
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / n;
        const std::complex<double> ex(std::cos(kTwoPi * k1 * x), -std::sin(kTwoPi * k1 * x));
        for (int j = 0; j < n; ++j) {
            const double z = static_cast<double>(j) / n;
            double basis_z;
            if (parity == Parity::EvenZ)
                basis_z = (k2 == 0) ? 1.0 : sqrt2 * std::cos(kTwoPi * k2 * z);
            else
                basis_z = (k2 == 0) ? 0.0 : sqrt2 * std::sin(kTwoPi * k2 * z);
            acc += f(x, z) * ex * basis_z;
        }
    }
    return acc / static_cast<double>(n) * (1.0 / n);
}

// Trapezoid (= mean, by periodicity) quadrature of f over the torus.
inline double oracle_integral(const RealFn& f, int n) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            acc += f(static_cast<double>(i) / n, static_cast<double>(j) / n);
    return acc / (static_cast<double>(n) * n);
}

inline State random_state(int m, unsigned long seed, double amplitude = 1.0,
                          double decay = 1.5, int kmax = -1) {
    RandomBandSpec spec;
    spec.seed = seed;
    spec.amplitude = amplitude;
    spec.decay = decay;
    spec.kmax = kmax;
    return random_band_state(m, spec);
}

inline SpectralField random_even(int m, unsigned long seed, double amplitude = 1.0,
                                 double decay = 1.5, int kmax = -1) {
    RandomBandSpec spec;
    spec.seed = seed;
    spec.amplitude = amplitude;
    spec.decay = decay;
    spec.kmax = kmax;
    return random_band_field(m, Parity::EvenZ, spec, /*compatible=*/true);
}

inline SpectralField random_odd(int m, unsigned long seed, double amplitude = 1.0,
                                double decay = 1.5, int kmax = -1) {
    RandomBandSpec spec;
    spec.seed = seed;
    spec.amplitude = amplitude;
    spec.decay = decay;
    spec.kmax = kmax;
    return random_band_field(m, Parity::OddZ, spec);
}

}  // namespace pga::test
