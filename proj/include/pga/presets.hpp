//==============================================================================
// presets.hpp
// Initial-condition families for the command-line driver and studies:
//   zonal        u0(z) = amplitude * cos(2 pi k z), x-independent
//   taylor-like  separable single-mode fields, e.g. u = A sin(2 pi kx x) cos(2 pi kz z)
//   random-band  seeded coefficients with |a_k| ~ (1 + |k|^2)^{-decay},
//                conjugate-symmetrized and compatibility-projected
//==============================================================================
#pragma once

#include "pga/fields.hpp"

namespace pga {

SpectralField zonal_field(int m, double amplitude, int k);

State taylor_like_state(int m, double amp_u, double amp_v, double amp_T, int kx, int kz);

struct RandomBandSpec {
    unsigned long seed = 1;
    double decay = 2.0;      // spectral decay exponent s
    double amplitude = 1.0;  // target L2 norm (0 keeps the raw draw)
    int kmax = -1;           // bandwidth; -1 means m
};

SpectralField random_band_field(int m, Parity parity, const RandomBandSpec& spec,
                                bool compatible = false);

// u, v, T drawn independently (seeds offset from spec.seed); u is
// compatibility-projected. amplitude applies per field.
State random_band_state(int m, const RandomBandSpec& spec);

}  // namespace pga
