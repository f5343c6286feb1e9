//==============================================================================
// checkpoint.hpp
// Binary state checkpoints. Layout (all little-endian):
//   magic "PGACHKPT" | u32 version | u32 header_bytes | u32 m | u32 layout
//   | f64 t | f64 nu kappa eps1 eps2 f0 alpha
// followed by the payload: fields u, v, T in that order, each as
// (2m+1) x (m+1) complex coefficients, k1 = -m..m outer, k2 = 0..m inner,
// real/imaginary interleaved as f64. Round trips are bit exact.
//==============================================================================
#pragma once

#include <filesystem>

#include "pga/fields.hpp"

namespace pga {

struct CheckpointData {
    State state;
    Params params;
};

void write_checkpoint(const State& state, const Params& params,
                      const std::filesystem::path& path);

// expected_m >= 0 enforces a truncation match (no silent padding or cropping).
// Validates magic, version, payload length, conjugate symmetry and
// compatibility (defects above 1e-10 are errors).
CheckpointData read_checkpoint(const std::filesystem::path& path, int expected_m = -1);

}  // namespace pga
