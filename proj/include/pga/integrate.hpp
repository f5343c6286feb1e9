//==============================================================================
// integrate.hpp
// Time integration with exact treatment of the diagonal linear symbols:
//   momentum     (nu (2 pi k2)^2 + eps1) / (1 + alpha^2 (2 pi k2)^2)
//   temperature  kappa (2 pi)^2 (k1^2 + k2^2)
// IntegratingFactorRK4 (Lawson) propagates these exactly per mode and treats
// the nonlinear/pressure/Coriolis part with classical RK4 on the transformed
// variables; ExplicitRK4 is plain RK4 on the full right-hand side.
//==============================================================================
#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "pga/dynamics.hpp"
#include "pga/energy.hpp"

namespace pga {

enum class Scheme { ExplicitRK4, IntegratingFactorRK4 };

struct StepperConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::IntegratingFactorRK4;
    int sample_every = 1;                 // full-state sampling cadence in steps
    std::optional<double> cfl_limit;      // adaptive dt never exceeds dt when set

    void validate() const;
};

// Optional PDE right-hand-side forcing (added to the unregularized equations;
// the Voigt systems apply the Helmholtz inverse to it like any momentum force).
using ForcingFn = std::function<Tendency(double t)>;

struct Sample {
    double t = 0.0;
    State state;
    EnergyReport energy;
    long step = 0;  // index into the dense energy series
};

struct EnergySample {
    double t = 0.0;
    EnergyReport energy;
};

struct Trajectory {
    std::vector<Sample> samples;              // sparse, cadence sample_every
    std::vector<EnergySample> energy_series;  // dense, one entry per step
    Params params;
    SystemKind kind = SystemKind::Primitive;
    bool diverged = false;
    double t_diverged = 0.0;

    double t_final() const { return samples.empty() ? 0.0 : samples.back().t; }
};

// Thrown by the single-step entry point on NaN/Inf; carries the last finite
// state and its time.
struct DivergenceError : std::runtime_error {
    State last;
    double t;
    DivergenceError(State s, double t_)
        : std::runtime_error("divergence: non-finite coefficient at t = " + std::to_string(t_)),
          last(std::move(s)), t(t_) {}
};

State step(const State& state, const Params& p, SystemKind kind, const StepperConfig& cfg,
           const ForcingFn& forcing = nullptr);

Trajectory run(const State& state0, const Params& p, SystemKind kind, const StepperConfig& cfg,
               const ForcingFn& forcing = nullptr);

}  // namespace pga
