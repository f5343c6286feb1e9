//==============================================================================
// monitor.hpp
// Exact-budget residuals, the alpha -> 0 convergence study, the blow-up probe
//   B(alpha) = alpha^2 sup_t ||u_z^alpha(t)||^2
// with extrapolation B = b0 + b1 alpha^q, and empirical checks of the two
// anisotropic inequalities used by the estimates.
//==============================================================================
#pragma once

#include <string>
#include <vector>

#include "pga/integrate.hpp"

namespace pga {

// Cumulative integral of samples (ts, fs) by integrating the local cubic
// through the four nearest nodes over each interval (4th order on smooth
// data; falls back to lower degree when fewer nodes exist).
std::vector<double> cumulative_integral(const std::vector<double>& ts,
                                        const std::vector<double>& fs);

// Per-entry residual of the energy identity matching the trajectory's system
// (computed on the dense energy series):
//   HydrostaticDamped, alpha = 0:
//     ||u||^2 + 2 int (nu ||u_z||^2 + eps1 ||u||^2 + eps2 ||w||^2) - ||u0||^2
//   HydrostaticDamped, alpha > 0: adds alpha^2 ||u_z||^2 on both ends.
//   Primitive / Voigt: the full balance including the <T, w> work term and
//     kappa ||grad T||^2.
std::vector<double> budget_residual(const Trajectory& traj);

struct ConvergenceResult {
    std::vector<double> alphas;
    std::vector<double> errors;  // sup over shared sample times of ||u^alpha - u||_L2
    double fitted_rate = 0.0;    // least-squares slope of log error vs log alpha
    bool rate_defined = false;   // false when all errors vanish (e.g. u0 = 0)
};

// Runs the damped hydrostatic system at alpha = 0 (requires nu > 0) and its
// Voigt regularization at each alpha from the same initial u0.
ConvergenceResult alpha_convergence(const SpectralField& u0, const Params& p,
                                    const std::vector<double>& alphas, double T,
                                    const StepperConfig& cfg);

enum class BlowupVerdict { NoBlowupEvidence, BlowupSuspected };

struct BlowupProbeResult {
    std::vector<double> alphas;  // strictly decreasing
    std::vector<double> B;       // alpha^2 sup_t ||u_z^alpha||^2
    double extrapolated_limit = 0.0;  // fitted b0
    double fit_stderr = 0.0;
    double fit_exponent = 0.0;        // fitted q in [1,2]
    double fit_sse = 0.0;
    BlowupVerdict verdict = BlowupVerdict::NoBlowupEvidence;
    bool resolution_failure = false;  // a Voigt run diverged or broke the energy bound
};

BlowupProbeResult blowup_probe(const SpectralField& u0, const Params& p,
                               const std::vector<double>& alphas, double Tstar,
                               const StepperConfig& cfg, double floor = 1e-8);

// A periodic field with no parity restriction: even part plus odd part.
struct GeneralField {
    SpectralField even;
    SpectralField odd;

    static GeneralField from_even(SpectralField f);
    static GeneralField constant(int m, double value);
};

// int |fgh| over ||f|| ||g||^{1/2}(||g||^{1/2} + ||g_z||^{1/2})
//              ||h||^{1/2}(||h||^{1/2} + ||h_x||^{1/2}),
// the integral by oversampled grid quadrature.
double lemma1_ratio(const GeneralField& f, const GeneralField& g, const GeneralField& h);

// ||f||_inf (grid max) over (||f||_H1^2 + ||f_xz||^2)^{1/2}.
double lemma2_ratio(const GeneralField& f);

struct LemmaCheckResult {
    double ratio1_max = 0.0;
    double ratio2_max = 0.0;
    int trials = 0;
};

LemmaCheckResult anisotropic_lemma_check(int trials, int m, unsigned long seed);

// Empirical constant in dY/dt + nu F + eps2 G + kappa K <= C Y^3 along a run:
// max over interior dense samples of the left side over Y^3 (offset Y).
double fit_growth_constant(const Trajectory& traj);

// Least-squares slope of log(y) vs log(x); entries with y <= 0 are skipped.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

std::string to_string(BlowupVerdict v);

}  // namespace pga
