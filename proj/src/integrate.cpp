#include "pga/integrate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace pga {

void StepperConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("stepper: dt must be > 0");
    if (t_end < 0.0) throw std::invalid_argument("stepper: t_end must be >= 0");
    if (sample_every < 1) throw std::invalid_argument("stepper: sample_every must be >= 1");
    if (cfl_limit && !(*cfl_limit > 0.0))
        throw std::invalid_argument("stepper: cfl_limit must be > 0 when set");
}

namespace {

void zero_compat_row(SpectralField& u) {
    const int m = u.m();
    for (int r = 0; r < 2 * m + 1; ++r) {
        if (r == m) continue;
        u.coeffs()(r, 0) = Complex(0.0, 0.0);
    }
}

// One time-integration context: linear symbols, cached exponential tables,
// and the nonstiff remainder g = rhs + Lambda o state.
class Stepper {
  public:
    Stepper(const Params& p, SystemKind kind, const ForcingFn& forcing)
        : p_(p), kind_(kind), forcing_(forcing), m_(p.m) {
        const double alpha = (kind == SystemKind::Primitive) ? 0.0 : p.alpha;
        lam_uv_.resize(m_ + 1);
        for (int k2 = 0; k2 <= m_; ++k2) {
            const double w2 = kTwoPi * k2 * kTwoPi * k2;
            lam_uv_(k2) = (p.nu * w2 + p.eps1) / (1.0 + alpha * alpha * w2);
        }
        lam_T_.resize(2 * m_ + 1, m_ + 1);
        for (int r = 0; r < 2 * m_ + 1; ++r) {
            const double k1 = static_cast<double>(r - m_);
            for (int c = 0; c <= m_; ++c)
                lam_T_(r, c) = p.kappa * kTwoPi * kTwoPi * (k1 * k1 + static_cast<double>(c) * c);
        }
    }

    State advance(const State& s0, double dt, double t0) {
        return (scheme_ == Scheme::IntegratingFactorRK4) ? lawson_rk4(s0, dt, t0)
                                                         : explicit_rk4(s0, dt, t0);
    }

    void set_scheme(Scheme s) { scheme_ = s; }

    double cfl_dt(const State& s, double cfl) const {
        const int n = 2 * m_ + 1;
        const double dx = 1.0 / n;
        const double umax = synthesize(s.u, n, n).values.abs().maxCoeff();
        const double wmax = synthesize(compute_w(s.u), n, n).values.abs().maxCoeff();
        const double vmax = std::max(umax, wmax);
        if (!(vmax > 0.0)) return std::numeric_limits<double>::infinity();
        return cfl * dx / vmax;
    }

  private:
    Tendency full_rhs(const State& s) const {
        switch (kind_) {
            case SystemKind::Primitive:
                return rhs_primitive(s, p_);
            case SystemKind::Voigt:
                return rhs_voigt(s, p_);
            case SystemKind::HydrostaticDamped: {
                Tendency t = Tendency::zero(m_);
                t.du = rhs_hydrostatic_damped(s.u, p_, p_.alpha);
                return t;
            }
        }
        throw std::logic_error("unknown system kind");
    }

    Tendency add_forcing(Tendency t, double time) const {
        if (!forcing_) return t;
        Tendency f = forcing_(time);
        const double alpha = (kind_ == SystemKind::Primitive) ? 0.0 : p_.alpha;
        t.du += helmholtz_invert(f.du, alpha);
        if (kind_ != SystemKind::HydrostaticDamped) {
            t.dv += helmholtz_invert(f.dv, alpha);
            t.dT += f.dT;
        }
        return t;
    }

    // Nonstiff remainder: full rhs with the diagonal linear decay added back.
    Tendency g(const State& s, double time) const {
        Tendency t = full_rhs(s);
        for (int k2 = 0; k2 <= m_; ++k2) {
            t.du.coeffs().col(k2) += lam_uv_(k2) * s.u.coeffs().col(k2);
            t.dv.coeffs().col(k2) += lam_uv_(k2) * s.v.coeffs().col(k2);
        }
        t.dT.coeffs() += lam_T_ * s.T.coeffs();
        return add_forcing(std::move(t), time);
    }

    void ensure_exp_tables(double dt) {
        if (dt == exp_dt_) return;
        e_uv_half_ = (-0.5 * dt * lam_uv_).exp();
        e_uv_full_ = (-dt * lam_uv_).exp();
        e_T_half_ = (-0.5 * dt * lam_T_).exp();
        e_T_full_ = (-dt * lam_T_).exp();
        exp_dt_ = dt;
    }

    State decay(const State& s, bool half) const {
        const Eigen::ArrayXd& euv = half ? e_uv_half_ : e_uv_full_;
        const Eigen::ArrayXXd& eT = half ? e_T_half_ : e_T_full_;
        State out = s;
        for (int k2 = 0; k2 <= m_; ++k2) {
            out.u.coeffs().col(k2) *= euv(k2);
            out.v.coeffs().col(k2) *= euv(k2);
        }
        out.T.coeffs() *= eT;
        return out;
    }

    Tendency decay(const Tendency& t, bool half) const {
        const Eigen::ArrayXd& euv = half ? e_uv_half_ : e_uv_full_;
        const Eigen::ArrayXXd& eT = half ? e_T_half_ : e_T_full_;
        Tendency out = t;
        for (int k2 = 0; k2 <= m_; ++k2) {
            out.du.coeffs().col(k2) *= euv(k2);
            out.dv.coeffs().col(k2) *= euv(k2);
        }
        out.dT.coeffs() *= eT;
        return out;
    }

    static State axpy(const State& s, double a, const Tendency& t) {
        State out = s;
        out.u.coeffs() += a * t.du.coeffs();
        out.v.coeffs() += a * t.dv.coeffs();
        out.T.coeffs() += a * t.dT.coeffs();
        return out;
    }

    State lawson_rk4(const State& s0, double dt, double t0) {
        ensure_exp_tables(dt);
        Tendency g1 = g(s0, t0);
        State u2 = decay(axpy(s0, 0.5 * dt, g1), true);
        u2.t = t0 + 0.5 * dt;
        Tendency g2 = g(u2, u2.t);
        State u3 = axpy(decay(s0, true), 0.5 * dt, g2);
        u3.t = t0 + 0.5 * dt;
        Tendency g3 = g(u3, u3.t);
        State u4 = axpy(decay(s0, false), dt, decay(g3, true));
        u4.t = t0 + dt;
        Tendency g4 = g(u4, u4.t);

        State out = decay(s0, false);
        Tendency acc = decay(g1, false);
        Tendency mid = decay(g2, true);
        Tendency mid2 = decay(g3, true);
        out.u.coeffs() += (dt / 6.0) * (acc.du.coeffs() + 2.0 * (mid.du.coeffs() + mid2.du.coeffs()) + g4.du.coeffs());
        out.v.coeffs() += (dt / 6.0) * (acc.dv.coeffs() + 2.0 * (mid.dv.coeffs() + mid2.dv.coeffs()) + g4.dv.coeffs());
        out.T.coeffs() += (dt / 6.0) * (acc.dT.coeffs() + 2.0 * (mid.dT.coeffs() + mid2.dT.coeffs()) + g4.dT.coeffs());
        out.t = t0 + dt;
        zero_compat_row(out.u);
        return out;
    }

    Tendency full_rhs_forced(const State& s, double time) const {
        return add_forcing(full_rhs(s), time);
    }

    State explicit_rk4(const State& s0, double dt, double t0) {
        Tendency k1 = full_rhs_forced(s0, t0);
        State s2 = axpy(s0, 0.5 * dt, k1);
        s2.t = t0 + 0.5 * dt;
        zero_compat_row(s2.u);
        Tendency k2 = full_rhs_forced(s2, s2.t);
        State s3 = axpy(s0, 0.5 * dt, k2);
        s3.t = t0 + 0.5 * dt;
        zero_compat_row(s3.u);
        Tendency k3 = full_rhs_forced(s3, s3.t);
        State s4 = axpy(s0, dt, k3);
        s4.t = t0 + dt;
        zero_compat_row(s4.u);
        Tendency k4 = full_rhs_forced(s4, s4.t);

        State out = s0;
        out.u.coeffs() += (dt / 6.0) * (k1.du.coeffs() + 2.0 * (k2.du.coeffs() + k3.du.coeffs()) + k4.du.coeffs());
        out.v.coeffs() += (dt / 6.0) * (k1.dv.coeffs() + 2.0 * (k2.dv.coeffs() + k3.dv.coeffs()) + k4.dv.coeffs());
        out.T.coeffs() += (dt / 6.0) * (k1.dT.coeffs() + 2.0 * (k2.dT.coeffs() + k3.dT.coeffs()) + k4.dT.coeffs());
        out.t = t0 + dt;
        zero_compat_row(out.u);
        return out;
    }

    Params p_;
    SystemKind kind_;
    ForcingFn forcing_;
    int m_;
    Scheme scheme_ = Scheme::IntegratingFactorRK4;
    Eigen::ArrayXd lam_uv_;
    Eigen::ArrayXXd lam_T_;
    Eigen::ArrayXd e_uv_half_, e_uv_full_;
    Eigen::ArrayXXd e_T_half_, e_T_full_;
    double exp_dt_ = -1.0;
};

State prepare_initial(const State& s0, const Params& p, SystemKind kind) {
    p.validate();
    if (s0.m() != p.m) throw std::invalid_argument("integrate: state/params truncation mismatch");
    State s = s0;
    if (kind == SystemKind::HydrostaticDamped) {
        s.v = SpectralField(p.m, Parity::EvenZ);
        s.T = SpectralField(p.m, Parity::OddZ);
    }
    // roundoff-sized defects are projected away, anything larger is user error
    const double defect = compatibility_defect(s.u);
    if (defect > 1e-12 * std::max(1.0, norm_l2(s.u)))
        throw std::invalid_argument("integrate: incompatible initial u (defect " +
                                    std::to_string(defect) + ")");
    s.u = enforce_compatibility(s.u).first;
    s.validate();
    if (kind == SystemKind::Voigt && !(p.alpha > 0.0))
        throw std::invalid_argument("integrate: the Voigt system requires alpha > 0");
    return s;
}

}  // namespace

State step(const State& state, const Params& p, SystemKind kind, const StepperConfig& cfg,
           const ForcingFn& forcing) {
    cfg.validate();
    State s = prepare_initial(state, p, kind);
    Stepper stepper(p, kind, forcing);
    stepper.set_scheme(cfg.scheme);
    const double dt = (cfg.t_end > 0.0 && cfg.t_end < cfg.dt) ? cfg.t_end : cfg.dt;
    State out;
    try {
        out = stepper.advance(s, dt, s.t);
    } catch (const std::invalid_argument&) {
        throw DivergenceError(s, s.t + dt);
    }
    if (!out.all_finite()) throw DivergenceError(s, out.t);
    return out;
}

Trajectory run(const State& state0, const Params& p, SystemKind kind, const StepperConfig& cfg,
               const ForcingFn& forcing) {
    cfg.validate();
    State s = prepare_initial(state0, p, kind);
    Stepper stepper(p, kind, forcing);
    stepper.set_scheme(cfg.scheme);

    Trajectory traj;
    traj.params = p;
    traj.kind = kind;
    EnergyReport e0 = energy_functionals(s);
    traj.samples.push_back({s.t, s, e0, 0});
    traj.energy_series.push_back({s.t, e0});
    if (cfg.t_end <= 0.0) return traj;

    const double t0 = s.t;
    const double t_stop = t0 + cfg.t_end;
    long step_index = 0;
    const bool uniform = !cfg.cfl_limit.has_value();

    while (s.t < t_stop - 1e-14 * std::max(1.0, t_stop)) {
        double dt = cfg.dt;
        if (cfg.cfl_limit) dt = std::min(dt, stepper.cfl_dt(s, *cfg.cfl_limit));
        const double remaining = t_stop - s.t;
        bool final_step = false;
        if (dt >= remaining - 1e-14 * std::max(1.0, t_stop)) {
            dt = remaining;
            final_step = true;
        }

        State next;
        try {
            next = stepper.advance(s, dt, s.t);
        } catch (const std::invalid_argument&) {
            // the initial state and config were validated before the loop, so
            // an input error thrown mid-step means a stage value overflowed
            traj.diverged = true;
            traj.t_diverged = s.t + dt;
            break;
        }
        ++step_index;
        // keep sample times exact multiples of dt while the step is uniform
        next.t = (uniform && !final_step) ? t0 + step_index * cfg.dt : (final_step ? t_stop : next.t);

        if (!next.all_finite()) {
            traj.diverged = true;
            traj.t_diverged = next.t;
            break;
        }
        s = std::move(next);
        EnergyReport e = energy_functionals(s);
        traj.energy_series.push_back({s.t, e});
        if (step_index % cfg.sample_every == 0 || final_step)
            traj.samples.push_back({s.t, s, e, step_index});
        if (final_step) break;
    }
    // a divergence mid-run leaves the last finite state as the final sample
    if (traj.diverged && traj.samples.back().t < s.t)
        traj.samples.push_back({s.t, s, traj.energy_series.back().energy,
                                static_cast<long>(traj.energy_series.size()) - 1});
    return traj;
}

}  // namespace pga
