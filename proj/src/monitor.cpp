#include "pga/monitor.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

namespace pga {

namespace {

int worker_count() {
    if (const char* env = std::getenv("PGA_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

// Runs fn(i) for i in [0, n) on up to worker_count() threads; results are
// stored by index so aggregation is independent of scheduling. The first
// exception (lowest index) is rethrown after all workers join.
template <typename Fn>
void parallel_for_index(int n, Fn&& fn) {
    const int threads = std::min(worker_count(), n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// integral of the Lagrange polynomial through (ts[idx], fs[idx]) over [a, b],
// in coordinates shifted to a for conditioning
double polynomial_piece(const std::vector<double>& ts, const std::vector<double>& fs,
                        const std::vector<int>& idx, double a, double b) {
    const int n = static_cast<int>(idx.size());
    Eigen::MatrixXd V(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
        const double tau = ts[idx[i]] - a;
        double p = 1.0;
        for (int j = 0; j < n; ++j) {
            V(i, j) = p;
            p *= tau;
        }
        rhs(i) = fs[idx[i]];
    }
    Eigen::VectorXd c = V.fullPivLu().solve(rhs);
    const double h = b - a;
    double integral = 0.0, hp = h;
    for (int j = 0; j < n; ++j) {
        integral += c(j) * hp / (j + 1);
        hp *= h;
    }
    return integral;
}

void check_alphas(const std::vector<double>& alphas) {
    if (alphas.empty()) throw std::invalid_argument("sweep: alpha list must not be empty");
    for (size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0.0)) throw std::invalid_argument("sweep: alphas must be > 0");
        if (i > 0 && !(alphas[i] < alphas[i - 1]))
            throw std::invalid_argument("sweep: alphas must be strictly decreasing");
    }
}

struct PowerFit {
    double b0 = 0.0, b1 = 0.0, q = 1.0, sse = 0.0, se_b0 = 0.0;
};

// Least squares of B = b0 + b1 alpha^q with q searched on a grid in [1, 2].
PowerFit fit_power_law(const std::vector<double>& alphas, const std::vector<double>& B) {
    const int n = static_cast<int>(alphas.size());
    PowerFit best;
    best.sse = std::numeric_limits<double>::infinity();
    for (int iq = 0; iq <= 50; ++iq) {
        const double q = 1.0 + 0.02 * iq;
        Eigen::MatrixXd X(n, 2);
        Eigen::VectorXd y(n);
        for (int i = 0; i < n; ++i) {
            X(i, 0) = 1.0;
            X(i, 1) = std::pow(alphas[i], q);
            y(i) = B[i];
        }
        Eigen::Matrix2d XtX = X.transpose() * X;
        Eigen::Vector2d beta = XtX.ldlt().solve(X.transpose() * y);
        const double sse = (y - X * beta).squaredNorm();
        if (sse < best.sse) {
            best.b0 = beta(0);
            best.b1 = beta(1);
            best.q = q;
            best.sse = sse;
            const double sigma2 = sse / std::max(1, n - 2);
            Eigen::Matrix2d cov = sigma2 * XtX.inverse();
            best.se_b0 = std::sqrt(std::max(0.0, cov(0, 0)));
        }
    }
    return best;
}

GeneralField random_general_field(int m, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    GeneralField f{SpectralField(m, Parity::EvenZ), SpectralField(m, Parity::OddZ)};
    for (int k1 = 0; k1 <= m; ++k1) {
        for (int k2 = 0; k2 <= m; ++k2) {
            const double decay = std::pow(1.0 + k1 * k1 + k2 * k2, -1.5);
            Complex ce(gauss(rng), k1 == 0 ? 0.0 : gauss(rng));
            f.even.set_coeff(k1, k2, ce * decay);
            if (k2 >= 1) {
                Complex co(gauss(rng), k1 == 0 ? 0.0 : gauss(rng));
                f.odd.set_coeff(k1, k2, co * decay);
            }
        }
    }
    return f;
}

// parity parts are L2-orthogonal, so their seminorms add in squares
double general_norm2(const GeneralField& f, int ax, int az) {
    const double e = sobolev_seminorm(f.even, ax, az);
    const double o = sobolev_seminorm(f.odd, ax, az);
    return e * e + o * o;
}

Eigen::ArrayXXd general_samples(const GeneralField& f, int n) {
    return synthesize(f.even, n, n).values + synthesize(f.odd, n, n).values;
}

int oversample_grid(const GeneralField& f) { return 6 * f.even.m() + 7; }

}  // namespace

std::vector<double> cumulative_integral(const std::vector<double>& ts,
                                        const std::vector<double>& fs) {
    if (ts.size() != fs.size()) throw std::invalid_argument("cumulative_integral: size mismatch");
    const int n = static_cast<int>(ts.size());
    std::vector<double> out(n, 0.0);
    for (int j = 0; j + 1 < n; ++j) {
        int lo = std::max(0, std::min(j - 1, n - 4));
        const int count = std::min(4, n);
        std::vector<int> idx(count);
        for (int i = 0; i < count; ++i) idx[i] = lo + i;
        out[j + 1] = out[j] + polynomial_piece(ts, fs, idx, ts[j], ts[j + 1]);
    }
    return out;
}

std::vector<double> budget_residual(const Trajectory& traj) {
    const auto& es = traj.energy_series;
    if (es.empty()) return {};
    const Params& p = traj.params;
    const double a2 = p.alpha * p.alpha;
    const int n = static_cast<int>(es.size());
    std::vector<double> ts(n), fs(n), state_part(n);

    for (int i = 0; i < n; ++i) {
        const EnergyReport& e = es[i].energy;
        ts[i] = es[i].t;
        switch (traj.kind) {
            case SystemKind::HydrostaticDamped:
                fs[i] = p.nu * e.uz2 + p.eps1 * e.u2 + p.eps2 * e.w2;
                state_part[i] = e.u2 + a2 * e.uz2;
                break;
            case SystemKind::Primitive:
            case SystemKind::Voigt: {
                const double av = (traj.kind == SystemKind::Voigt) ? a2 : 0.0;
                fs[i] = p.nu * (e.uz2 + e.vz2) + p.eps1 * (e.u2 + e.v2) + p.eps2 * e.w2 +
                        p.kappa * e.grad_T2 + e.cross_Tw;
                state_part[i] = e.u2 + e.v2 + e.T2 + av * (e.uz2 + e.vz2);
                break;
            }
        }
    }
    std::vector<double> integral = cumulative_integral(ts, fs);
    std::vector<double> res(n);
    for (int i = 0; i < n; ++i)
        res[i] = state_part[i] + 2.0 * integral[i] - state_part[0];
    return res;
}

ConvergenceResult alpha_convergence(const SpectralField& u0, const Params& p,
                                    const std::vector<double>& alphas, double T,
                                    const StepperConfig& cfg) {
    if (!(p.nu > 0.0))
        throw std::invalid_argument("alpha_convergence: the limit system carries nu > 0");
    check_alphas(alphas);

    StepperConfig c = cfg;
    c.t_end = T;

    Params pref = p;
    pref.alpha = 0.0;
    State s0 = State::zero(p.m);
    s0.u = u0;
    Trajectory ref = run(s0, pref, SystemKind::HydrostaticDamped, c);

    ConvergenceResult result;
    result.alphas = alphas;
    result.errors.assign(alphas.size(), 0.0);

    parallel_for_index(static_cast<int>(alphas.size()), [&](int i) {
        Params pa = p;
        pa.alpha = alphas[i];
        Trajectory ta = run(s0, pa, SystemKind::HydrostaticDamped, c);
        if (ta.samples.size() != ref.samples.size())
            throw std::runtime_error("alpha_convergence: sample grids differ");
        double sup = 0.0;
        for (size_t j = 0; j < ref.samples.size(); ++j)
            sup = std::max(sup, norm_l2(ta.samples[j].state.u - ref.samples[j].state.u));
        result.errors[i] = sup;
    });

    result.fitted_rate = fit_loglog_slope(result.alphas, result.errors);
    result.rate_defined =
        std::any_of(result.errors.begin(), result.errors.end(), [](double e) { return e > 0.0; });
    if (!result.rate_defined) result.fitted_rate = 0.0;
    return result;
}

BlowupProbeResult blowup_probe(const SpectralField& u0, const Params& p,
                               const std::vector<double>& alphas, double Tstar,
                               const StepperConfig& cfg, double floor) {
    check_alphas(alphas);
    if (alphas.size() < 3)
        throw std::invalid_argument("blowup_probe: need at least 3 alphas for extrapolation");
    StepperConfig c = cfg;
    c.t_end = Tstar;

    State s0 = State::zero(p.m);
    s0.u = u0;
    const double u0_n2 = inner_product(u0, u0);
    const double u0z2 = [&] {
        SpectralField uz = differentiate(u0, Axis::Z);
        return inner_product(uz, uz);
    }();

    BlowupProbeResult result;
    result.alphas = alphas;
    result.B.assign(alphas.size(), 0.0);
    std::vector<char> bad(alphas.size(), 0);

    parallel_for_index(static_cast<int>(alphas.size()), [&](int i) {
        Params pa = p;
        pa.alpha = alphas[i];
        Trajectory ta = run(s0, pa, SystemKind::HydrostaticDamped, c);
        double sup = 0.0;
        for (const auto& e : ta.energy_series) sup = std::max(sup, e.energy.uz2);
        result.B[i] = alphas[i] * alphas[i] * sup;
        // the Voigt energy identity bounds B(alpha) by the initial energy; a
        // violation (or a diverged Voigt run) signals a resolution failure,
        // not blow-up
        const double bound = u0_n2 + alphas[i] * alphas[i] * u0z2;
        if (ta.diverged || result.B[i] > bound * (1.0 + 1e-10) + 1e-14) bad[i] = 1;
    });
    result.resolution_failure = std::any_of(bad.begin(), bad.end(), [](char b) { return b != 0; });

    PowerFit fit = fit_power_law(result.alphas, result.B);
    result.extrapolated_limit = fit.b0;
    result.fit_stderr = fit.se_b0;
    result.fit_exponent = fit.q;
    result.fit_sse = fit.sse;
    const bool suspected = result.extrapolated_limit > 3.0 * result.fit_stderr &&
                           result.extrapolated_limit > floor;
    result.verdict = suspected ? BlowupVerdict::BlowupSuspected : BlowupVerdict::NoBlowupEvidence;
    return result;
}

GeneralField GeneralField::from_even(SpectralField f) {
    const int m = f.m();
    return {std::move(f), SpectralField(m, Parity::OddZ)};
}

GeneralField GeneralField::constant(int m, double value) {
    SpectralField e(m, Parity::EvenZ);
    e.set_coeff(0, 0, Complex(value, 0.0));
    return {std::move(e), SpectralField(m, Parity::OddZ)};
}

double lemma1_ratio(const GeneralField& f, const GeneralField& g, const GeneralField& h) {
    const int n = oversample_grid(f);
    const double int_fgh =
        (general_samples(f, n) * general_samples(g, n) * general_samples(h, n)).abs().mean();
    const double nf = std::sqrt(general_norm2(f, 0, 0));
    const double ng = std::sqrt(general_norm2(g, 0, 0));
    const double ngz = std::sqrt(general_norm2(g, 0, 1));
    const double nh = std::sqrt(general_norm2(h, 0, 0));
    const double nhx = std::sqrt(general_norm2(h, 1, 0));
    const double denom = nf * std::sqrt(ng) * (std::sqrt(ng) + std::sqrt(ngz)) * std::sqrt(nh) *
                         (std::sqrt(nh) + std::sqrt(nhx));
    return denom > 0.0 ? int_fgh / denom : 0.0;
}

double lemma2_ratio(const GeneralField& f) {
    const int n = oversample_grid(f);
    const double finf = general_samples(f, n).abs().maxCoeff();
    const double h1 = general_norm2(f, 0, 0) + general_norm2(f, 1, 0) + general_norm2(f, 0, 1);
    const double denom = std::sqrt(h1 + general_norm2(f, 1, 1));
    return denom > 0.0 ? finf / denom : 0.0;
}

LemmaCheckResult anisotropic_lemma_check(int trials, int m, unsigned long seed) {
    if (trials < 1) throw std::invalid_argument("lemma check: trials must be >= 1");
    if (m < 1) throw std::invalid_argument("lemma check: m must be >= 1");
    std::mt19937_64 rng(seed);

    LemmaCheckResult out;
    out.trials = trials;
    for (int trial = 0; trial < trials; ++trial) {
        GeneralField f = random_general_field(m, rng);
        GeneralField g = random_general_field(m, rng);
        GeneralField h = random_general_field(m, rng);
        out.ratio1_max = std::max(out.ratio1_max, lemma1_ratio(f, g, h));
        out.ratio2_max = std::max(out.ratio2_max, lemma2_ratio(f));
    }
    return out;
}

double fit_growth_constant(const Trajectory& traj) {
    const auto& es = traj.energy_series;
    if (es.size() < 3) throw std::invalid_argument("fit_growth_constant: series too short");
    const Params& p = traj.params;
    double best = -std::numeric_limits<double>::infinity();
    for (size_t i = 1; i + 1 < es.size(); ++i) {
        const double dydt =
            (es[i + 1].energy.y() - es[i - 1].energy.y()) / (es[i + 1].t - es[i - 1].t);
        const EnergyReport& e = es[i].energy;
        const double lhs = dydt + p.nu * e.f() + p.eps2 * e.g() + p.kappa * e.k();
        best = std::max(best, lhs / std::pow(e.y(), 3));
    }
    return best;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_loglog_slope: size mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) return 0.0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::string to_string(BlowupVerdict v) {
    return v == BlowupVerdict::BlowupSuspected ? "BlowupSuspected" : "NoBlowupEvidence";
}

}  // namespace pga
