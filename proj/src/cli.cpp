#include "pga/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "pga/checkpoint.hpp"
#include "pga/config.hpp"
#include "pga/monitor.hpp"

namespace pga {

namespace {

namespace fs = std::filesystem;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
}

// Residual values at the sparse sample times; sample.step indexes the dense series.
std::vector<double> residual_at_samples(const Trajectory& traj,
                                        const std::vector<double>& dense_residual) {
    std::vector<double> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        const size_t j = static_cast<size_t>(s.step);
        out.push_back(j < dense_residual.size() ? dense_residual[j] : 0.0);
    }
    return out;
}

void write_series_csv(const fs::path& path, const Trajectory& traj) {
    std::vector<double> res = budget_residual(traj);
    std::vector<double> res_at = residual_at_samples(traj, res);
    std::string text = "t,normL2_u,normL2_v,normL2_T,normL2_w,Y,F,G,K,budget_residual\n";
    for (size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        const EnergyReport& e = s.energy;
        text += fmt(s.t) + "," + fmt(e.norm_u()) + "," + fmt(e.norm_v()) + "," + fmt(e.norm_T()) +
                "," + fmt(e.norm_w()) + "," + fmt(e.y_offset_free()) + "," + fmt(e.f()) + "," +
                fmt(e.g()) + "," + fmt(e.k()) + "," + fmt(res_at[i]) + "\n";
    }
    write_text(path, text);
}

void write_checkpoints(const fs::path& dir, const Trajectory& traj, const RunConfig& cfg) {
    if (!cfg.output.write_checkpoints) return;
    if (cfg.output.checkpoint_every > 0) {
        for (const auto& s : traj.samples) {
            if (s.step == 0 || (s.step % cfg.output.checkpoint_every) != 0) continue;
            char name[48];
            std::snprintf(name, sizeof(name), "checkpoint_%08ld.pgc", s.step);
            write_checkpoint(s.state, traj.params, dir / name);
        }
    }
    if (!traj.samples.empty())
        write_checkpoint(traj.samples.back().state, traj.params, dir / "final.pgc");
}

fs::path prepare_outdir(const RunConfig& cfg, const std::string& output_override) {
    fs::path dir = output_override.empty() ? fs::path(cfg.output.directory)
                                           : fs::path(output_override);
    fs::create_directories(dir);
    write_text(dir / "config.json", effective_config_json(cfg));
    return dir;
}

RunConfig load(const std::string& config_path, const std::string& output_override) {
    RunConfig cfg = parse_config_file(config_path);
    if (!output_override.empty()) cfg.output.directory = output_override;
    return cfg;
}

int cmd_run(const std::string& config_path, const std::string& output_override,
            bool audit) {
    RunConfig cfg = load(config_path, output_override);
    fs::path dir = prepare_outdir(cfg, output_override);

    State s0 = build_initial_state(cfg);
    Trajectory traj = run(s0, cfg.params, cfg.system, cfg.stepper);
    write_series_csv(dir / "series.csv", traj);
    write_checkpoints(dir, traj, cfg);

    std::string summary;
    summary += "system = " + to_string(cfg.system) + "\n";
    summary += "steps = " + std::to_string(traj.energy_series.size() - 1) + "\n";
    summary += "t_final = " + fmt(traj.t_final()) + "\n";
    summary += "diverged = " + std::string(traj.diverged ? "true" : "false") + "\n";
    if (traj.diverged) summary += "t_diverged = " + fmt(traj.t_diverged) + "\n";
    const EnergyReport& ef = traj.samples.back().energy;
    summary += "final.normL2_u = " + fmt(ef.norm_u()) + "\n";
    summary += "final.normL2_v = " + fmt(ef.norm_v()) + "\n";
    summary += "final.normL2_T = " + fmt(ef.norm_T()) + "\n";
    summary += "final.Y = " + fmt(ef.y_offset_free()) + "\n";

    if (audit) {
        std::vector<double> res = budget_residual(traj);
        double max_res = 0.0;
        for (double r : res) max_res = std::max(max_res, std::abs(r));
        summary += "budget.max_abs_residual = " + fmt(max_res) + "\n";
        summary += "budget.final_residual = " + fmt(res.empty() ? 0.0 : res.back()) + "\n";
        // ||w|| <= ||u_x|| and ||w_x|| <= ||u_xx|| on every sampled state
        bool ok_w = true, ok_wx = true;
        for (const auto& e : traj.energy_series) {
            if (e.energy.w2 > e.energy.ux2 * (1.0 + 1e-13) + 1e-26) ok_w = false;
            if (e.energy.wx2 > e.energy.uxx2 * (1.0 + 1e-13) + 1e-26) ok_wx = false;
        }
        summary += "inequality.w_le_ux = " + std::string(ok_w ? "true" : "false") + "\n";
        summary += "inequality.wx_le_uxx = " + std::string(ok_wx ? "true" : "false") + "\n";
    }
    write_text(dir / "summary.txt", summary);

    if (traj.diverged) {
        std::cerr << "run diverged at t = " << traj.t_diverged
                  << "; truncated outputs written to " << dir << "\n";
        return 3;
    }
    return 0;
}

int cmd_convergence(const std::string& config_path, const std::string& output_override) {
    RunConfig cfg = load(config_path, output_override);
    if (cfg.study.alphas.empty())
        throw std::invalid_argument("config: convergence needs study.alphas");
    fs::path dir = prepare_outdir(cfg, output_override);

    State s0 = build_initial_state(cfg);
    ConvergenceResult r =
        alpha_convergence(s0.u, cfg.params, cfg.study.alphas, cfg.stepper.t_end, cfg.stepper);

    std::string summary;
    for (size_t i = 0; i < r.alphas.size(); ++i) {
        summary += "alpha." + std::to_string(i) + " = " + fmt(r.alphas[i]) + "\n";
        summary += "error." + std::to_string(i) + " = " + fmt(r.errors[i]) + "\n";
    }
    summary += "fitted_rate = " + fmt(r.fitted_rate) + "\n";
    summary += "rate_defined = " + std::string(r.rate_defined ? "true" : "false") + "\n";
    write_text(dir / "summary.txt", summary);
    return 0;
}

int cmd_blowup_probe(const std::string& config_path, const std::string& output_override) {
    RunConfig cfg = load(config_path, output_override);
    if (cfg.study.alphas.empty())
        throw std::invalid_argument("config: blowup-probe needs study.alphas");
    fs::path dir = prepare_outdir(cfg, output_override);

    State s0 = build_initial_state(cfg);
    BlowupProbeResult r = blowup_probe(s0.u, cfg.params, cfg.study.alphas, cfg.stepper.t_end,
                                       cfg.stepper, cfg.study.floor);

    std::string summary;
    for (size_t i = 0; i < r.alphas.size(); ++i) {
        summary += "alpha." + std::to_string(i) + " = " + fmt(r.alphas[i]) + "\n";
        summary += "B." + std::to_string(i) + " = " + fmt(r.B[i]) + "\n";
    }
    summary += "extrapolated_limit = " + fmt(r.extrapolated_limit) + "\n";
    summary += "fit_stderr = " + fmt(r.fit_stderr) + "\n";
    summary += "fit_exponent = " + fmt(r.fit_exponent) + "\n";
    summary += "verdict = " + to_string(r.verdict) + "\n";
    summary += "resolution_failure = " + std::string(r.resolution_failure ? "true" : "false") +
               "\n";
    write_text(dir / "summary.txt", summary);
    return 0;
}

int cmd_lemma_check(const std::string& config_path, const std::string& output_override) {
    RunConfig cfg = load(config_path, output_override);
    fs::path dir = prepare_outdir(cfg, output_override);
    LemmaCheckResult r = anisotropic_lemma_check(cfg.lemma.trials, cfg.lemma.m, cfg.lemma.seed);
    std::string summary;
    summary += "trials = " + std::to_string(r.trials) + "\n";
    summary += "m = " + std::to_string(cfg.lemma.m) + "\n";
    summary += "seed = " + std::to_string(cfg.lemma.seed) + "\n";
    summary += "ratio1_max = " + fmt(r.ratio1_max) + "\n";
    summary += "ratio2_max = " + fmt(r.ratio2_max) + "\n";
    write_text(dir / "summary.txt", summary);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"pseudo-spectral solver for the damped reduced primitive "
                 "geostrophic adjustment model and its Voigt regularization"};
    app.require_subcommand(1);

    std::string config_path;
    std::string output_override;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "path to the JSON run configuration")
            ->required();
        sub->add_option("--output", output_override, "output directory (overrides the config)");
    };

    CLI::App* c_run = app.add_subcommand("run", "integrate one configured system");
    CLI::App* c_conv =
        app.add_subcommand("convergence", "alpha -> 0 convergence study against the alpha = 0 run");
    CLI::App* c_probe =
        app.add_subcommand("blowup-probe", "B(alpha) = alpha^2 sup_t ||u_z^alpha||^2 sweep");
    CLI::App* c_audit = app.add_subcommand("energy-audit", "run plus energy-budget residuals");
    CLI::App* c_lemma =
        app.add_subcommand("lemma-check", "empirical constants of the anisotropic inequalities");
    for (CLI::App* sub : {c_run, c_conv, c_probe, c_audit, c_lemma}) add_common(sub);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (c_run->parsed()) return cmd_run(config_path, output_override, /*audit=*/false);
        if (c_audit->parsed()) return cmd_run(config_path, output_override, /*audit=*/true);
        if (c_conv->parsed()) return cmd_convergence(config_path, output_override);
        if (c_probe->parsed()) return cmd_blowup_probe(config_path, output_override);
        if (c_lemma->parsed()) return cmd_lemma_check(config_path, output_override);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}

}  // namespace pga
