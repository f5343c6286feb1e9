#include "pga/config.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pga {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    if (!obj.is_object()) throw std::invalid_argument("config: '" + where + "' must be an object");
    for (const auto& [key, _] : obj.items()) {
        if (!allowed.count(key))
            throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
    }
}

double get_num(const json& obj, const std::string& key, const std::string& where) {
    if (!obj.contains(key))
        throw std::invalid_argument("config: missing required key '" + key + "' in " + where);
    if (!obj[key].is_number())
        throw std::invalid_argument("config: '" + where + "." + key + "' must be a number");
    return obj[key].get<double>();
}

double get_num_or(const json& obj, const std::string& key, double dflt) {
    if (!obj.contains(key)) return dflt;
    return obj[key].get<double>();
}

SystemKind parse_system(const std::string& s) {
    if (s == "primitive") return SystemKind::Primitive;
    if (s == "voigt") return SystemKind::Voigt;
    if (s == "hydrostatic-damped") return SystemKind::HydrostaticDamped;
    throw std::invalid_argument(
        "config: system must be one of primitive | voigt | hydrostatic-damped, got '" + s + "'");
}

std::vector<std::array<double, 4>> parse_coeff_list(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw std::invalid_argument("config: " + where + " must be an array");
    std::vector<std::array<double, 4>> out;
    for (const auto& e : arr) {
        if (!e.is_array() || e.size() != 4)
            throw std::invalid_argument("config: entries of " + where +
                                        " must be [k1, k2, re, im] quadruples");
        out.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>(),
                       e[3].get<double>()});
    }
    return out;
}

void apply_explicit(SpectralField& f, const std::vector<std::array<double, 4>>& entries,
                    const std::string& name) {
    const int m = f.m();
    for (const auto& e : entries) {
        const int k1 = static_cast<int>(e[0]);
        const int k2 = static_cast<int>(e[1]);
        if (k1 < 0 || k1 > m || k2 < 0 || k2 > m)
            throw std::invalid_argument("config: explicit coefficient of '" + name +
                                        "' out of range (give the k1 >= 0 half plane)");
        if (f.parity() == Parity::OddZ && k2 == 0)
            throw std::invalid_argument("config: odd field '" + name + "' has no k2 = 0 modes");
        f.set_coeff(k1, k2, Complex(e[2], e[3]));
    }
}

}  // namespace

void RunConfig::validate() const {
    params.validate();
    stepper.validate();
    if (system == SystemKind::Voigt && !(params.alpha > 0.0))
        throw std::invalid_argument("config: system 'voigt' requires params.alpha > 0");
    if (system == SystemKind::Primitive && params.alpha != 0.0)
        throw std::invalid_argument("config: system 'primitive' requires params.alpha = 0");
    if (output.checkpoint_every < 0)
        throw std::invalid_argument("config: output.checkpoint_every must be >= 0");
}

RunConfig parse_config_text(const std::string& text) {
    json root = json::parse(text);
    check_keys(root, {"system", "params", "stepper", "initial_condition", "output", "study",
                      "lemma"},
               "config");

    RunConfig cfg;
    if (!root.contains("system"))
        throw std::invalid_argument("config: missing required key 'system'");
    cfg.system = parse_system(root["system"].get<std::string>());

    if (!root.contains("params"))
        throw std::invalid_argument("config: missing required key 'params'");
    const json& jp = root["params"];
    check_keys(jp, {"nu", "kappa", "eps1", "eps2", "f0", "alpha", "m"}, "params");
    cfg.params.nu = get_num(jp, "nu", "params");
    cfg.params.kappa = get_num(jp, "kappa", "params");
    cfg.params.eps1 = get_num(jp, "eps1", "params");
    cfg.params.eps2 = get_num(jp, "eps2", "params");
    cfg.params.f0 = get_num(jp, "f0", "params");
    cfg.params.alpha = get_num_or(jp, "alpha", 0.0);
    cfg.params.m = static_cast<int>(get_num(jp, "m", "params"));

    if (!root.contains("stepper"))
        throw std::invalid_argument("config: missing required key 'stepper'");
    const json& js = root["stepper"];
    check_keys(js, {"dt", "t_end", "scheme", "sample_every", "cfl_limit"}, "stepper");
    cfg.stepper.dt = get_num(js, "dt", "stepper");
    cfg.stepper.t_end = get_num(js, "t_end", "stepper");
    if (js.contains("scheme")) {
        const std::string s = js["scheme"].get<std::string>();
        if (s == "ifrk4")
            cfg.stepper.scheme = Scheme::IntegratingFactorRK4;
        else if (s == "rk4")
            cfg.stepper.scheme = Scheme::ExplicitRK4;
        else
            throw std::invalid_argument("config: stepper.scheme must be 'ifrk4' or 'rk4'");
    }
    cfg.stepper.sample_every = static_cast<int>(get_num_or(js, "sample_every", 1));
    if (js.contains("cfl_limit")) cfg.stepper.cfl_limit = js["cfl_limit"].get<double>();

    if (root.contains("initial_condition")) {
        const json& ji = root["initial_condition"];
        check_keys(ji,
                   {"preset", "amplitude", "k", "amplitude_v", "amplitude_T", "kx", "kz", "seed",
                    "decay", "kmax", "fields", "explicit"},
                   "initial_condition");
        if (ji.contains("explicit")) {
            cfg.ic.preset = "explicit";
            const json& je = ji["explicit"];
            check_keys(je, {"u", "v", "T"}, "initial_condition.explicit");
            if (je.contains("u")) cfg.ic.coeff_u = parse_coeff_list(je["u"], "explicit.u");
            if (je.contains("v")) cfg.ic.coeff_v = parse_coeff_list(je["v"], "explicit.v");
            if (je.contains("T")) cfg.ic.coeff_T = parse_coeff_list(je["T"], "explicit.T");
        } else {
            cfg.ic.preset = ji.value("preset", std::string("zero"));
        }
        cfg.ic.amplitude = get_num_or(ji, "amplitude", 1.0);
        cfg.ic.k = static_cast<int>(get_num_or(ji, "k", 1));
        cfg.ic.amplitude_v = get_num_or(ji, "amplitude_v", 0.0);
        cfg.ic.amplitude_T = get_num_or(ji, "amplitude_T", 0.0);
        cfg.ic.kx = static_cast<int>(get_num_or(ji, "kx", 1));
        cfg.ic.kz = static_cast<int>(get_num_or(ji, "kz", 1));
        cfg.ic.band.seed = static_cast<unsigned long>(get_num_or(ji, "seed", 1));
        cfg.ic.band.decay = get_num_or(ji, "decay", 2.0);
        cfg.ic.band.amplitude = cfg.ic.amplitude;
        cfg.ic.band.kmax = static_cast<int>(get_num_or(ji, "kmax", -1));
        cfg.ic.fields = ji.value("fields", std::string("uvT"));
        if (cfg.ic.fields != "u" && cfg.ic.fields != "uvT")
            throw std::invalid_argument("config: initial_condition.fields must be 'u' or 'uvT'");
    }

    if (root.contains("output")) {
        const json& jo = root["output"];
        check_keys(jo, {"directory", "checkpoint_every", "write_checkpoints"}, "output");
        cfg.output.directory = jo.value("directory", std::string("out"));
        cfg.output.checkpoint_every = static_cast<int>(get_num_or(jo, "checkpoint_every", 0));
        cfg.output.write_checkpoints = jo.value("write_checkpoints", true);
    }

    if (root.contains("study")) {
        const json& jy = root["study"];
        check_keys(jy, {"alphas", "floor"}, "study");
        if (jy.contains("alphas")) {
            for (const auto& a : jy["alphas"]) cfg.study.alphas.push_back(a.get<double>());
        }
        cfg.study.floor = get_num_or(jy, "floor", 1e-8);
    }

    if (root.contains("lemma")) {
        const json& jl = root["lemma"];
        check_keys(jl, {"trials", "m", "seed"}, "lemma");
        cfg.lemma.trials = static_cast<int>(get_num_or(jl, "trials", 100));
        cfg.lemma.m = static_cast<int>(get_num_or(jl, "m", 16));
        cfg.lemma.seed = static_cast<unsigned long>(get_num_or(jl, "seed", 1));
    }

    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

std::string effective_config_json(const RunConfig& cfg) {
    json root;
    root["system"] = to_string(cfg.system);
    root["params"] = {{"nu", cfg.params.nu},   {"kappa", cfg.params.kappa},
                      {"eps1", cfg.params.eps1}, {"eps2", cfg.params.eps2},
                      {"f0", cfg.params.f0},   {"alpha", cfg.params.alpha},
                      {"m", cfg.params.m}};
    root["stepper"] = {
        {"dt", cfg.stepper.dt},
        {"t_end", cfg.stepper.t_end},
        {"scheme", cfg.stepper.scheme == Scheme::IntegratingFactorRK4 ? "ifrk4" : "rk4"},
        {"sample_every", cfg.stepper.sample_every}};
    if (cfg.stepper.cfl_limit) root["stepper"]["cfl_limit"] = *cfg.stepper.cfl_limit;

    json ic;
    if (cfg.ic.preset == "explicit") {
        json je = json::object();
        auto dump = [](const std::vector<std::array<double, 4>>& v) {
            json arr = json::array();
            for (const auto& e : v) arr.push_back({e[0], e[1], e[2], e[3]});
            return arr;
        };
        if (!cfg.ic.coeff_u.empty()) je["u"] = dump(cfg.ic.coeff_u);
        if (!cfg.ic.coeff_v.empty()) je["v"] = dump(cfg.ic.coeff_v);
        if (!cfg.ic.coeff_T.empty()) je["T"] = dump(cfg.ic.coeff_T);
        ic["explicit"] = je;
    } else {
        ic["preset"] = cfg.ic.preset;
    }
    ic["amplitude"] = cfg.ic.amplitude;
    ic["k"] = cfg.ic.k;
    ic["amplitude_v"] = cfg.ic.amplitude_v;
    ic["amplitude_T"] = cfg.ic.amplitude_T;
    ic["kx"] = cfg.ic.kx;
    ic["kz"] = cfg.ic.kz;
    ic["seed"] = cfg.ic.band.seed;
    ic["decay"] = cfg.ic.band.decay;
    ic["kmax"] = cfg.ic.band.kmax;
    ic["fields"] = cfg.ic.fields;
    root["initial_condition"] = ic;

    root["output"] = {{"directory", cfg.output.directory},
                      {"checkpoint_every", cfg.output.checkpoint_every},
                      {"write_checkpoints", cfg.output.write_checkpoints}};
    if (!cfg.study.alphas.empty() || cfg.study.floor != 1e-8) {
        root["study"] = {{"alphas", cfg.study.alphas}, {"floor", cfg.study.floor}};
    }
    root["lemma"] = {{"trials", cfg.lemma.trials}, {"m", cfg.lemma.m}, {"seed", cfg.lemma.seed}};
    return root.dump(2) + "\n";
}

State build_initial_state(const RunConfig& cfg) {
    const int m = cfg.params.m;
    State s = State::zero(m);
    const auto& ic = cfg.ic;
    if (ic.preset == "zero") {
        // nothing to do
    } else if (ic.preset == "zonal") {
        s.u = zonal_field(m, ic.amplitude, ic.k);
    } else if (ic.preset == "taylor-like") {
        s = taylor_like_state(m, ic.amplitude, ic.amplitude_v, ic.amplitude_T, ic.kx, ic.kz);
    } else if (ic.preset == "random-band") {
        if (ic.fields == "u") {
            s.u = random_band_field(m, Parity::EvenZ, ic.band, /*compatible=*/true);
        } else {
            s = random_band_state(m, ic.band);
        }
    } else if (ic.preset == "explicit") {
        apply_explicit(s.u, ic.coeff_u, "u");
        apply_explicit(s.v, ic.coeff_v, "v");
        apply_explicit(s.T, ic.coeff_T, "T");
        s.u = enforce_compatibility(s.u).first;
    } else {
        throw std::invalid_argument("config: unknown initial_condition.preset '" + ic.preset + "'");
    }
    if (cfg.system == SystemKind::HydrostaticDamped) {
        s.v = SpectralField(m, Parity::EvenZ);
        s.T = SpectralField(m, Parity::OddZ);
    }
    return s;
}

std::string to_string(SystemKind kind) {
    switch (kind) {
        case SystemKind::Primitive: return "primitive";
        case SystemKind::Voigt: return "voigt";
        case SystemKind::HydrostaticDamped: return "hydrostatic-damped";
    }
    return "?";
}

}  // namespace pga
