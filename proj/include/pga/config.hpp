//==============================================================================
// config.hpp
// JSON run configuration: schema-validated (unknown keys rejected, parameter
// ranges enforced), echoed back verbatim-equivalent into the output directory.
//==============================================================================
#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pga/integrate.hpp"
#include "pga/presets.hpp"

namespace pga {

struct InitialConditionSpec {
    std::string preset = "zero";  // zero | zonal | taylor-like | random-band | explicit
    // zonal
    double amplitude = 1.0;
    int k = 1;
    // taylor-like
    double amplitude_v = 0.0;
    double amplitude_T = 0.0;
    int kx = 1;
    int kz = 1;
    // random-band
    RandomBandSpec band;
    std::string fields = "uvT";  // which fields receive random content: "u" or "uvT"
    // explicit coefficients: tuples (k1, k2, re, im) per field, k1 >= 0 half
    std::vector<std::array<double, 4>> coeff_u, coeff_v, coeff_T;
};

struct OutputSpec {
    std::string directory = "out";
    int checkpoint_every = 0;  // steps between checkpoints; 0 writes only the final one
    bool write_checkpoints = true;
};

struct StudySpec {
    std::vector<double> alphas;
    double floor = 1e-8;  // blow-up verdict floor
};

struct LemmaSpec {
    int trials = 100;
    int m = 16;
    unsigned long seed = 1;
};

struct RunConfig {
    SystemKind system = SystemKind::Primitive;
    Params params;
    StepperConfig stepper;
    InitialConditionSpec ic;
    OutputSpec output;
    StudySpec study;
    LemmaSpec lemma;

    void validate() const;
};

RunConfig parse_config_file(const std::filesystem::path& path);
RunConfig parse_config_text(const std::string& text);

// The fully-resolved configuration; re-parsing it yields an equivalent RunConfig.
std::string effective_config_json(const RunConfig& cfg);

State build_initial_state(const RunConfig& cfg);

std::string to_string(SystemKind kind);

}  // namespace pga
