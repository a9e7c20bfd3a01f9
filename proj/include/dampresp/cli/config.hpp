#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dampresp/dephasing.hpp"
#include "dampresp/eoe.hpp"
#include "dampresp/oscillator.hpp"
#include "dampresp/spectra.hpp"
#include "dampresp/twolevel.hpp"

namespace dampresp::cli {

inline constexpr const char* tool_version = "1.0.0";

struct ScenarioInfo {
    std::string name;
    std::string description;
    std::vector<std::string> blocks;           // parameter blocks the scenario reads
    std::vector<std::string> sweep_parameters; // paths accepted by sweep.parameter
};

const std::vector<ScenarioInfo>& registered_scenarios();
const ScenarioInfo* find_scenario(const std::string& name);

struct SweepSpec {
    std::string parameter;
    double start = 0.0;
    double stop = 0.0;
    long long count = 1;
    bool logarithmic = false;

    std::vector<double> values() const;
};

struct DiscretizationSpec {
    double omega_max = 60.0;
    long long modes = 3000;
};

struct SimulationSpec {
    double t_max = 0.0;  // 0: max(150, 21 periods of the slowest frequency)
    double dt = 0.0;     // 0: 48 points per period of the fastest frequency
    double fit_window = 0.25;
    double max_residual = 1e-2;
};

struct MonteCarloSpec {
    long long trajectories = 2000;  // 0 disables the Monte Carlo column
    double t_max = 0.0;             // 0: 10 coherence times
    double dt = 0.0;                // 0: 1 / (40 max(|delta|, f0))
};

struct SensitivitySpec {
    std::vector<double> scales{0.5, 1.0, 2.0};
    std::optional<double> omega;  // default: twolevel.omega0
};

struct ScenarioConfig {
    std::string scenario;
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    unsigned threads = 1;

    BathKind bath_kind = BathKind::Null;
    BathParameters bath;
    OscillatorParams oscillator;
    TwoLevelParams twolevel;
    DephasingParams dephasing;
    EoeLevelScheme eoe;
    double drive_omega = 0.5;
    SweepSpec sweep;
    DiscretizationSpec discretization;
    SimulationSpec simulation;
    MonteCarloSpec monte_carlo;
    SensitivitySpec sensitivity;
    KernelOptions kernel;
    KuboOptions kubo;

    BathSpectrum make_bath_spectrum() const;
    // Sets the value at a sweepable path; returns false for unknown paths.
    bool set_parameter(const std::string& path, double value);
};

struct Violation {
    std::string path;  // dotted parameter path, e.g. "dephasing.f0"
    int line = 0;      // 1-based, 0 when not tied to a line
    int column = 0;
    std::string message;
};

struct LoadResult {
    std::optional<ScenarioConfig> config;  // set only when violations is empty
    std::vector<Violation> violations;
};

// Parses and validates without side effects. An unreadable file is a
// single violation with an empty path.
LoadResult load_config(const std::string& path);
LoadResult parse_config(const std::string& text);

// Resolved configuration (every default filled in) as YAML text that
// parse_config accepts.
std::string to_yaml(const ScenarioConfig& config);

std::string format_violation(const std::string& file, const Violation& v);

}  // namespace dampresp::cli
