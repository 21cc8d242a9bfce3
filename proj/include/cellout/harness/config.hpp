#pragma once

// Experiment configuration, read from JSON. Unknown keys are rejected and
// every error message points at the offending line of the input.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cellout/errors.hpp"
#include "cellout/outage.hpp"

namespace cellout::harness {

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line) : Error(what), line_(line) {}
    /// 1-based line in the config text, 0 when unknown.
    int line() const noexcept { return line_; }

private:
    int line_;
};

enum class Model { Discrete, Fluid, MonteCarlo };
enum class AzimuthMode { Zero, Average };

const char* to_string(Model model) noexcept;

struct ExperimentConfig {
    struct Network {
        int rings = 4;
        double rc_m = 1000.0;
        std::optional<double> r_nw_m;
    } network;

    struct Channel {
        std::vector<double> eta{3.0};
        std::vector<double> sigma_db{3.0, 6.0};
        double power = 1.0;
        double k_const = 1.0;
        double noise = 0.0;
    } channel;

    struct Mobile {
        std::vector<double> r_over_rc{1.0};
        AzimuthMode azimuth = AzimuthMode::Average;
        int n_angles = 12;
    } mobile;

    std::vector<double> thresholds_db;
    std::vector<OutageMode> channel_modes{OutageMode::Fading};
    std::vector<Model> models{Model::Discrete, Model::Fluid, Model::MonteCarlo};

    struct Sim {
        std::uint64_t snapshots = 100000;
        std::uint64_t seed = 1;
        bool interferer_fading = true;
    } sim;

    QuadratureConfig quadrature;

    struct Coverage {
        std::vector<double> delta_db{-15.0};
        double p_target = 0.1;
    } coverage;

    struct MfSweep {
        double sigma_start_db = 0.0;
        double sigma_stop_db = 20.0;
        double sigma_step_db = 0.5;
    } mf_sweep;

    struct Output {
        std::filesystem::path directory = "out";
        bool svg = true;
    } output;

    ExperimentConfig();

    /// Sigma grid of the m_f sweep, inclusive of the stop value.
    std::vector<double> sigma_grid() const;
};

/// Evenly spaced grid from start to stop inclusive (within step/1e6).
std::vector<double> make_grid(double start, double stop, double step);

/// Parses and validates a JSON config. Throws ConfigError.
ExperimentConfig parse_config(std::string_view json_text);

ExperimentConfig load_config(const std::filesystem::path& path);

/// Maps every JSON pointer in `json_text` (e.g. "/channel/eta") to the
/// 1-based line where its key or value starts. The text must be valid JSON.
std::vector<std::pair<std::string, int>> json_pointer_lines(std::string_view json_text);

}  // namespace cellout::harness
