#pragma once

#include <adiso/metrics.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace adiso::app {

/// Malformed or invalid configuration. The message carries the source
/// location when one is known.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PumpSection {
    double length_cells = 2000.0;
    double alpha_per_cell = 0.05;
    double pump_freq_ghz = 2.0;
    double m0 = 0.1;
    std::string ramp = "generalized_gaussian";  // generalized_gaussian | quadratic | constant
    double p_up = 3.0;
    double p_down = 2.0;
    std::string coupling_form = "circuit";  // circuit | wavevector_product
    std::optional<double> k_center_per_cell;  // default: phase matched at the center frequency
    std::optional<double> kappa0_per_cell;    // fixed coupling, frequency independent
};

struct SweepSection {
    double f_min_ghz = 4.0;
    double f_max_ghz = 8.0;
    std::size_t points = 201;
    ModelKind model = ModelKind::Rwa4x4;
    double tan_delta = 1e-5;
    std::string dispersion = "exact";  // exact | linear
    double threshold_db = 20.0;
    double center_freq_ghz = 6.0;
    unsigned threads = 0;
};

struct OutputSection {
    std::string directory = "out";
    double stride_cells = 10.0;
    bool csv = true;
    bool json = true;
};

struct SimulateSection {
    double freq_ghz = 6.0;
    std::string direction = "forward";  // forward | backward
};

struct RunConfig {
    CircuitParams circuit;
    PumpSection pump;
    SweepSection sweep;
    OutputSection output;
    SimulateSection simulate;
    std::vector<double> lengths_cells{800.0, 2000.0, 5000.0};
    std::vector<double> adiabatic_freqs_ghz{4.5, 6.0, 7.5};
};

/// Everything the library needs, with defaults applied and invariants checked.
struct Resolved {
    ModePair modes;
    PumpProfile profile;
    LossModel loss;
    SweepOptions sweep;
};

/// Parses YAML text; `source` names it in error messages.
RunConfig parse_config(const std::string& text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

Dispersion dispersion_of(const RunConfig& cfg);

/// Validates every section and derives the library inputs.
/// Throws ConfigError with the section and key at fault.
Resolved resolve(const RunConfig& cfg);

/// Fully resolved configuration with unit-suffixed keys.
nlohmann::ordered_json config_json(const RunConfig& cfg, const Resolved& resolved);

/// YAML echo of the fully resolved configuration; parse_config accepts it.
std::string dump_config(const RunConfig& cfg, const Resolved& resolved);

} // namespace adiso::app
