#include "adiso_app/commands.hpp"

#include <adiso/error.hpp>

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

int main(int argc, char** argv)
{
    using namespace adiso::app;

    CLI::App app{"Adiabatic mode-conversion isolator simulator"};
    app.fallthrough();
    app.require_subcommand(0, 1);

    std::string config_path;
    std::optional<std::string> out_dir;
    std::optional<std::string> model;
    std::optional<std::size_t> grid;
    std::optional<double> stride;
    std::optional<double> length;
    bool linear = false;
    bool params = false;

    app.add_option("--config", config_path, "YAML configuration file")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--model", model, "Model: simple, rwa or full");
    app.add_option("--grid", grid, "Number of frequency points")->check(CLI::Range(2, 1000000));
    app.add_option("--stride", stride, "Trajectory sampling stride in cells")->check(CLI::PositiveNumber);
    app.add_option("--length", length, "Device length in cells")->check(CLI::PositiveNumber);
    app.add_flag("--linear-dispersion", linear, "Use the linear dispersion relation");
    app.add_flag("--params", params, "Print the resolved configuration and exit");

    auto* modes = app.add_subcommand("modes", "Mode constants (JSON on stdout)");
    auto* dispersion = app.add_subcommand("dispersion", "Dispersion relations of both modes");
    auto* profile = app.add_subcommand("profile", "Pump and coupling profile along the device");
    auto* simulate = app.add_subcommand("simulate", "Amplitude trajectory at one frequency");
    auto* sweep = app.add_subcommand("sweep", "Isolation and insertion-loss spectrum");
    auto* lengths = app.add_subcommand("lengths", "Isolation bandwidth versus device length");
    auto* adiabatic = app.add_subcommand("adiabatic", "Adiabaticity diagnostics");
    auto* compare = app.add_subcommand("compare-rwa", "Full versus RWA coupled-mode spectra");

    std::optional<double> sim_freq;
    std::optional<std::string> sim_direction;
    simulate->add_option("--freq", sim_freq, "Signal frequency in GHz")->check(CLI::PositiveNumber);
    simulate->add_option("--direction", sim_direction, "forward or backward")
        ->check(CLI::IsMember({"forward", "backward"}));

    std::vector<double> length_list;
    lengths->add_option("--lengths", length_list, "Device lengths in cells");

    std::vector<double> adi_freqs;
    adiabatic->add_option("--freq", adi_freqs, "Signal frequencies in GHz");

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg = config_path.empty() ? parse_config("") : load_config(config_path);
        if (out_dir)
            cfg.output.directory = *out_dir;
        if (model) {
            const auto kind = adiso::parse_model_kind(*model);
            if (!kind)
                throw ConfigError("--model: expected simple, rwa or full, got '" + *model + "'");
            cfg.sweep.model = *kind;
        }
        if (grid)
            cfg.sweep.points = *grid;
        if (stride)
            cfg.output.stride_cells = *stride;
        if (length)
            cfg.pump.length_cells = *length;
        if (linear)
            cfg.sweep.dispersion = "linear";
        if (sim_freq)
            cfg.simulate.freq_ghz = *sim_freq;
        if (sim_direction)
            cfg.simulate.direction = *sim_direction;
        if (!length_list.empty())
            cfg.lengths_cells = length_list;
        if (!adi_freqs.empty())
            cfg.adiabatic_freqs_ghz = adi_freqs;

        const Resolved resolved = resolve(cfg);
        if (params) {
            std::cout << dump_config(cfg, resolved);
            return 0;
        }

        const Context ctx{cfg, resolved, std::cout, std::cerr};
        std::vector<std::filesystem::path> written;
        if (modes->parsed())
            cmd_modes(ctx);
        else if (dispersion->parsed())
            written = cmd_dispersion(ctx);
        else if (profile->parsed())
            written = cmd_profile(ctx);
        else if (simulate->parsed())
            written = cmd_simulate(ctx);
        else if (sweep->parsed())
            written = cmd_sweep(ctx);
        else if (lengths->parsed())
            written = cmd_lengths(ctx);
        else if (adiabatic->parsed())
            written = cmd_adiabatic(ctx);
        else if (compare->parsed())
            written = cmd_compare_rwa(ctx);
        else {
            std::cerr << app.help();
            return 1;
        }

        for (const auto& p : written)
            std::cout << p.string() << '\n';
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
    } catch (const adiso::SweepError& e) {
        std::cerr << "error: " << e.what() << '\n';
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
    }
    return 1;
}
