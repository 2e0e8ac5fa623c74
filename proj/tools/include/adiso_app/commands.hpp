#pragma once

#include "adiso_app/config.hpp"

#include <filesystem>
#include <iosfwd>
#include <vector>

namespace adiso::app {

struct Context {
    RunConfig config;
    Resolved resolved;
    std::ostream& out;
    std::ostream& err;
};

/// Mode constants as JSON on `out`; writes no files.
void cmd_modes(const Context& ctx);

// The commands below write into config.output.directory and return the paths
// written. On failure nothing they wrote is left behind.
std::vector<std::filesystem::path> cmd_dispersion(const Context& ctx);
std::vector<std::filesystem::path> cmd_profile(const Context& ctx);
std::vector<std::filesystem::path> cmd_simulate(const Context& ctx);
std::vector<std::filesystem::path> cmd_sweep(const Context& ctx);
std::vector<std::filesystem::path> cmd_lengths(const Context& ctx);
std::vector<std::filesystem::path> cmd_adiabatic(const Context& ctx);
std::vector<std::filesystem::path> cmd_compare_rwa(const Context& ctx);

} // namespace adiso::app
