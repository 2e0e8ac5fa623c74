#include "adiso_app/config.hpp"

#include <adiso/error.hpp>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

namespace adiso::app {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Handler = std::function<void(const YAML::Node&)>;

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    std::string where(const YAML::Node& node) const
    {
        const YAML::Mark m = node.Mark();
        if (m.is_null())
            return source_;
        return fmt::format("{}:{}:{}", source_, m.line + 1, m.column + 1);
    }

    template <class T>
    T get(const YAML::Node& node, const std::string& key) const
    {
        if (!node.IsScalar())
            throw ConfigError(fmt::format("{}: '{}' expects a scalar", where(node), key));
        try {
            return node.as<T>();
        } catch (const YAML::Exception&) {
            throw ConfigError(fmt::format("{}: invalid value '{}' for '{}'", where(node), node.Scalar(), key));
        }
    }

    std::vector<double> list(const YAML::Node& node, const std::string& key) const
    {
        if (!node.IsSequence())
            throw ConfigError(fmt::format("{}: '{}' expects a list", where(node), key));
        std::vector<double> out;
        for (const auto& item : node)
            out.push_back(get<double>(item, key));
        return out;
    }

    void section(const YAML::Node& node, const std::string& name, const std::map<std::string, Handler>& handlers) const
    {
        if (node.IsNull())
            return;
        if (!node.IsMap())
            throw ConfigError(fmt::format("{}: section '{}' must be a mapping", where(node), name));
        for (const auto& kv : node) {
            const auto key = kv.first.as<std::string>();
            const auto it = handlers.find(key);
            if (it == handlers.end()) {
                std::string allowed;
                for (const auto& [k, _] : handlers)
                    allowed += (allowed.empty() ? "" : ", ") + k;
                throw ConfigError(fmt::format("{}: unknown key '{}' in section '{}' (expected one of: {})",
                                              where(kv.first), key, name, allowed));
            }
            it->second(kv.second);
        }
    }

private:
    std::string source_;
};

RunConfig parse_node(const YAML::Node& root, const Reader& r)
{
    RunConfig cfg;
    auto& c = cfg.circuit;
    auto& p = cfg.pump;
    auto& s = cfg.sweep;
    auto& o = cfg.output;
    auto& sim = cfg.simulate;

    auto num = [&](double& dst, const char* key, double scale = 1.0) {
        return std::pair<const std::string, Handler>(key, [&dst, &r, key, scale](const YAML::Node& n) {
            dst = r.get<double>(n, key) * scale;
        });
    };
    auto text = [&](std::string& dst, const char* key) {
        return std::pair<const std::string, Handler>(key, [&dst, &r, key](const YAML::Node& n) {
            dst = r.get<std::string>(n, key);
        });
    };
    auto flag = [&](bool& dst, const char* key) {
        return std::pair<const std::string, Handler>(key, [&dst, &r, key](const YAML::Node& n) {
            dst = r.get<bool>(n, key);
        });
    };

    const std::map<std::string, Handler> circuit{
        num(c.c0, "c0_fF", 1e-15),   num(c.cs, "cs_fF", 1e-15),   num(c.cm, "cm_fF", 1e-15),
        num(c.lj0, "lj0_pH", 1e-12), num(c.lm, "lm_pH", 1e-12),   num(c.phi_dc, "phi_dc_phi0"),
    };

    const std::map<std::string, Handler> ramp{
        text(p.ramp, "shape"),
        num(p.p_up, "p_up"),
        num(p.p_down, "p_down"),
    };

    const std::map<std::string, Handler> pump{
        num(p.length_cells, "length_cells"),
        num(p.alpha_per_cell, "alpha_per_cell"),
        num(p.pump_freq_ghz, "pump_freq_GHz"),
        num(p.m0, "m0"),
        text(p.coupling_form, "coupling_form"),
        {"ramp", [&](const YAML::Node& n) { r.section(n, "pump.ramp", ramp); }},
        {"k_center_per_cell", [&](const YAML::Node& n) { p.k_center_per_cell = r.get<double>(n, "k_center_per_cell"); }},
        {"kappa0_per_cell", [&](const YAML::Node& n) { p.kappa0_per_cell = r.get<double>(n, "kappa0_per_cell"); }},
    };

    const std::map<std::string, Handler> sweep{
        num(s.f_min_ghz, "f_min_GHz"),
        num(s.f_max_ghz, "f_max_GHz"),
        num(s.tan_delta, "tan_delta"),
        num(s.threshold_db, "threshold_dB"),
        num(s.center_freq_ghz, "center_freq_GHz"),
        text(s.dispersion, "dispersion"),
        {"points", [&](const YAML::Node& n) {
             const auto v = r.get<long long>(n, "points");
             if (v < 2)
                 throw ConfigError(fmt::format("{}: 'points' must be at least 2", r.where(n)));
             s.points = static_cast<std::size_t>(v);
         }},
        {"threads", [&](const YAML::Node& n) { s.threads = r.get<unsigned>(n, "threads"); }},
        {"model", [&](const YAML::Node& n) {
             const auto name = r.get<std::string>(n, "model");
             const auto kind = parse_model_kind(name);
             if (!kind)
                 throw ConfigError(fmt::format("{}: unknown model '{}' (simple, rwa, full)", r.where(n), name));
             s.model = *kind;
         }},
    };

    const std::map<std::string, Handler> output{
        text(o.directory, "directory"),
        num(o.stride_cells, "stride_cells"),
        flag(o.csv, "csv"),
        flag(o.json, "json"),
    };

    const std::map<std::string, Handler> simulate{
        num(sim.freq_ghz, "freq_GHz"),
        text(sim.direction, "direction"),
    };

    const std::map<std::string, Handler> lengths{
        {"cells", [&](const YAML::Node& n) { cfg.lengths_cells = r.list(n, "cells"); }},
    };

    const std::map<std::string, Handler> adiabatic{
        {"freqs_GHz", [&](const YAML::Node& n) { cfg.adiabatic_freqs_ghz = r.list(n, "freqs_GHz"); }},
    };

    const std::map<std::string, Handler> top{
        {"circuit", [&](const YAML::Node& n) { r.section(n, "circuit", circuit); }},
        {"pump", [&](const YAML::Node& n) { r.section(n, "pump", pump); }},
        {"sweep", [&](const YAML::Node& n) { r.section(n, "sweep", sweep); }},
        {"output", [&](const YAML::Node& n) { r.section(n, "output", output); }},
        {"simulate", [&](const YAML::Node& n) { r.section(n, "simulate", simulate); }},
        {"lengths", [&](const YAML::Node& n) { r.section(n, "lengths", lengths); }},
        {"adiabatic", [&](const YAML::Node& n) { r.section(n, "adiabatic", adiabatic); }},
    };

    r.section(root, "<top level>", top);
    c.m0 = p.m0;
    return cfg;
}

template <class F>
auto checked(const std::string& section, F&& f)
{
    try {
        return f();
    } catch (const adiso::Error& e) {
        throw ConfigError(section + ": " + e.what());
    }
}

} // namespace

RunConfig parse_config(const std::string& text, const std::string& source)
{
    const Reader reader(source);
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(fmt::format("{}:{}:{}: {}", source, e.mark.line + 1, e.mark.column + 1, e.msg));
    }
    return parse_node(root, reader);
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path.string());
}

Dispersion dispersion_of(const RunConfig& cfg)
{
    if (cfg.sweep.dispersion == "exact")
        return Dispersion::Exact;
    if (cfg.sweep.dispersion == "linear")
        return Dispersion::Linear;
    throw ConfigError("sweep: dispersion must be 'exact' or 'linear', got '" + cfg.sweep.dispersion + "'");
}

Resolved resolve(const RunConfig& cfg)
{
    Resolved out;
    const Dispersion dispersion = dispersion_of(cfg);

    CircuitParams circuit = cfg.circuit;
    circuit.m0 = cfg.pump.m0;
    out.modes = checked("circuit", [&] { return derive_modes(circuit); });

    const auto& s = cfg.sweep;
    if (!(s.f_min_ghz > 0.0 && s.f_max_ghz > s.f_min_ghz))
        throw ConfigError("sweep: need 0 < f_min_GHz < f_max_GHz");
    if (s.points < 2)
        throw ConfigError("sweep: points must be at least 2");
    if (!(s.center_freq_ghz > 0.0))
        throw ConfigError("sweep: center_freq_GHz must be positive");

    const auto& p = cfg.pump;
    PumpProfile& profile = out.profile;
    profile.length = p.length_cells;
    profile.alpha = p.alpha_per_cell;
    profile.omega_p = kTwoPi * p.pump_freq_ghz * 1e9;
    profile.m0 = p.m0;
    profile.kappa_fixed = p.kappa0_per_cell;

    if (p.ramp == "generalized_gaussian")
        profile.ramp = ramp::GeneralizedGaussian{p.p_up, p.p_down};
    else if (p.ramp == "quadratic")
        profile.ramp = ramp::Quadratic{};
    else if (p.ramp == "constant")
        profile.ramp = ramp::Constant{};
    else
        throw ConfigError("pump.ramp: shape must be generalized_gaussian, quadratic or constant, got '" + p.ramp + "'");

    if (p.coupling_form == "circuit")
        profile.coupling = CouplingForm::Circuit;
    else if (p.coupling_form == "wavevector_product")
        profile.coupling = CouplingForm::WavevectorProduct;
    else
        throw ConfigError("pump: coupling_form must be circuit or wavevector_product, got '" + p.coupling_form + "'");

    if (!(p.pump_freq_ghz > 0.0))
        throw ConfigError("pump: pump_freq_GHz must be positive");
    profile.k_center = p.k_center_per_cell
                           ? *p.k_center_per_cell
                           : checked("pump", [&] {
                                 return default_k_center(out.modes, profile.omega_p,
                                                         kTwoPi * s.center_freq_ghz * 1e9, dispersion);
                             });
    checked("pump", [&] {
        validate(profile);
        return 0;
    });

    out.loss.tan_delta = s.tan_delta;
    checked("sweep", [&] {
        validate(out.loss);
        return 0;
    });
    out.sweep.dispersion = dispersion;
    out.sweep.threads = s.threads;

    if (!(cfg.output.stride_cells > 0.0))
        throw ConfigError("output: stride_cells must be positive");
    if (cfg.simulate.direction != "forward" && cfg.simulate.direction != "backward")
        throw ConfigError("simulate: direction must be forward or backward");
    if (!(cfg.simulate.freq_ghz > 0.0))
        throw ConfigError("simulate: freq_GHz must be positive");
    if (cfg.lengths_cells.empty())
        throw ConfigError("lengths: need at least one length");
    for (const double l : cfg.lengths_cells)
        if (!(l >= 2.0))
            throw ConfigError("lengths: every length must be at least 2 cells");
    for (const double f : cfg.adiabatic_freqs_ghz)
        if (!(f > 0.0))
            throw ConfigError("adiabatic: frequencies must be positive");
    return out;
}

nlohmann::ordered_json config_json(const RunConfig& cfg, const Resolved& resolved)
{
    const auto& c = cfg.circuit;
    const auto& p = cfg.pump;
    const auto& s = cfg.sweep;
    using J = nlohmann::ordered_json;

    J pump{
        {"length_cells", p.length_cells},
        {"alpha_per_cell", p.alpha_per_cell},
        {"pump_freq_GHz", p.pump_freq_ghz},
        {"m0", p.m0},
        {"coupling_form", p.coupling_form},
        {"k_center_per_cell", resolved.profile.k_center},
    };
    if (p.kappa0_per_cell)
        pump["kappa0_per_cell"] = *p.kappa0_per_cell;
    pump["ramp"] = J{{"shape", p.ramp}, {"p_up", p.p_up}, {"p_down", p.p_down}};

    return J{
        {"circuit", J{{"c0_fF", c.c0 * 1e15},
                      {"cs_fF", c.cs * 1e15},
                      {"cm_fF", c.cm * 1e15},
                      {"lj0_pH", c.lj0 * 1e12},
                      {"lm_pH", c.lm * 1e12},
                      {"phi_dc_phi0", c.phi_dc}}},
        {"pump", pump},
        {"sweep", J{{"f_min_GHz", s.f_min_ghz},
                    {"f_max_GHz", s.f_max_ghz},
                    {"points", s.points},
                    {"model", std::string(to_string(s.model))},
                    {"tan_delta", s.tan_delta},
                    {"dispersion", s.dispersion},
                    {"threshold_dB", s.threshold_db},
                    {"center_freq_GHz", s.center_freq_ghz},
                    {"threads", s.threads}}},
        {"output", J{{"directory", cfg.output.directory},
                     {"stride_cells", cfg.output.stride_cells},
                     {"csv", cfg.output.csv},
                     {"json", cfg.output.json}}},
        {"simulate", J{{"freq_GHz", cfg.simulate.freq_ghz}, {"direction", cfg.simulate.direction}}},
        {"lengths", J{{"cells", cfg.lengths_cells}}},
        {"adiabatic", J{{"freqs_GHz", cfg.adiabatic_freqs_ghz}}},
    };
}

namespace {

void emit(YAML::Emitter& e, const nlohmann::ordered_json& j)
{
    if (j.is_object()) {
        e << YAML::BeginMap;
        for (const auto& [k, v] : j.items()) {
            e << YAML::Key << k << YAML::Value;
            emit(e, v);
        }
        e << YAML::EndMap;
    } else if (j.is_array()) {
        e << YAML::Flow << YAML::BeginSeq;
        for (const auto& v : j)
            emit(e, v);
        e << YAML::EndSeq;
    } else if (j.is_boolean()) {
        e << j.get<bool>();
    } else if (j.is_number_integer()) {
        e << j.get<long long>();
    } else if (j.is_number()) {
        e << fmt::format("{:.15g}", j.get<double>());
    } else {
        e << j.get<std::string>();
    }
}

} // namespace

std::string dump_config(const RunConfig& cfg, const Resolved& resolved)
{
    YAML::Emitter e;
    emit(e, config_json(cfg, resolved));
    return std::string(e.c_str()) + "\n";
}

} // namespace adiso::app
