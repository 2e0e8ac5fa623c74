#include "adiso_app/commands.hpp"

#include "adiso_app/output.hpp"

#include <adiso/adiabatic.hpp>

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

namespace adiso::app {

namespace {

using json = nlohmann::ordered_json;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double omega_of(double f_ghz)
{
    return kTwoPi * f_ghz * 1e9;
}

std::string length_tag(double length)
{
    return fmt::format("{:g}", length);
}

std::string model_tag(ModelKind kind)
{
    return kind == ModelKind::Simple2x2Forward || kind == ModelKind::Simple2x2Backward
               ? std::string("simple")
               : std::string(to_string(kind));
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

// Finite doubles as numbers, everything else as null.
json number(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

std::vector<double> positions(double length, double stride)
{
    std::vector<double> xs;
    for (double x = 0.0; x < length; x += stride)
        xs.push_back(x);
    xs.push_back(length);
    return xs;
}

struct DrivenRun {
    ModelKind kind;
    Drive drive;
    ScatteringSolution solution;
    Propagation propagation;
};

// Solves the boundary problem, then replays it from x = 0 to record the trace.
DrivenRun driven_run(const Context& ctx, double f_ghz, Drive drive)
{
    const auto& r = ctx.resolved;
    ModelKind kind = ctx.config.sweep.model;
    if (kind == ModelKind::Simple2x2Forward || kind == ModelKind::Simple2x2Backward)
        kind = drive == Drive::ForwardE ? ModelKind::Simple2x2Forward : ModelKind::Simple2x2Backward;

    const SignalCoupling sc(r.profile, r.modes, omega_of(f_ghz), r.sweep.dispersion);
    const TransferMatrix tm = transfer_matrix(kind, sc, r.sweep.integrator);
    DrivenRun run{kind, drive, scattering_solve(tm, drive), {}};
    run.propagation = propagate(kind, sc, run.solution.at_start, ctx.config.output.stride_cells,
                                r.sweep.integrator);
    return run;
}

json sweep_summary(const Context& ctx, const SweepResult& result)
{
    const double threshold = ctx.config.sweep.threshold_db;
    const auto band = isolation_band(result, threshold);
    double il_min = INFINITY;
    double il_max = -INFINITY;
    double iso_min = INFINITY;
    for (const auto& row : result.rows) {
        il_min = std::min(il_min, row.insertion_loss_db);
        il_max = std::max(il_max, row.insertion_loss_db);
        iso_min = std::min(iso_min, row.isolation_db);
    }
    return json{
        {"model", model_tag(result.model)},
        {"length_cells", ctx.resolved.profile.length},
        {"f_min_GHz", result.rows.front().f_hz / 1e9},
        {"f_max_GHz", result.rows.back().f_hz / 1e9},
        {"points", result.rows.size()},
        {"threshold_dB", threshold},
        {"band_low_GHz", band ? json(band->f_low / 1e9) : json(nullptr)},
        {"band_high_GHz", band ? json(band->f_high / 1e9) : json(nullptr)},
        {"bandwidth_GHz", band ? band->width() / 1e9 : 0.0},
        {"min_isolation_dB", number(iso_min)},
        {"min_insertion_loss_dB", number(il_min)},
        {"max_insertion_loss_dB", number(il_max)},
    };
}

} // namespace

void cmd_modes(const Context& ctx)
{
    const auto& m = ctx.resolved.modes;
    const auto& p = ctx.resolved.profile;
    if (m.degenerate())
        ctx.err << "warning: even and odd modes are degenerate; the pump cannot separate them and no isolation is "
                   "possible\n";

    const double omega_c = omega_of(ctx.config.sweep.center_freq_ghz);
    const SignalCoupling sc(p, m, omega_c, ctx.resolved.sweep.dispersion);
    PumpProfile wk = p;
    wk.coupling = CouplingForm::WavevectorProduct;
    wk.kappa_fixed.reset();
    const double kappa_wk = SignalCoupling(wk, m, omega_c, Dispersion::Exact).kappa_peak();
    const double kappa_wk_linear = SignalCoupling(wk, m, omega_c, Dispersion::Linear).kappa_peak();

    const json j{
        {"modes",
         json{
             {"l_dc_pH", m.l_dc * 1e12},
             {"l_e_pH", m.l_e * 1e12},
             {"l_o_pH", m.l_o * 1e12},
             {"c_e_fF", m.c_e * 1e15},
             {"c_o_fF", m.c_o * 1e15},
             {"z_e_ohm", m.z_e},
             {"z_o_ohm", m.z_o},
             {"f0_e_GHz", m.w0_e / kTwoPi / 1e9},
             {"f0_o_GHz", m.w0_o / kTwoPi / 1e9},
             {"fj_e_GHz", m.wj_e / kTwoPi / 1e9},
             {"fj_o_GHz", m.wj_o / kTwoPi / 1e9},
             {"degenerate", m.degenerate()},
         }},
        {"center",
         json{
             {"f_GHz", ctx.config.sweep.center_freq_ghz},
             {"k_e_per_cell", sc.k_e()},
             {"k_o_per_cell", sc.k_o()},
             {"k_center_per_cell", p.k_center},
             {"kappa0_per_cell", sc.kappa_peak()},
             {"kappa0_wavevector_product_per_cell", kappa_wk},
             {"kappa0_wavevector_product_linear_per_cell", kappa_wk_linear},
         }},
        {"parameters", config_json(ctx.config, ctx.resolved)},
    };
    ctx.out << dump(j);
}

std::vector<std::filesystem::path> cmd_dispersion(const Context& ctx)
{
    const auto& m = ctx.resolved.modes;
    const auto& s = ctx.config.sweep;
    OutputDir dir(ctx.config.output.directory);

    CsvTable csv({"f_GHz", "k_e", "k_o", "k_e_linear", "k_o_linear"});
    const std::size_t n = s.points;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = s.f_max_ghz * static_cast<double>(i) / static_cast<double>(n - 1);
        const double w = omega_of(f);
        csv.add({f, wavevector(m, Mode::Even, w), wavevector(m, Mode::Odd, w),
                 wavevector(m, Mode::Even, w, Dispersion::Linear), wavevector(m, Mode::Odd, w, Dispersion::Linear)});
    }
    dir.write("dispersion.csv", csv.str());
    dir.commit();
    return dir.written();
}

std::vector<std::filesystem::path> cmd_profile(const Context& ctx)
{
    const auto& r = ctx.resolved;
    const SignalCoupling sc(r.profile, r.modes, omega_of(ctx.config.sweep.center_freq_ghz), r.sweep.dispersion);
    OutputDir dir(ctx.config.output.directory);

    CsvTable csv({"x", "k_p", "m", "kappa", "dk_f", "dk_b"});
    for (const double x : positions(r.profile.length, ctx.config.output.stride_cells))
        csv.add({x, pump_wavevector(r.profile, x), modulation_depth(r.profile, x), sc.kappa(x), sc.dk_f(x), sc.dk_b(x)});
    dir.write(fmt::format("profile_{}.csv", length_tag(r.profile.length)), csv.str());
    dir.commit();
    return dir.written();
}

std::vector<std::filesystem::path> cmd_simulate(const Context& ctx)
{
    const auto& sim = ctx.config.simulate;
    const Drive drive = sim.direction == "backward" ? Drive::BackwardE : Drive::ForwardE;
    const DrivenRun run = driven_run(ctx, sim.freq_ghz, drive);
    const bool forward = drive == Drive::ForwardE;

    OutputDir dir(ctx.config.output.directory);
    const std::string stem = fmt::format("simulate_{}_{}_{:.3f}GHz_{}", model_tag(run.kind), sim.direction, sim.freq_ghz,
                                         length_tag(ctx.resolved.profile.length));

    if (ctx.config.output.csv) {
        CsvTable csv({"x", "re_e_f", "im_e_f", "re_o_f", "im_o_f", "re_e_b", "im_e_b", "re_o_b", "im_o_b", "E_power",
                      "O_power"});
        for (const auto& s : run.propagation.trajectory) {
            const auto& v = s.state;
            const double pe = std::norm(forward ? v.e_f : v.e_b);
            const double po = std::norm(forward ? v.o_f : v.o_b);
            csv.add({s.x, v.e_f.real(), v.e_f.imag(), v.o_f.real(), v.o_f.imag(), v.e_b.real(), v.e_b.imag(),
                     v.o_b.real(), v.o_b.imag(), pe, po});
        }
        dir.write(stem + ".csv", csv.str());
    }
    if (ctx.config.output.json) {
        const StateVector& exit = forward ? run.solution.at_end : run.solution.at_start;
        const double pe = std::norm(forward ? exit.e_f : exit.e_b);
        const double po = std::norm(forward ? exit.o_f : exit.o_b);
        const json j{
            {"model", model_tag(run.kind)},
            {"direction", sim.direction},
            {"f_GHz", sim.freq_ghz},
            {"length_cells", ctx.resolved.profile.length},
            {"exit_E_power", pe},
            {"exit_O_power", po},
            {"exit_E_dB", number(10.0 * std::log10(pe))},
            {"steps", run.propagation.steps},
            {"parameters", config_json(ctx.config, ctx.resolved)},
        };
        dir.write(stem + ".json", dump(j));
    }
    dir.commit();
    return dir.written();
}

std::vector<std::filesystem::path> cmd_sweep(const Context& ctx)
{
    const auto& r = ctx.resolved;
    const auto& s = ctx.config.sweep;
    const SweepResult result = frequency_sweep(s.model, r.profile, r.modes, r.loss, s.f_min_ghz * 1e9,
                                               s.f_max_ghz * 1e9, s.points, r.sweep);

    OutputDir dir(ctx.config.output.directory);
    const std::string stem = fmt::format("sweep_{}_{}", model_tag(s.model), length_tag(r.profile.length));
    if (ctx.config.output.csv) {
        CsvTable csv({"f_GHz", "isolation_dB", "backward_transmission_dB", "insertion_loss_dB", "forward_residual",
                      "model"});
        for (const auto& row : result.rows)
            csv.add({row.f_hz / 1e9, row.isolation_db, row.backward_transmission_db, row.insertion_loss_db,
                     row.forward_residual, model_tag(s.model)});
        dir.write(stem + ".csv", csv.str());
    }
    if (ctx.config.output.json) {
        json j = sweep_summary(ctx, result);
        j["parameters"] = config_json(ctx.config, r);
        dir.write(stem + ".json", dump(j));
    }
    dir.commit();
    return dir.written();
}

std::vector<std::filesystem::path> cmd_lengths(const Context& ctx)
{
    const auto& r = ctx.resolved;
    const auto& s = ctx.config.sweep;
    const auto rows = length_sweep(s.model, r.profile, r.modes, r.loss, ctx.config.lengths_cells,
                                   frequency_grid(s.f_min_ghz * 1e9, s.f_max_ghz * 1e9, s.points), s.threshold_db,
                                   r.sweep);

    OutputDir dir(ctx.config.output.directory);
    const std::string stem = fmt::format("lengths_{}", model_tag(s.model));
    if (ctx.config.output.csv) {
        CsvTable csv({"length_cells", "bandwidth_GHz", "f_low_GHz", "f_high_GHz"});
        for (const auto& row : rows)
            csv.add({row.length, row.bandwidth_hz / 1e9, row.f_low / 1e9, row.f_high / 1e9});
        dir.write(stem + ".csv", csv.str());
    }
    if (ctx.config.output.json) {
        json table = json::array();
        for (const auto& row : rows)
            table.push_back(json{{"length_cells", row.length},
                                 {"bandwidth_GHz", row.bandwidth_hz / 1e9},
                                 {"f_low_GHz", row.f_low / 1e9},
                                 {"f_high_GHz", row.f_high / 1e9}});
        const json j{
            {"model", model_tag(s.model)},
            {"threshold_dB", s.threshold_db},
            {"lengths", table},
            {"parameters", config_json(ctx.config, r)},
        };
        dir.write(stem + ".json", dump(j));
    }
    dir.commit();
    return dir.written();
}

std::vector<std::filesystem::path> cmd_adiabatic(const Context& ctx)
{
    const auto& r = ctx.resolved;
    OutputDir dir(ctx.config.output.directory);
    const std::string ltag = length_tag(r.profile.length);

    json entries = json::array();
    for (const double f : ctx.config.adiabatic_freqs_ghz) {
        const SignalCoupling sc(r.profile, r.modes, omega_of(f), r.sweep.dispersion);
        const DrivenRun run = driven_run(ctx, f, Drive::ForwardE);
        const AdiabaticTrace trace = deviation_angle(run.propagation.trajectory, sc);
        const GeometricEstimate est = geometric_estimate(sc);

        if (ctx.config.output.csv) {
            CsvTable csv({"x", "theta_adi", "theta_dev", "g"});
            for (const auto& s : trace.samples)
                csv.add({s.x, s.theta_adi, s.theta_dev, s.g});
            dir.write(fmt::format("adiabatic_{:.3f}GHz_{}.csv", f, ltag), csv.str());
        }
        const double residual = std::norm(run.solution.at_end.e_f);
        entries.push_back(json{
            {"f_GHz", f},
            {"theta_final", trace.theta_final},
            {"p_residual", trace.p_residual},
            {"isolation_dB", number(-10.0 * std::log10(residual))},
            {"theta_L_re", est.theta_l.real()},
            {"theta_L_im", est.theta_l.imag()},
            {"theta_L_abs", std::abs(est.theta_l)},
            {"rotation_bound", est.rotation_bound},
            {"estimated_p_residual", est.p_residual},
            {"estimated_isolation_dB", number(est.isolation_db)},
        });
    }
    if (ctx.config.output.json) {
        const json j{
            {"model", model_tag(ctx.config.sweep.model)},
            {"length_cells", r.profile.length},
            {"frequencies", entries},
            {"parameters", config_json(ctx.config, r)},
        };
        dir.write(fmt::format("adiabatic_{}.json", ltag), dump(j));
    }
    dir.commit();
    return dir.written();
}

std::vector<std::filesystem::path> cmd_compare_rwa(const Context& ctx)
{
    const auto& r = ctx.resolved;
    const auto& s = ctx.config.sweep;
    const RwaComparison cmp = rwa_comparison(r.profile, r.modes, r.loss,
                                             frequency_grid(s.f_min_ghz * 1e9, s.f_max_ghz * 1e9, s.points), r.sweep);

    OutputDir dir(ctx.config.output.directory);
    const std::string stem = fmt::format("compare_rwa_{}", length_tag(r.profile.length));
    if (ctx.config.output.csv) {
        CsvTable csv({"f_GHz", "isolation_rwa_dB", "isolation_full_dB", "delta_isolation_dB", "backward_rwa_dB",
                      "backward_full_dB", "delta_backward_dB"});
        for (std::size_t i = 0; i < cmp.rwa.rows.size(); ++i) {
            const auto& a = cmp.rwa.rows[i];
            const auto& b = cmp.full.rows[i];
            csv.add({a.f_hz / 1e9, a.isolation_db, b.isolation_db, cmp.delta_isolation_db[i], a.backward_transmission_db,
                     b.backward_transmission_db, cmp.delta_backward_db[i]});
        }
        dir.write(stem + ".csv", csv.str());
    }
    if (ctx.config.output.json) {
        const json j{
            {"length_cells", r.profile.length},
            {"max_abs_delta_isolation_dB", cmp.max_abs_delta_isolation_db},
            {"max_abs_delta_isolation_below_25dB", cmp.max_abs_delta_isolation_below_cap_db},
            {"max_abs_delta_backward_dB", cmp.max_abs_delta_backward_db},
            {"rwa", sweep_summary(ctx, cmp.rwa)},
            {"full", sweep_summary(ctx, cmp.full)},
            {"parameters", config_json(ctx.config, r)},
        };
        dir.write(stem + ".json", dump(j));
    }
    dir.commit();
    return dir.written();
}

} // namespace adiso::app
