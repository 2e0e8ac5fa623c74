#include "adiso/metrics.hpp"

#include "adiso/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <string>
#include <thread>

namespace adiso {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double to_db(double power)
{
    return 10.0 * std::log10(std::max(power, 1e-300));
}

bool is_simple(ModelKind kind)
{
    return kind == ModelKind::Simple2x2Forward || kind == ModelKind::Simple2x2Backward;
}

} // namespace

void validate(const LossModel& loss)
{
    if (!(std::isfinite(loss.tan_delta) && loss.tan_delta >= 0.0))
        throw ParameterError("loss tangent must be non-negative");
}

double dielectric_loss_db(const ModePair& modes, double omega, Mode mode, double length,
                          const LossModel& loss, Dispersion dispersion)
{
    validate(loss);
    const double nepers = wavevector(modes, mode, omega, dispersion) * loss.tan_delta / 2.0 * length;
    return 20.0 * std::log10(std::numbers::e) * nepers;
}

std::vector<double> frequency_grid(double f_min_hz, double f_max_hz, std::size_t n)
{
    if (n < 2)
        throw ParameterError("frequency grid needs at least 2 points");
    if (!(f_min_hz > 0.0 && f_max_hz > f_min_hz))
        throw ParameterError("frequency grid needs 0 < f_min < f_max");
    std::vector<double> f(n);
    const double step = (f_max_hz - f_min_hz) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        f[i] = f_min_hz + step * static_cast<double>(i);
    f.back() = f_max_hz;
    return f;
}

SweepRow evaluate_frequency(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                            const LossModel& loss, double f_hz, const SweepOptions& opts)
{
    const double omega = kTwoPi * f_hz;
    const SignalCoupling sc(profile, modes, omega, opts.dispersion);

    ScatteringSolution fwd;
    ScatteringSolution bwd;
    if (is_simple(kind)) {
        fwd = scattering_solve(transfer_matrix(ModelKind::Simple2x2Forward, sc, opts.integrator), Drive::ForwardE);
        bwd = scattering_solve(transfer_matrix(ModelKind::Simple2x2Backward, sc, opts.integrator), Drive::BackwardE);
    } else {
        const TransferMatrix tm = transfer_matrix(kind, sc, opts.integrator);
        fwd = scattering_solve(tm, Drive::ForwardE);
        bwd = scattering_solve(tm, Drive::BackwardE);
    }

    SweepRow row;
    row.f_hz = f_hz;
    row.forward_residual = std::norm(fwd.at_end.e_f);
    row.isolation_db = -to_db(row.forward_residual);
    const double through = std::norm(bwd.at_start.e_b);
    row.backward_transmission_db = to_db(through);
    row.backward_converted = std::norm(bwd.at_start.o_b);
    row.insertion_loss_db = -row.backward_transmission_db +
                            dielectric_loss_db(modes, omega, Mode::Even, profile.length, loss, opts.dispersion);
    return row;
}

SweepResult frequency_sweep(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                            const LossModel& loss, std::vector<double> frequencies_hz,
                            const SweepOptions& opts)
{
    validate(profile);
    validate(loss);
    if (frequencies_hz.empty())
        throw ParameterError("frequency sweep needs at least one frequency");
    std::sort(frequencies_hz.begin(), frequencies_hz.end());

    const std::size_t n = frequencies_hz.size();
    SweepResult result;
    result.model = kind;
    result.rows.resize(n);

    std::atomic<std::size_t> next{0};
    std::mutex failure_mutex;
    std::size_t failed_index = n;
    std::exception_ptr failure;

    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                result.rows[i] = evaluate_frequency(kind, profile, modes, loss, frequencies_hz[i], opts);
            } catch (...) {
                // Keep the lowest failing frequency so the report is deterministic.
                const std::lock_guard lock(failure_mutex);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };

    unsigned threads = opts.threads != 0 ? opts.threads : std::thread::hardware_concurrency();
    threads = std::clamp<unsigned>(threads, 1u, static_cast<unsigned>(n));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(worker);
    }

    if (failure) {
        const double f = frequencies_hz[failed_index];
        try {
            std::rethrow_exception(failure);
        } catch (const std::exception& e) {
            throw SweepError("sweep failed at " + std::to_string(f / 1e9) + " GHz: " + e.what(), f);
        }
    }
    return result;
}

SweepResult frequency_sweep(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                            const LossModel& loss, double f_min_hz, double f_max_hz, std::size_t n,
                            const SweepOptions& opts)
{
    return frequency_sweep(kind, profile, modes, loss, frequency_grid(f_min_hz, f_max_hz, n), opts);
}

std::optional<Band> isolation_band(const SweepResult& result, double threshold_db)
{
    const auto& rows = result.rows;
    auto crossing = [&](std::size_t a, std::size_t b) {
        const double ya = rows[a].isolation_db;
        const double yb = rows[b].isolation_db;
        const double t = (threshold_db - ya) / (yb - ya);
        return rows[a].f_hz + t * (rows[b].f_hz - rows[a].f_hz);
    };

    std::optional<Band> best;
    std::size_t i = 0;
    while (i < rows.size()) {
        if (!(rows[i].isolation_db >= threshold_db)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < rows.size() && rows[j + 1].isolation_db >= threshold_db)
            ++j;
        const Band band{i > 0 ? crossing(i - 1, i) : rows[i].f_hz,
                        j + 1 < rows.size() ? crossing(j, j + 1) : rows[j].f_hz};
        if (!best || band.width() > best->width())
            best = band;
        i = j + 1;
    }
    return best;
}

double bandwidth(const SweepResult& result, double threshold_db)
{
    const auto band = isolation_band(result, threshold_db);
    return band ? band->width() : 0.0;
}

std::vector<LengthRow> length_sweep(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                                    const LossModel& loss, const std::vector<double>& lengths,
                                    const std::vector<double>& frequencies_hz, double threshold_db,
                                    const SweepOptions& opts)
{
    std::vector<LengthRow> out;
    out.reserve(lengths.size());
    for (const double length : lengths) {
        if (!(length > 0.0))
            throw ParameterError("lengths must be positive");
        PumpProfile p = profile;
        p.length = length;
        const SweepResult sweep = frequency_sweep(kind, p, modes, loss, frequencies_hz, opts);
        LengthRow row;
        row.length = length;
        if (const auto band = isolation_band(sweep, threshold_db)) {
            row.bandwidth_hz = band->width();
            row.f_low = band->f_low;
            row.f_high = band->f_high;
        }
        out.push_back(row);
    }
    return out;
}

RwaComparison rwa_comparison(const PumpProfile& profile, const ModePair& modes, const LossModel& loss,
                             const std::vector<double>& frequencies_hz, const SweepOptions& opts,
                             double isolation_cap_db)
{
    RwaComparison cmp;
    cmp.rwa = frequency_sweep(ModelKind::Rwa4x4, profile, modes, loss, frequencies_hz, opts);
    cmp.full = frequency_sweep(ModelKind::Full4x4, profile, modes, loss, frequencies_hz, opts);

    const std::size_t n = cmp.rwa.rows.size();
    cmp.delta_isolation_db.resize(n);
    cmp.delta_backward_db.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const SweepRow& a = cmp.rwa.rows[i];
        const SweepRow& b = cmp.full.rows[i];
        const double d_iso = b.isolation_db - a.isolation_db;
        const double d_bwd = b.backward_transmission_db - a.backward_transmission_db;
        cmp.delta_isolation_db[i] = d_iso;
        cmp.delta_backward_db[i] = d_bwd;
        cmp.max_abs_delta_isolation_db = std::max(cmp.max_abs_delta_isolation_db, std::abs(d_iso));
        if (a.isolation_db < isolation_cap_db)
            cmp.max_abs_delta_isolation_below_cap_db =
                std::max(cmp.max_abs_delta_isolation_below_cap_db, std::abs(d_iso));
        cmp.max_abs_delta_backward_db = std::max(cmp.max_abs_delta_backward_db, std::abs(d_bwd));
    }
    return cmp;
}

} // namespace adiso
