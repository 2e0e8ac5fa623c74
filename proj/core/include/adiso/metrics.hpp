#pragma once

#include "adiso/dynamics.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace adiso {

struct LossModel {
    double tan_delta = 1e-5;  ///< dielectric loss tangent
};

void validate(const LossModel& loss);

/// Dielectric attenuation of `mode` over `length` cells:
/// k(omega) * tan_delta / 2 nepers per cell, returned in dB.
double dielectric_loss_db(const ModePair& modes, double omega, Mode mode, double length,
                          const LossModel& loss, Dispersion dispersion = Dispersion::Exact);

struct SweepRow {
    double f_hz = 0.0;
    double isolation_db = 0.0;              ///< -10 log10 |e_f(L)|^2
    double backward_transmission_db = 0.0;  ///< 10 log10 |e_b(0)|^2, lossless
    double insertion_loss_db = 0.0;         ///< through loss plus dielectric loss
    double forward_residual = 0.0;          ///< |e_f(L)|^2
    double backward_converted = 0.0;        ///< |o_b(0)|^2
};

struct SweepResult {
    ModelKind model = ModelKind::Rwa4x4;
    std::vector<SweepRow> rows;  ///< ascending frequency
};

struct SweepOptions {
    IntegratorOptions integrator;
    Dispersion dispersion = Dispersion::Exact;
    /// Worker threads; 0 uses the hardware concurrency.
    unsigned threads = 0;
};

/// Evenly spaced grid of n >= 2 points on [f_min, f_max] in Hz.
std::vector<double> frequency_grid(double f_min_hz, double f_max_hz, std::size_t n);

/// Scattering figures at one signal frequency. The simple models combine the
/// forward and backward two-mode pairs.
SweepRow evaluate_frequency(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                            const LossModel& loss, double f_hz, const SweepOptions& opts = {});

/// Evaluates every frequency in parallel; rows come back in ascending order.
/// A failure at any frequency is rethrown as SweepError naming it.
SweepResult frequency_sweep(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                            const LossModel& loss, std::vector<double> frequencies_hz,
                            const SweepOptions& opts = {});

SweepResult frequency_sweep(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                            const LossModel& loss, double f_min_hz, double f_max_hz, std::size_t n,
                            const SweepOptions& opts = {});

struct Band {
    double f_low = 0.0;
    double f_high = 0.0;
    double width() const { return f_high - f_low; }
};

/// Widest contiguous interval with isolation >= threshold, edges found by
/// linear interpolation between grid points. Empty if never reached.
std::optional<Band> isolation_band(const SweepResult& result, double threshold_db);

/// Width of isolation_band in Hz, 0 if the threshold is never reached.
double bandwidth(const SweepResult& result, double threshold_db);

struct LengthRow {
    double length = 0.0;
    double bandwidth_hz = 0.0;
    double f_low = 0.0;   ///< 0 when the band is empty
    double f_high = 0.0;
};

/// One frequency sweep per length, everything else taken from `profile`.
std::vector<LengthRow> length_sweep(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                                    const LossModel& loss, const std::vector<double>& lengths,
                                    const std::vector<double>& frequencies_hz, double threshold_db,
                                    const SweepOptions& opts = {});

struct RwaComparison {
    SweepResult rwa;
    SweepResult full;
    std::vector<double> delta_isolation_db;  ///< full - rwa
    std::vector<double> delta_backward_db;   ///< full - rwa
    double max_abs_delta_isolation_db = 0.0;
    /// Same maximum restricted to points where the RWA isolation is below the cap.
    double max_abs_delta_isolation_below_cap_db = 0.0;
    double max_abs_delta_backward_db = 0.0;
};

RwaComparison rwa_comparison(const PumpProfile& profile, const ModePair& modes, const LossModel& loss,
                             const std::vector<double>& frequencies_hz, const SweepOptions& opts = {},
                             double isolation_cap_db = 25.0);

} // namespace adiso
