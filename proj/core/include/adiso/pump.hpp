#pragma once

#include "adiso/circuit.hpp"

#include <optional>
#include <variant>

namespace adiso {

namespace ramp {

/// 4 (L - x) x / L^2.
struct Quadratic {};

/// Generalized Gaussian with separate ramp-up / ramp-down exponents.
struct GeneralizedGaussian {
    double p_up = 3.0;    ///< exponent for x <= L/2
    double p_down = 2.0;  ///< exponent for x > L/2
};

/// Uniform coupling, no ramp.
struct Constant {};

} // namespace ramp

using RampShape = std::variant<ramp::Quadratic, ramp::GeneralizedGaussian, ramp::Constant>;

/// How the peak coupling rate is obtained from the circuit.
enum class CouplingForm {
    /// sqrt(w_e w_o / (Z_e Z_o)) * L_dc * m, the circuit-level coupling.
    Circuit,
    /// sqrt(k_e k_o) * m, its low-frequency approximation.
    WavevectorProduct,
};

/// Spatial configuration of the pump along the device.
struct PumpProfile {
    double length = 2000.0;   ///< device length L [cells]
    double k_center = 0.0;    ///< pump wavevector K at L/2 [rad/cell]
    double alpha = 0.05;      ///< sweep half-range [rad/cell]
    double omega_p = 0.0;     ///< pump angular frequency [rad/s]
    double m0 = 0.1;          ///< peak modulation depth
    RampShape ramp = ramp::GeneralizedGaussian{};
    CouplingForm coupling = CouplingForm::Circuit;
    /// When set, kappa(x) = kappa_fixed * ramp(x) for every frequency.
    /// This is the frequency-independent coupling of the bare two-mode model.
    std::optional<double> kappa_fixed;
};

/// Throws ParameterError when an invariant of `p` is violated.
void validate(const PumpProfile& p);

/// Normalised ramp value in [0, 1] at position x.
double ramp_value(const RampShape& shape, double length, double x);
/// d ramp_value / dx.
double ramp_slope(const RampShape& shape, double length, double x);

/// k_p(x) = K + (2 alpha / L)(x - L/2).
double pump_wavevector(const PumpProfile& p, double x);

/// Accumulated pump phase, the integral of k_p from 0 to x, in closed form.
double pump_phase(const PumpProfile& p, double x);

/// m(x) = m0 * ramp(x).
double modulation_depth(const PumpProfile& p, double x);

/// K that phase matches a signal at `omega_center` at the device center.
double default_k_center(const ModePair& modes, double omega_p, double omega_center,
                        Dispersion dispersion = Dispersion::Exact);

/// Phase mismatch and coupling at one position.
struct MismatchSample {
    double x = 0.0;
    double dk_f = 0.0;   ///< k_o - k_e - k_p(x)
    double dk_b = 0.0;   ///< k_o - k_e + k_p(x)
    double kappa = 0.0;
};

/// The pump seen by one signal frequency.
///
/// Wavevectors and the peak coupling are evaluated once; everything else is
/// an analytic function of position. Positions outside [0, L] are not
/// checked here; the free functions below do that.
class SignalCoupling {
public:
    SignalCoupling(const PumpProfile& profile, const ModePair& modes, double omega_e,
                   Dispersion dispersion = Dispersion::Exact);

    const PumpProfile& profile() const { return profile_; }
    double length() const { return profile_.length; }
    double omega_e() const { return omega_e_; }
    double omega_o() const { return omega_o_; }
    double k_e() const { return k_e_; }
    double k_o() const { return k_o_; }
    /// Coupling at the ramp peak.
    double kappa_peak() const { return kappa_peak_; }

    double kappa(double x) const;
    double kappa_slope(double x) const;
    double pump_wavevector(double x) const;
    double dk_f(double x) const { return k_o_ - k_e_ - pump_wavevector(x); }
    double dk_b(double x) const { return k_o_ - k_e_ + pump_wavevector(x); }
    /// d(dk_f)/dx, constant because k_p is affine.
    double dk_f_slope() const { return -2.0 * profile_.alpha / profile_.length; }
    /// Integral of dk_f from 0 to x.
    double forward_phase(double x) const;
    /// Integral of dk_b from 0 to x.
    double backward_phase(double x) const;

    /// Largest |dk_f| and |dk_b| on [0, L] (attained at the ends).
    double max_abs_dk_f() const;
    double max_abs_dk_b() const;

    MismatchSample sample(double x) const;

private:
    PumpProfile profile_;
    double omega_e_;
    double omega_o_;
    double k_e_;
    double k_o_;
    double kappa_peak_;
};

/// kappa(x) at signal frequency omega_e; throws DomainError for x outside [0, L].
double coupling_strength(const PumpProfile& p, const ModePair& modes, double omega_e, double x,
                         Dispersion dispersion = Dispersion::Exact);

MismatchSample mismatch(const PumpProfile& p, const ModePair& modes, double omega_e, double x,
                        Dispersion dispersion = Dispersion::Exact);

} // namespace adiso
