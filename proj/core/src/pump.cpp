#include "adiso/pump.hpp"

#include "adiso/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

namespace adiso {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_position(const PumpProfile& p, double x)
{
    if (!(x >= 0.0 && x <= p.length))
        throw DomainError("position " + std::to_string(x) + " outside [0, " +
                          std::to_string(p.length) + "]");
}

// One side of the generalized Gaussian. The offset s is taken with the local
// exponent so the ramp is zero at both ends and continuous at L/2.
struct GaussSide {
    double p;
    double s;
    explicit GaussSide(double exponent) : p(exponent), s(std::exp(-std::pow(0.5, exponent))) {}
};

} // namespace

void validate(const PumpProfile& p)
{
    auto fail = [](const std::string& what) { throw ParameterError("invalid pump profile: " + what); };

    if (!(std::isfinite(p.length) && p.length >= 2.0))
        fail("length must be at least 2 cells");
    if (!(std::isfinite(p.alpha) && p.alpha >= 0.0))
        fail("alpha must be non-negative");
    if (!(std::isfinite(p.m0) && p.m0 >= 0.0))
        fail("m0 must be non-negative");
    if (!(std::isfinite(p.omega_p) && p.omega_p > 0.0))
        fail("pump frequency must be positive");
    if (!std::isfinite(p.k_center))
        fail("k_center must be finite");
    if (!(p.k_center - p.alpha > 0.0))
        fail("pump wavevector must stay positive on [0, L] (need K > alpha)");
    if (p.kappa_fixed && !(std::isfinite(*p.kappa_fixed) && *p.kappa_fixed >= 0.0))
        fail("fixed kappa must be non-negative");
    if (const auto* gg = std::get_if<ramp::GeneralizedGaussian>(&p.ramp)) {
        if (!(gg->p_up >= 1.0 && gg->p_down >= 1.0))
            fail("generalized Gaussian exponents must be >= 1");
    }
}

double ramp_value(const RampShape& shape, double length, double x)
{
    return std::visit(
        overloaded{
            [&](const ramp::Quadratic&) { return 4.0 * (length - x) * x / (length * length); },
            [&](const ramp::GeneralizedGaussian& gg) {
                const double u = std::abs(x / length - 0.5);
                const GaussSide side(x <= 0.5 * length ? gg.p_up : gg.p_down);
                const double v = (std::exp(-std::pow(u, side.p)) - side.s) / (1.0 - side.s);
                return std::clamp(v, 0.0, 1.0);
            },
            [](const ramp::Constant&) { return 1.0; },
        },
        shape);
}

double ramp_slope(const RampShape& shape, double length, double x)
{
    return std::visit(
        overloaded{
            [&](const ramp::Quadratic&) { return 4.0 * (length - 2.0 * x) / (length * length); },
            [&](const ramp::GeneralizedGaussian& gg) {
                const double t = x / length - 0.5;
                const double u = std::abs(t);
                const GaussSide side(x <= 0.5 * length ? gg.p_up : gg.p_down);
                if (u == 0.0)
                    return 0.0;
                const double du = (t > 0.0 ? 1.0 : -1.0) / length;
                const double up = std::pow(u, side.p);
                return -side.p * (up / u) * du * std::exp(-up) / (1.0 - side.s);
            },
            [](const ramp::Constant&) { return 0.0; },
        },
        shape);
}

double pump_wavevector(const PumpProfile& p, double x)
{
    check_position(p, x);
    return p.k_center + 2.0 * p.alpha / p.length * (x - 0.5 * p.length);
}

double pump_phase(const PumpProfile& p, double x)
{
    check_position(p, x);
    return p.k_center * x + p.alpha / p.length * (x * x - p.length * x);
}

double modulation_depth(const PumpProfile& p, double x)
{
    check_position(p, x);
    return p.m0 * ramp_value(p.ramp, p.length, x);
}

double default_k_center(const ModePair& modes, double omega_p, double omega_center,
                        Dispersion dispersion)
{
    return wavevector(modes, Mode::Odd, omega_center + omega_p, dispersion) -
           wavevector(modes, Mode::Even, omega_center, dispersion);
}

SignalCoupling::SignalCoupling(const PumpProfile& profile, const ModePair& modes, double omega_e,
                               Dispersion dispersion)
    : profile_(profile), omega_e_(omega_e), omega_o_(omega_e + profile.omega_p)
{
    validate(profile_);
    if (!(omega_e > 0.0))
        throw DomainError("signal frequency must be positive");

    k_e_ = wavevector(modes, Mode::Even, omega_e_, dispersion);
    k_o_ = wavevector(modes, Mode::Odd, omega_o_, dispersion);

    if (profile_.kappa_fixed) {
        kappa_peak_ = *profile_.kappa_fixed;
    } else if (profile_.coupling == CouplingForm::Circuit) {
        kappa_peak_ = std::sqrt(omega_e_ * omega_o_ / (modes.z_e * modes.z_o)) * modes.l_dc * profile_.m0;
    } else {
        kappa_peak_ = std::sqrt(k_e_ * k_o_) * profile_.m0;
    }
}

double SignalCoupling::kappa(double x) const
{
    return kappa_peak_ * ramp_value(profile_.ramp, profile_.length, x);
}

double SignalCoupling::kappa_slope(double x) const
{
    return kappa_peak_ * ramp_slope(profile_.ramp, profile_.length, x);
}

double SignalCoupling::pump_wavevector(double x) const
{
    return profile_.k_center + 2.0 * profile_.alpha / profile_.length * (x - 0.5 * profile_.length);
}

double SignalCoupling::forward_phase(double x) const
{
    const double pump = profile_.k_center * x + profile_.alpha / profile_.length * (x * x - profile_.length * x);
    return (k_o_ - k_e_) * x - pump;
}

double SignalCoupling::backward_phase(double x) const
{
    const double pump = profile_.k_center * x + profile_.alpha / profile_.length * (x * x - profile_.length * x);
    return (k_o_ - k_e_) * x + pump;
}

double SignalCoupling::max_abs_dk_f() const
{
    return std::max(std::abs(dk_f(0.0)), std::abs(dk_f(profile_.length)));
}

double SignalCoupling::max_abs_dk_b() const
{
    return std::max(std::abs(dk_b(0.0)), std::abs(dk_b(profile_.length)));
}

MismatchSample SignalCoupling::sample(double x) const
{
    return MismatchSample{x, dk_f(x), dk_b(x), kappa(x)};
}

double coupling_strength(const PumpProfile& p, const ModePair& modes, double omega_e, double x,
                         Dispersion dispersion)
{
    check_position(p, x);
    return SignalCoupling(p, modes, omega_e, dispersion).kappa(x);
}

MismatchSample mismatch(const PumpProfile& p, const ModePair& modes, double omega_e, double x,
                        Dispersion dispersion)
{
    check_position(p, x);
    return SignalCoupling(p, modes, omega_e, dispersion).sample(x);
}

} // namespace adiso
