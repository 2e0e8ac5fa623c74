#include "adiso/circuit.hpp"

#include "adiso/error.hpp"

#include <cmath>
#include <string>

namespace adiso {

namespace {

constexpr double kDivergenceEps = 1e-12;

double half_flux_cosine(double phi_ratio)
{
    const double c = std::cos(0.5 * phi_ratio);
    if (std::abs(c) < kDivergenceEps)
        throw ParameterError("flux bias at inductance divergence");
    return c;
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw ParameterError("invalid circuit parameter: " + what);
}

} // namespace

void validate(const CircuitParams& p)
{
    require(std::isfinite(p.c0) && p.c0 > 0.0, "c0 must be positive");
    require(std::isfinite(p.cs) && p.cs > 0.0, "cs must be positive");
    require(std::isfinite(p.cm) && p.cm >= 0.0, "cm must be non-negative");
    require(std::isfinite(p.lj0) && p.lj0 > 0.0, "lj0 must be positive");
    require(std::isfinite(p.lm), "lm must be finite");
    require(std::isfinite(p.m0) && p.m0 >= 0.0 && p.m0 < 1.0, "m0 must lie in [0, 1)");
    require(std::isfinite(p.phi_dc), "phi_dc must be finite");

    const double l_dc = squid_inductance(p.lj0, p.phi_dc, 0.0);
    require(std::abs(p.lm) < l_dc, "|lm| must be below the dc SQUID inductance");
}

bool ModePair::degenerate() const
{
    constexpr double tol = 1e-12;
    return std::abs(l_e - l_o) <= tol * l_dc && std::abs(c_e - c_o) <= tol * c_e;
}

double squid_inductance(double lj0, double phi_dc_ratio, double phi_rf_ratio)
{
    return 0.5 * lj0 / std::abs(half_flux_cosine(phi_dc_ratio + phi_rf_ratio));
}

double squid_inductance_linearized(double lj0, double phi_dc_ratio, double phi_rf_ratio)
{
    const double l_dc = 0.5 * lj0 / std::abs(half_flux_cosine(phi_dc_ratio));
    const double m = std::tan(0.5 * phi_dc_ratio) * 0.5 * phi_rf_ratio;
    // cos(a + d) ~ cos(a) - sin(a) d, so the inductance falls for m > 0
    return l_dc / (1.0 - m);
}

ModePair derive_modes(const CircuitParams& p)
{
    validate(p);

    ModePair mp;
    mp.cs = p.cs;
    mp.l_dc = squid_inductance(p.lj0, p.phi_dc, 0.0);
    mp.l_e = mp.l_dc + p.lm;
    mp.l_o = mp.l_dc - p.lm;
    mp.c_e = p.c0;
    mp.c_o = p.c0 + 2.0 * p.cm;
    mp.z_e = std::sqrt(mp.l_e / mp.c_e);
    mp.z_o = std::sqrt(mp.l_o / mp.c_o);
    mp.w0_e = 1.0 / std::sqrt(mp.l_e * mp.c_e);
    mp.w0_o = 1.0 / std::sqrt(mp.l_o * mp.c_o);
    mp.wj_e = 1.0 / std::sqrt(p.cs * mp.l_e);
    mp.wj_o = 1.0 / std::sqrt(p.cs * mp.l_o);
    return mp;
}

double wavevector(const ModePair& modes, Mode mode, double omega, Dispersion dispersion)
{
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw DomainError("wavevector: angular frequency must be non-negative");

    const double linear = std::sqrt(modes.inductance(mode) * modes.capacitance(mode)) * omega;
    if (dispersion == Dispersion::Linear)
        return linear;

    const double ratio = omega / modes.plasma(mode);
    if (ratio >= 1.0)
        throw DomainError("above plasma cutoff");
    return linear / std::sqrt(1.0 - ratio * ratio);
}

} // namespace adiso
