#pragma once

// Circuit model of a pair of coupled SQUID transmission lines.
//
// Units are SI (henry, farad, rad/s). Position is measured in unit cells,
// so every wavevector returned here is in rad/cell.

namespace adiso {

/// Unit-cell circuit values of the coupled lines.
struct CircuitParams {
    double c0 = 80e-15;    ///< capacitance to ground per cell [F]
    double cs = 40e-15;    ///< junction shunt capacitance per cell [F]
    double cm = 20e-15;    ///< mutual capacitance per cell [F]
    double lj0 = 250e-12;  ///< single-junction inductance [H]
    double lm = -50e-12;   ///< mutual inductance per cell [H], may be negative
    /// dc flux bias phi_dc/phi0, i.e. the phase argument before halving.
    double phi_dc = 2.0943951023931953;
    double m0 = 0.1;       ///< peak modulation depth
};

/// Throws ParameterError when an invariant of `p` is violated.
void validate(const CircuitParams& p);

enum class Mode { Even, Odd };

enum class Dispersion {
    Exact,  ///< includes the Josephson plasma correction
    Linear  ///< k = sqrt(L C) * omega
};

/// Even/odd mode constants derived from a CircuitParams.
struct ModePair {
    double l_dc = 0.0;
    double l_e = 0.0, l_o = 0.0;
    double c_e = 0.0, c_o = 0.0;
    double z_e = 0.0, z_o = 0.0;
    double w0_e = 0.0, w0_o = 0.0;  ///< cutoff angular frequencies
    double wj_e = 0.0, wj_o = 0.0;  ///< plasma angular frequencies
    double cs = 0.0;

    double inductance(Mode m) const { return m == Mode::Even ? l_e : l_o; }
    double capacitance(Mode m) const { return m == Mode::Even ? c_e : c_o; }
    double impedance(Mode m) const { return m == Mode::Even ? z_e : z_o; }
    double plasma(Mode m) const { return m == Mode::Even ? wj_e : wj_o; }

    /// True when both modes share the same dispersion relation.
    bool degenerate() const;
};

/// Instantaneous SQUID inductance 0.5*lj0/|cos((phi_dc + phi_rf)/2)| at
/// negligible signal current.
double squid_inductance(double lj0, double phi_dc_ratio, double phi_rf_ratio);

/// First-order expansion L_dc/(1 + m) with m = tan(phi_dc/2)*phi_rf/2.
double squid_inductance_linearized(double lj0, double phi_dc_ratio, double phi_rf_ratio);

ModePair derive_modes(const CircuitParams& p);

/// Wavevector of `mode` at angular frequency `omega` in rad/cell.
/// The exact form throws DomainError at or above the plasma frequency.
double wavevector(const ModePair& modes, Mode mode, double omega,
                  Dispersion dispersion = Dispersion::Exact);

} // namespace adiso
