#pragma once

#include "adiso/dynamics.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace adiso {

/// atan2(kappa, dk_f) in [0, pi]: the polar angle of the instantaneous
/// eigen-axis of the forward pair. 0 is pure E, pi is pure O.
double mixing_angle(const SignalCoupling& sc, double x);
double mixing_angle(const PumpProfile& p, const ModePair& modes, double omega_e, double x,
                    Dispersion dispersion = Dispersion::Exact);

/// d(mixing_angle)/dx = (kappa' dk - kappa dk') / g^2, evaluated analytically.
/// Zero where g vanishes.
double mixing_angle_slope(const SignalCoupling& sc, double x);

/// g(x) = sqrt(kappa^2 + dk_f^2), the local splitting of the forward pair.
double splitting(const SignalCoupling& sc, double x);

struct AdiabaticSample {
    double x = 0.0;
    double theta_adi = 0.0;  ///< mixing angle [rad]
    double theta_dev = 0.0;  ///< angle between the state and its eigen-branch [rad]
    double g = 0.0;          ///< splitting [rad/cell]
};

struct AdiabaticTrace {
    std::vector<AdiabaticSample> samples;
    double theta_final = 0.0;  ///< theta_dev at x = L
    double p_residual = 0.0;   ///< fraction left in E at x = L
};

/// Deviation of a forward trajectory from the eigen-branch connected to its
/// initial state, measured on the Bloch sphere of the (E_f, O_f) pair.
/// Throws DomainError on a zero-norm sample or an empty trajectory.
AdiabaticTrace deviation_angle(const std::vector<TrajectorySample>& trajectory,
                               const SignalCoupling& sc);

struct GeometricEstimate {
    std::complex<double> theta_l;  ///< first-order residual angle
    double excitation = 0.0;       ///< |theta_l|^2 / 4, probability of leaving the branch
    double p_residual = 0.0;       ///< estimated fraction left in E at x = L
    double isolation_db = 0.0;     ///< -10 log10(p_residual)
    double rotation_bound = 0.0;   ///< entry jump plus the integral of |d theta_adi/dx|
    std::size_t panels = 0;
};

struct QuadratureOptions {
    /// Panel width cap in cells; the default is min(1, 2 pi / (20 g_max)).
    double max_step = 0.0;
    double rel_tol = 1e-2;
    /// Changes below this magnitude [rad] never count as non-convergence.
    double abs_floor = 1e-6;
};

/// Residual angle of adiabatic following,
///   theta_L = -int_0^L theta_adi'(x) exp(-i int_0^x g) dx,
/// plus the sudden-rotation term when the coupling is already on at x = 0.
/// Evaluated by composite trapezoid with the inner phase accumulated on the
/// same grid; throws QuadratureError if halving the panel width changes the
/// result by more than rel_tol.
GeometricEstimate geometric_estimate(const SignalCoupling& sc, const QuadratureOptions& opts = {});

} // namespace adiso
