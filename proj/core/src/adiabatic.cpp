#include "adiso/adiabatic.hpp"

#include "adiso/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace adiso {

namespace {

constexpr double kPi = std::numbers::pi;

struct Quadrature {
    std::complex<double> integral;
    double abs_integral = 0.0;
};

// -int theta' exp(-i phi) dx on n equal panels, phi accumulated by trapezoid.
Quadrature trapezoid(const SignalCoupling& sc, std::size_t n)
{
    const double h = sc.length() / static_cast<double>(n);
    Quadrature q;
    double phase = 0.0;
    double g_prev = splitting(sc, 0.0);
    double slope_prev = mixing_angle_slope(sc, 0.0);
    std::complex<double> f_prev = slope_prev;

    for (std::size_t i = 1; i <= n; ++i) {
        const double x = i == n ? sc.length() : static_cast<double>(i) * h;
        const double g = splitting(sc, x);
        const double slope = mixing_angle_slope(sc, x);
        phase += 0.5 * h * (g_prev + g);
        const std::complex<double> f = slope * std::polar(1.0, -phase);
        q.integral += 0.5 * h * (f_prev + f);
        q.abs_integral += 0.5 * h * (std::abs(slope_prev) + std::abs(slope));
        f_prev = f;
        g_prev = g;
        slope_prev = slope;
    }
    q.integral = -q.integral;
    return q;
}

} // namespace

double mixing_angle(const SignalCoupling& sc, double x)
{
    return std::atan2(sc.kappa(x), sc.dk_f(x));
}

double mixing_angle(const PumpProfile& p, const ModePair& modes, double omega_e, double x,
                    Dispersion dispersion)
{
    if (!(x >= 0.0 && x <= p.length))
        throw DomainError("mixing_angle: position outside the device");
    return mixing_angle(SignalCoupling(p, modes, omega_e, dispersion), x);
}

double mixing_angle_slope(const SignalCoupling& sc, double x)
{
    const double kappa = sc.kappa(x);
    const double dk = sc.dk_f(x);
    const double g2 = kappa * kappa + dk * dk;
    if (g2 == 0.0)
        return 0.0;
    return (sc.kappa_slope(x) * dk - kappa * sc.dk_f_slope()) / g2;
}

double splitting(const SignalCoupling& sc, double x)
{
    return std::hypot(sc.kappa(x), sc.dk_f(x));
}

AdiabaticTrace deviation_angle(const std::vector<TrajectorySample>& trajectory, const SignalCoupling& sc)
{
    if (trajectory.empty())
        throw DomainError("deviation_angle: empty trajectory");

    AdiabaticTrace trace;
    trace.samples.reserve(trajectory.size());

    // +1 when the initial state sits on the +n branch, -1 for the other one.
    double branch = 0.0;
    for (const auto& sample : trajectory) {
        const Complex e = sample.state.e_f;
        const Complex o = sample.state.o_f;
        const double norm = std::norm(e) + std::norm(o);
        if (!(norm > 0.0))
            throw DomainError("deviation_angle: zero-norm state at x = " + std::to_string(sample.x));

        const Complex eo = std::conj(e) * o;
        const double sx = 2.0 * eo.real() / norm;
        const double sz = (std::norm(e) - std::norm(o)) / norm;

        const double theta = mixing_angle(sc, sample.x);
        const double nx = -std::sin(theta);
        const double nz = std::cos(theta);
        double dot = sx * nx + sz * nz;
        if (branch == 0.0)
            branch = dot >= 0.0 ? 1.0 : -1.0;
        dot = std::clamp(branch * dot, -1.0, 1.0);

        trace.samples.push_back({sample.x, theta, std::acos(dot), splitting(sc, sample.x)});
    }

    const auto& last = trajectory.back().state;
    trace.theta_final = trace.samples.back().theta_dev;
    trace.p_residual = std::norm(last.e_f) / (std::norm(last.e_f) + std::norm(last.o_f));
    return trace;
}

GeometricEstimate geometric_estimate(const SignalCoupling& sc, const QuadratureOptions& opts)
{
    double step = opts.max_step;
    if (step <= 0.0) {
        const double g_max = std::hypot(sc.kappa_peak(), sc.max_abs_dk_f());
        step = g_max > 0.0 ? std::min(1.0, 2.0 * kPi / (20.0 * g_max)) : 1.0;
    }
    const auto n = static_cast<std::size_t>(std::ceil(sc.length() / step));

    const Quadrature coarse = trapezoid(sc, n);
    const Quadrature fine = trapezoid(sc, 2 * n);
    const double change = std::abs(fine.integral - coarse.integral);
    if (change > opts.rel_tol * std::abs(fine.integral) && change > opts.abs_floor)
        throw QuadratureError("geometric estimate did not converge: step halving changed the result by " +
                              std::to_string(change));

    // The input E sits on the eigen-axis theta = 0; if the coupling is already
    // on at x = 0 the eigen-axis starts elsewhere, a sudden rotation.
    const double theta0 = mixing_angle(sc, 0.0);
    const double branch = theta0 <= 0.5 * kPi ? 1.0 : -1.0;
    const double jump = branch > 0.0 ? theta0 : theta0 - kPi;

    GeometricEstimate out;
    out.theta_l = fine.integral - jump;
    out.panels = 2 * n;
    out.rotation_bound = std::abs(jump) + fine.abs_integral;
    out.excitation = std::min(1.0, std::norm(out.theta_l) / 4.0);

    // E content of the followed branch at x = L, and of the other branch.
    const double cos_end = std::cos(mixing_angle(sc, sc.length()));
    const double stay = 0.5 * (1.0 + branch * cos_end);
    out.p_residual = (1.0 - out.excitation) * stay + out.excitation * (1.0 - stay);
    out.isolation_db = out.p_residual > 0.0 ? -10.0 * std::log10(out.p_residual)
                                            : std::numeric_limits<double>::infinity();
    return out;
}

} // namespace adiso
