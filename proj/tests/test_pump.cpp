#include <adiso/error.hpp>
#include <adiso/pump.hpp>

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace adiso;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

PumpProfile operating_point(const ModePair& modes, Dispersion d = Dispersion::Exact)
{
    PumpProfile p;
    p.omega_p = two_pi * 2e9;
    p.k_center = default_k_center(modes, p.omega_p, two_pi * 6e9, d);
    return p;
}

} // namespace

TEST_CASE("pump wavevector sweep")
{
    PumpProfile p;
    p.k_center = 0.1508;
    p.alpha = 0.05;
    p.length = 2000;
    p.omega_p = two_pi * 2e9;
    CHECK(pump_wavevector(p, 1000) == doctest::Approx(0.1508));
    CHECK(pump_wavevector(p, 0) == doctest::Approx(0.1008));
    CHECK(pump_wavevector(p, 2000) == doctest::Approx(0.2008));
    CHECK_THROWS_AS(pump_wavevector(p, -1.0), DomainError);
    CHECK_THROWS_AS(pump_wavevector(p, 2000.5), DomainError);
}

TEST_CASE("pump phase is the integral of the wavevector")
{
    PumpProfile p;
    p.k_center = 0.15;
    p.omega_p = two_pi * 2e9;
    // Simpson on a fine grid; the integrand is affine so this is exact up to rounding.
    for (const double x : {0.0, 13.0, 700.0, 1000.0, 2000.0}) {
        const int n = 1000;
        const double h = x / n;
        double sum = 0.0;
        for (int i = 0; i <= n; ++i) {
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            sum += w * pump_wavevector(p, i * h);
        }
        CHECK(pump_phase(p, x) == doctest::Approx(sum * h / 3.0).epsilon(1e-12));
    }
}

TEST_CASE("modulation depth endpoints and peak")
{
    PumpProfile p;
    p.omega_p = two_pi * 2e9;
    p.k_center = 0.15;
    CHECK(modulation_depth(p, 0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(modulation_depth(p, p.length) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(modulation_depth(p, p.length / 2) == doctest::Approx(0.1));

    p.ramp = ramp::Quadratic{};
    CHECK(modulation_depth(p, 500) == doctest::Approx(0.075));
    p.ramp = ramp::Constant{};
    CHECK(modulation_depth(p, 0) == doctest::Approx(0.1));
}

TEST_CASE("ramp symmetry and asymmetry")
{
    const double L = 2000;
    for (int i = 0; i <= 100; ++i) {
        const double x = L * i / 100.0;
        CHECK(ramp_value(ramp::Quadratic{}, L, x) == doctest::Approx(ramp_value(ramp::Quadratic{}, L, L - x)));
        CHECK(ramp_value(ramp::GeneralizedGaussian{2.0, 2.0}, L, x) ==
              doctest::Approx(ramp_value(ramp::GeneralizedGaussian{2.0, 2.0}, L, L - x)));
    }
    const ramp::GeneralizedGaussian gg{3.0, 2.0};
    for (int i = 1; i < 100; ++i) {
        const double x = 0.5 * L * i / 100.0;
        CHECK(ramp_value(gg, L, x) > ramp_value(gg, L, L - x));
    }
}

TEST_CASE("ramp values stay in [0, 1] and are continuous at the center")
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> e(1.0, 6.0);
    for (int k = 0; k < 50; ++k) {
        const ramp::GeneralizedGaussian gg{e(rng), e(rng)};
        const double L = 1000;
        for (int i = 0; i <= 200; ++i) {
            const double v = ramp_value(gg, L, L * i / 200.0);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
        CHECK(ramp_value(gg, L, 500.0 - 1e-9) == doctest::Approx(ramp_value(gg, L, 500.0 + 1e-9)).epsilon(1e-9));
    }
}

TEST_CASE("analytic ramp slope matches finite differences")
{
    const double L = 2000;
    const RampShape shapes[] = {ramp::Quadratic{}, ramp::GeneralizedGaussian{3.0, 2.0}, ramp::Constant{}};
    for (const auto& shape : shapes) {
        for (const double x : {1.0, 100.0, 400.0, 999.0, 1001.0, 1500.0, 1999.0}) {
            const double h = 1e-4;
            const double fd = (ramp_value(shape, L, x + h) - ramp_value(shape, L, x - h)) / (2 * h);
            CHECK(ramp_slope(shape, L, x) == doctest::Approx(fd).epsilon(1e-6));
        }
    }
}

TEST_CASE("coupling strength in both forms")
{
    const ModePair modes = derive_modes(CircuitParams{});
    PumpProfile p = operating_point(modes, Dispersion::Linear);
    p.coupling = CouplingForm::WavevectorProduct;
    const double w = two_pi * 6e9;
    CHECK(coupling_strength(p, modes, w, p.length / 2, Dispersion::Linear) == doctest::Approx(0.02133).epsilon(1e-3));
    CHECK(coupling_strength(p, modes, w, 0.0) == doctest::Approx(0.0).epsilon(1e-15));

    // sqrt(w_e w_o / (Z_e Z_o)) L_dc equals sqrt(k_e k_o) with linear dispersion and
    // mode inductances equal to L_dc; the circuit form is its exact version.
    p.coupling = CouplingForm::Circuit;
    const double kc = coupling_strength(p, modes, w, p.length / 2);
    const double by_hand = std::sqrt(w * (w + p.omega_p) / (50.0 * 50.0)) * 250e-12 * 0.1;
    CHECK(kc == doctest::Approx(by_hand).epsilon(1e-10));

    p.m0 = 0.0;
    for (const double x : {0.0, 500.0, 1000.0, 2000.0})
        CHECK(coupling_strength(p, modes, w, x) == 0.0);
}

TEST_CASE("fixed coupling ignores frequency")
{
    const ModePair modes = derive_modes(CircuitParams{});
    PumpProfile p = operating_point(modes);
    p.kappa_fixed = 0.02;
    p.ramp = ramp::Constant{};
    for (const double f : {4e9, 6e9, 8e9})
        CHECK(coupling_strength(p, modes, two_pi * f, 100.0) == doctest::Approx(0.02));
}

TEST_CASE("mismatch at the center frequency")
{
    const ModePair modes = derive_modes(CircuitParams{});
    const PumpProfile p = operating_point(modes, Dispersion::Linear);
    const double w = two_pi * 6e9;
    CHECK(p.k_center == doctest::Approx(0.15080).epsilon(1e-4));

    const auto mid = mismatch(p, modes, w, p.length / 2, Dispersion::Linear);
    CHECK(mid.dk_f == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(mismatch(p, modes, w, 0.0, Dispersion::Linear).dk_f == doctest::Approx(p.alpha));
    CHECK(mismatch(p, modes, w, p.length, Dispersion::Linear).dk_f == doctest::Approx(-p.alpha));

    for (int i = 0; i <= 20; ++i) {
        const double x = p.length * i / 20.0;
        const auto s = mismatch(p, modes, w, x, Dispersion::Linear);
        CHECK(s.dk_b == doctest::Approx(s.dk_f + 2.0 * pump_wavevector(p, x)));
        CHECK(std::abs(s.dk_b) >= std::abs(s.dk_f));
    }
}

TEST_CASE("forward mismatch is affine with slope -2 alpha / L")
{
    const ModePair modes = derive_modes(CircuitParams{});
    const PumpProfile p = operating_point(modes, Dispersion::Linear);
    const SignalCoupling sc(p, modes, two_pi * 5e9, Dispersion::Linear);
    for (int i = 0; i < 20; ++i) {
        const double x0 = 100.0 * i;
        CHECK((sc.dk_f(x0 + 100.0) - sc.dk_f(x0)) / 100.0 == doctest::Approx(-2.0 * p.alpha / p.length));
    }
    CHECK(sc.dk_f_slope() == -2.0 * p.alpha / p.length);
}

TEST_CASE("mismatch phases integrate the mismatches")
{
    const ModePair modes = derive_modes(CircuitParams{});
    const PumpProfile p = operating_point(modes);
    const SignalCoupling sc(p, modes, two_pi * 7e9);
    for (const double x : {0.0, 250.0, 1234.5, 2000.0}) {
        const double trapezoid_exact = 0.5 * x * (sc.dk_f(0.0) + sc.dk_f(x));
        CHECK(sc.forward_phase(x) == doctest::Approx(trapezoid_exact).epsilon(1e-12));
        CHECK(sc.backward_phase(x) == doctest::Approx(0.5 * x * (sc.dk_b(0.0) + sc.dk_b(x))).epsilon(1e-12));
    }
}

TEST_CASE("default pump wavevector")
{
    const ModePair modes = derive_modes(CircuitParams{});
    CHECK(default_k_center(modes, two_pi * 2e9, two_pi * 6e9) > 0.15080);
    CircuitParams sym;
    sym.lm = 0.0;
    sym.cm = 0.0;
    CHECK(default_k_center(derive_modes(sym), 0.0, two_pi * 6e9) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("profile validation")
{
    PumpProfile p;
    p.omega_p = two_pi * 2e9;
    p.k_center = 0.15;
    CHECK_NOTHROW(validate(p));
    auto bad = p;
    bad.length = 1.0;
    CHECK_THROWS_AS(validate(bad), ParameterError);
    bad = p;
    bad.alpha = -0.1;
    CHECK_THROWS_AS(validate(bad), ParameterError);
    bad = p;
    bad.omega_p = 0.0;
    CHECK_THROWS_AS(validate(bad), ParameterError);
    bad = p;
    bad.k_center = 0.04;
    CHECK_THROWS_AS(validate(bad), ParameterError);
    bad = p;
    bad.ramp = ramp::GeneralizedGaussian{0.5, 2.0};
    CHECK_THROWS_AS(validate(bad), ParameterError);
}
