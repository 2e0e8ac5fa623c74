#include <adiso/error.hpp>
#include <adiso/metrics.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace adiso;

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

const ModePair& modes()
{
    static const ModePair m = derive_modes(CircuitParams{});
    return m;
}

PumpProfile operating_point(double length = 2000.0)
{
    PumpProfile p;
    p.length = length;
    p.omega_p = two_pi * 2e9;
    p.k_center = default_k_center(modes(), p.omega_p, two_pi * 6e9);
    return p;
}

SweepResult synthetic(const std::vector<std::pair<double, double>>& pts)
{
    SweepResult r;
    for (const auto& [f, iso] : pts) {
        SweepRow row;
        row.f_hz = f;
        row.isolation_db = iso;
        r.rows.push_back(row);
    }
    return r;
}

} // namespace

TEST_CASE("dielectric loss")
{
    const double w = two_pi * 6e9;
    CHECK(dielectric_loss_db(modes(), w, Mode::Even, 2000, LossModel{0.0}) == 0.0);
    const double one = dielectric_loss_db(modes(), w, Mode::Even, 2000, LossModel{1e-5}, Dispersion::Linear);
    CHECK(one == doctest::Approx(0.0131).epsilon(1e-2));
    CHECK(dielectric_loss_db(modes(), w, Mode::Even, 4000, LossModel{1e-5}) ==
          2.0 * dielectric_loss_db(modes(), w, Mode::Even, 2000, LossModel{1e-5}));
    const double a = dielectric_loss_db(modes(), w, Mode::Odd, 700, LossModel{1e-5});
    const double b = dielectric_loss_db(modes(), w, Mode::Odd, 1300, LossModel{1e-5});
    CHECK(a + b == doctest::Approx(dielectric_loss_db(modes(), w, Mode::Odd, 2000, LossModel{1e-5})).epsilon(1e-14));
    CHECK_THROWS_AS(dielectric_loss_db(modes(), w, Mode::Even, 1, LossModel{-1.0}), ParameterError);
}

TEST_CASE("frequency grid")
{
    const auto f = frequency_grid(4e9, 8e9, 201);
    CHECK(f.size() == 201);
    CHECK(f.front() == 4e9);
    CHECK(f.back() == 8e9);
    CHECK(f[100] == doctest::Approx(6e9));
    CHECK_THROWS_AS(frequency_grid(4e9, 8e9, 1), ParameterError);
    CHECK_THROWS_AS(frequency_grid(8e9, 4e9, 10), ParameterError);
}

TEST_CASE("bandwidth interpolates the crossings")
{
    CHECK(bandwidth(synthetic({{1, 30}, {2, 30}, {3, 30}}), 20) == 2.0);
    CHECK(bandwidth(synthetic({{1, 0}, {2, 5}}), 20) == 0.0);
    // Crossings at 1.5 and 3.75.
    CHECK(bandwidth(synthetic({{1, 10}, {2, 30}, {3, 30}, {4, 10}}), 20) == doctest::Approx(2.0));
    const auto band = isolation_band(synthetic({{1, 10}, {2, 30}, {3, 30}, {4, 10}}), 20);
    REQUIRE(band);
    CHECK(band->f_low == doctest::Approx(1.5));
    CHECK(band->f_high == doctest::Approx(3.5));
    // The widest of two separate bands wins.
    CHECK(bandwidth(synthetic({{1, 30}, {2, 0}, {3, 30}, {4, 30}, {5, 30}}), 20) == doctest::Approx(7.0 / 3.0));
}

TEST_CASE("bandwidth never grows with the threshold")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> iso(0.0, 40.0);
    for (int k = 0; k < 50; ++k) {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < 30; ++i)
            pts.emplace_back(i, iso(rng));
        const auto r = synthetic(pts);
        double prev = INFINITY;
        for (double t = 0; t <= 40; t += 2.5) {
            const double bw = bandwidth(r, t);
            CHECK(bw <= prev + 1e-12);
            prev = bw;
        }
    }
}

TEST_CASE("sweep rows are ordered and consistent")
{
    const PumpProfile p = operating_point(800.0);
    SweepOptions opts;
    opts.threads = 3;
    const auto r = frequency_sweep(ModelKind::Rwa4x4, p, modes(), LossModel{}, {7e9, 5e9, 6e9, 4e9}, opts);
    REQUIRE(r.rows.size() == 4);
    for (std::size_t i = 1; i < r.rows.size(); ++i)
        CHECK(r.rows[i].f_hz > r.rows[i - 1].f_hz);
    for (const auto& row : r.rows) {
        CHECK(row.isolation_db >= 0.0);
        CHECK(row.isolation_db == doctest::Approx(-10.0 * std::log10(row.forward_residual)));
        CHECK(row.insertion_loss_db >= -row.backward_transmission_db);
        CHECK(-row.backward_transmission_db >= -1e-12);
    }

    opts.threads = 1;
    const auto serial = frequency_sweep(ModelKind::Rwa4x4, p, modes(), LossModel{}, {4e9, 5e9, 6e9, 7e9}, opts);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(serial.rows[i].isolation_db == r.rows[i].isolation_db);
}

TEST_CASE("pump off: no isolation, only dielectric loss")
{
    PumpProfile p = operating_point(1000.0);
    p.m0 = 0.0;
    const LossModel loss{1e-5};
    for (const auto kind : {ModelKind::Simple2x2Forward, ModelKind::Rwa4x4, ModelKind::Full4x4}) {
        const auto r = frequency_sweep(kind, p, modes(), loss, 4e9, 8e9, 5);
        for (const auto& row : r.rows) {
            CHECK(row.isolation_db == doctest::Approx(0.0).epsilon(1e-12));
            const double d = dielectric_loss_db(modes(), two_pi * row.f_hz, Mode::Even, 1000, loss);
            CHECK(row.insertion_loss_db == doctest::Approx(d).epsilon(1e-9));
        }
    }
}

TEST_CASE("forward power is conserved at unit drive")
{
    const PumpProfile p = operating_point();
    for (const double f : {4.2e9, 6e9, 7.9e9}) {
        const SignalCoupling sc(p, modes(), two_pi * f);
        const auto s = scattering_solve(transfer_matrix(ModelKind::Rwa4x4, sc), Drive::ForwardE);
        CHECK(std::norm(s.at_end.e_f) + std::norm(s.at_end.o_f) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("spectrum has no jumps on a dense grid")
{
    // Interference nulls deeper than 40 dB are real and narrow; clip them.
    const auto r = frequency_sweep(ModelKind::Rwa4x4, operating_point(800.0), modes(), LossModel{}, 4e9, 8e9, 201);
    auto clip = [](double db) { return std::min(db, 40.0); };
    for (std::size_t i = 1; i < r.rows.size(); ++i) {
        CHECK(std::abs(clip(r.rows[i].isolation_db) - clip(r.rows[i - 1].isolation_db)) < 10.0);
        CHECK(std::abs(r.rows[i].insertion_loss_db - r.rows[i - 1].insertion_loss_db) < 10.0);
    }
}

TEST_CASE("sweep failures name the frequency")
{
    // 60 GHz is above the even-mode plasma frequency.
    try {
        frequency_sweep(ModelKind::Rwa4x4, operating_point(200.0), modes(), LossModel{}, {5e9, 60e9}, {});
        FAIL("expected a sweep error");
    } catch (const SweepError& e) {
        CHECK(e.frequency_hz() == 60e9);
    }
}

TEST_CASE("length sweep")
{
    const auto grid = frequency_grid(3e9, 9e9, 61);
    const auto one = length_sweep(ModelKind::Rwa4x4, operating_point(), modes(), LossModel{}, {800.0}, grid, 20.0);
    CHECK(one.size() == 1);
    const auto rows = length_sweep(ModelKind::Rwa4x4, operating_point(), modes(), LossModel{}, {800.0, 2000.0}, grid, 20.0);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].bandwidth_hz > rows[0].bandwidth_hz);
    CHECK(rows[0].f_low < 6e9);
    CHECK(rows[0].f_high > 6e9);
    CHECK_THROWS_AS(length_sweep(ModelKind::Rwa4x4, operating_point(), modes(), LossModel{}, {-5.0}, grid, 20.0),
                    ParameterError);
}

TEST_CASE("RWA comparison")
{
    const auto grid = frequency_grid(4e9, 8e9, 9);
    PumpProfile off = operating_point(500.0);
    off.m0 = 0.0;
    const auto same = rwa_comparison(off, modes(), LossModel{}, grid);
    CHECK(same.max_abs_delta_isolation_db < 1e-9);
    CHECK(same.max_abs_delta_backward_db < 1e-9);

    const auto cmp = rwa_comparison(operating_point(), modes(), LossModel{}, grid);
    CHECK(cmp.delta_isolation_db.size() == 9);
    CHECK(cmp.max_abs_delta_isolation_below_cap_db <= cmp.max_abs_delta_isolation_db);

    PumpProfile strong = operating_point(1000.0);
    strong.m0 = 0.5;
    const auto big = rwa_comparison(strong, modes(), LossModel{}, grid);
    CHECK(big.max_abs_delta_backward_db > cmp.max_abs_delta_backward_db);
}
