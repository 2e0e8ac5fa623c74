#include "adiso/dynamics.hpp"

#include "adiso/error.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace adiso {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr Complex kI{0.0, 1.0};

// Amplitude indices, in (E_f, O_f, E_b, O_b) order, evolved by each model.
std::vector<int> evolved_indices(ModelKind kind)
{
    switch (kind) {
    case ModelKind::Simple2x2Forward:
        return {0, 1};
    case ModelKind::Simple2x2Backward:
        return {2, 3};
    case ModelKind::Rwa4x4:
    case ModelKind::Full4x4:
        break;
    }
    return {0, 1, 2, 3};
}

bool has_forward(ModelKind kind) { return kind != ModelKind::Simple2x2Backward; }
bool has_backward(ModelKind kind) { return kind != ModelKind::Simple2x2Forward; }

// Generator in the rotating frame, always embedded in the 4x4 basis.
Eigen::Matrix4cd rotating_generator(ModelKind kind, const SignalCoupling& sc, double x)
{
    const double kappa = sc.kappa(x);
    const Complex half_kappa = 0.5 * kappa * kI;
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();

    if (has_forward(kind)) {
        const double df = sc.dk_f(x);
        m(0, 0) = -0.5 * df * kI;
        m(0, 1) = half_kappa;
        m(1, 0) = half_kappa;
        m(1, 1) = 0.5 * df * kI;
    }
    if (has_backward(kind)) {
        const double db = sc.dk_b(x);
        m(2, 2) = 0.5 * db * kI;
        m(2, 3) = half_kappa;
        m(3, 2) = half_kappa;
        m(3, 3) = -0.5 * db * kI;
    }
    if (kind == ModelKind::Full4x4) {
        // Counter-propagating pairs beat at k_o + k_e in this frame. The
        // cross couplings change sign between directions, which keeps
        // |fwd|^2 - |bwd|^2 conserved.
        const Complex beat = std::polar(1.0, -(sc.k_o() + sc.k_e()) * x);
        m(0, 3) = half_kappa * beat;
        m(1, 2) = -half_kappa * beat;
        m(2, 1) = half_kappa * std::conj(beat);
        m(3, 0) = -half_kappa * std::conj(beat);
    }
    return m;
}

// Rotating-frame phases: the diagonal of the generator integrated over [0, x].
Eigen::Vector4cd frame_phases(const SignalCoupling& sc, double x)
{
    const double pf = sc.forward_phase(x);
    const double pb = sc.backward_phase(x);
    return {std::polar(1.0, -0.5 * pf), std::polar(1.0, 0.5 * pf), std::polar(1.0, 0.5 * pb),
            std::polar(1.0, -0.5 * pb)};
}

// Off-diagonal generator seen from the rotating frame's diagonal evolution.
// With V = D(x)^-1 U, dV/dx = D^-1 C D V where C is the off-diagonal part.
Eigen::Matrix4cd interaction_generator(ModelKind kind, const SignalCoupling& sc, double x)
{
    Eigen::Matrix4cd m = rotating_generator(kind, sc, x);
    const Eigen::Vector4cd d = frame_phases(sc, x);
    for (int j = 0; j < 4; ++j) {
        m(j, j) = 0.0;
        for (int k = 0; k < 4; ++k) {
            if (k != j && m(j, k) != Complex{})
                m(j, k) *= d(k) * std::conj(d(j));
        }
    }
    return m;
}

// Metric of the conserved form V^H G V: identity for the decoupled models,
// diag(1, 1, -1, -1) when counter-propagating waves are coupled.
template <int N>
Eigen::Matrix<double, N, 1> conserved_metric(ModelKind kind)
{
    Eigen::Matrix<double, N, 1> g = Eigen::Matrix<double, N, 1>::Ones();
    if constexpr (N == 4) {
        if (kind == ModelKind::Full4x4) {
            g(2) = -1.0;
            g(3) = -1.0;
        }
    }
    return g;
}

template <int N, int K>
class Integrator {
public:
    using Block = Eigen::Matrix<Complex, N, K>;
    using Gen = Eigen::Matrix<Complex, N, N>;
    using State = std::array<double, 2 * N * K>;

    Integrator(ModelKind kind, const SignalCoupling& sc, const IntegratorOptions& opts)
        : kind_(kind), sc_(sc), opts_(opts), index_(evolved_indices(kind)),
          cap_(max_step_for(kind, sc, opts)),
          stepper_(odeint::make_controlled(opts.abs_tol, opts.rel_tol,
                                           odeint::runge_kutta_dopri5<State>()))
    {
    }

    void load(const Block& v) { std::copy_n(reinterpret_cast<const double*>(v.data()), state_.size(), state_.begin()); }

    Block value() const
    {
        Block v;
        std::copy_n(state_.begin(), state_.size(), reinterpret_cast<double*>(v.data()));
        return v;
    }

    double position() const { return x_; }
    std::size_t steps() const { return steps_; }

    void advance_to(double x_end)
    {
        const auto rhs = [this](const State& s, State& ds, double x) {
            Eigen::Map<const Block> v(reinterpret_cast<const Complex*>(s.data()));
            Eigen::Map<Block> dv(reinterpret_cast<Complex*>(ds.data()));
            dv.noalias() = generator(x) * v;
        };

        const double end_tol = 1e-12 * std::max(1.0, std::abs(x_end));
        while (x_end - x_ > end_tol) {
            if (steps_ >= opts_.max_steps)
                throw IntegrationError("integration exceeded the step budget", x_, 0.0);

            double h = std::min({dt_, cap_, x_end - x_});
            const double x_before = x_;
            const auto res = stepper_.try_step(rhs, state_, x_, h);
            if (res == odeint::success) {
                ++steps_;
                dt_ = h;
                if (x_end - x_ <= end_tol)
                    x_ = x_end;
            } else {
                dt_ = h;
                if (!(dt_ > 1e-13 * std::max(1.0, std::abs(x_before))))
                    throw IntegrationError("step-size underflow at x = " + std::to_string(x_before),
                                           x_before, 0.0);
            }
        }
        x_ = x_end;
    }

    // Rotating-frame amplitudes for the current interaction-picture state.
    Block rotating_value() const
    {
        Block v = value();
        const Eigen::Vector4cd d = frame_phases(sc_, x_);
        for (int j = 0; j < N; ++j)
            v.row(j) *= d(index_[static_cast<std::size_t>(j)]);
        return v;
    }

    const std::vector<int>& indices() const { return index_; }

private:
    Gen generator(double x) const
    {
        const Eigen::Matrix4cd w = interaction_generator(kind_, sc_, x);
        Gen g;
        for (int j = 0; j < N; ++j)
            for (int k = 0; k < N; ++k)
                g(j, k) = w(index_[static_cast<std::size_t>(j)], index_[static_cast<std::size_t>(k)]);
        return g;
    }

    using Controlled = decltype(odeint::make_controlled(0.0, 0.0, odeint::runge_kutta_dopri5<State>()));

    ModelKind kind_;
    const SignalCoupling& sc_;
    IntegratorOptions opts_;
    std::vector<int> index_;
    double cap_;
    Controlled stepper_;
    State state_{};
    double x_ = 0.0;
    double dt_ = 0.1;
    std::size_t steps_ = 0;
};

template <int N>
Propagation propagate_impl(ModelKind kind, const SignalCoupling& sc, const StateVector& initial,
                           double stride, const IntegratorOptions& opts)
{
    using Vec = Eigen::Matrix<Complex, N, 1>;
    Integrator<N, 1> integ(kind, sc, opts);
    const auto& idx = integ.indices();
    const Eigen::Vector4cd u0 = initial.to_vector();
    if (!u0.allFinite())
        throw DomainError("initial state is not finite");

    Vec v0;
    for (int j = 0; j < N; ++j)
        v0(j) = u0(idx[static_cast<std::size_t>(j)]);
    integ.load(v0);

    auto embed = [&](const Vec& v) {
        Eigen::Vector4cd u = u0;
        for (int j = 0; j < N; ++j)
            u(idx[static_cast<std::size_t>(j)]) = v(j);
        return StateVector::from_vector(u);
    };

    Propagation out;
    const double length = sc.length();
    if (stride > 0.0) {
        out.trajectory.push_back({0.0, initial});
        const auto n = static_cast<std::size_t>(std::floor(length / stride + 1e-9));
        for (std::size_t i = 1; i <= n; ++i) {
            const double x = std::min(length, static_cast<double>(i) * stride);
            integ.advance_to(x);
            out.trajectory.push_back({x, embed(integ.rotating_value())});
        }
        if (out.trajectory.back().x < length) {
            integ.advance_to(length);
            out.trajectory.push_back({length, embed(integ.rotating_value())});
        }
    } else {
        integ.advance_to(length);
    }

    const Vec v_end = integ.value();
    const auto g = conserved_metric<N>(kind);
    double drift = 0.0;
    if (kind == ModelKind::Full4x4) {
        drift = std::abs((v_end.cwiseAbs2().cwiseProduct(g)).sum() - (v0.cwiseAbs2().cwiseProduct(g)).sum());
    } else {
        // Each direction is conserved on its own.
        for (int j = 0; j < N; j += 2) {
            drift = std::max(drift, std::abs(v_end.template segment<2>(j).squaredNorm() -
                                             v0.template segment<2>(j).squaredNorm()));
        }
    }
    const double scale = std::max(1.0, v0.squaredNorm());
    if (drift > opts.norm_tolerance * scale)
        throw IntegrationError("norm drift " + std::to_string(drift) + " beyond tolerance", length, drift);

    out.final_state = embed(integ.rotating_value());
    out.steps = integ.steps();
    return out;
}

template <int N>
TransferMatrix transfer_impl(ModelKind kind, const SignalCoupling& sc, const IntegratorOptions& opts)
{
    using Mat = Eigen::Matrix<Complex, N, N>;
    Integrator<N, N> integ(kind, sc, opts);
    integ.load(Mat::Identity());
    integ.advance_to(sc.length());

    const Mat v = integ.value();
    const auto g = conserved_metric<N>(kind).template cast<Complex>().asDiagonal().toDenseMatrix();
    const double drift = (v.adjoint() * g * v - g).cwiseAbs().maxCoeff();
    if (drift > opts.norm_tolerance)
        throw IntegrationError("transfer matrix lost (pseudo-)unitarity: drift " + std::to_string(drift),
                               sc.length(), drift);

    TransferMatrix tm;
    tm.matrix = integ.rotating_value();
    tm.model = kind;
    tm.omega_e = sc.omega_e();
    tm.steps = integ.steps();
    return tm;
}

double condition_number(const Eigen::Matrix2cd& a)
{
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(a);
    const auto& s = svd.singularValues();
    if (s(1) == 0.0)
        return std::numeric_limits<double>::infinity();
    return s(0) / s(1);
}

} // namespace

std::string_view to_string(ModelKind kind)
{
    switch (kind) {
    case ModelKind::Simple2x2Forward:
        return "simple_forward";
    case ModelKind::Simple2x2Backward:
        return "simple_backward";
    case ModelKind::Rwa4x4:
        return "rwa";
    case ModelKind::Full4x4:
        return "full";
    }
    return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name)
{
    if (name == "simple" || name == "simple_forward" || name == "Simple2x2Forward")
        return ModelKind::Simple2x2Forward;
    if (name == "simple_backward" || name == "Simple2x2Backward")
        return ModelKind::Simple2x2Backward;
    if (name == "rwa" || name == "Rwa4x4")
        return ModelKind::Rwa4x4;
    if (name == "full" || name == "Full4x4")
        return ModelKind::Full4x4;
    return std::nullopt;
}

int dimension(ModelKind kind)
{
    return kind == ModelKind::Simple2x2Forward || kind == ModelKind::Simple2x2Backward ? 2 : 4;
}

double max_step_for(ModelKind kind, const SignalCoupling& sc, const IntegratorOptions& opts)
{
    double cap = opts.max_step;
    if (cap <= 0.0) {
        const double kappa = sc.kappa_peak();
        double rate = 0.0;
        if (has_forward(kind))
            rate = std::max(rate, std::hypot(kappa, sc.max_abs_dk_f()));
        if (has_backward(kind))
            rate = std::max(rate, std::hypot(kappa, sc.max_abs_dk_b()));
        if (kind == ModelKind::Full4x4) {
            const auto& p = sc.profile();
            rate = std::max(rate, sc.k_o() + sc.k_e() + p.k_center + p.alpha + kappa);
        }
        cap = 1.0;
        if (rate > 0.0)
            cap = std::min(cap, 2.0 * std::numbers::pi / (20.0 * rate));
    }
    return cap * opts.max_step_scale;
}

Eigen::MatrixXcd dynamical_matrix(ModelKind kind, const SignalCoupling& sc, double x)
{
    if (!(x >= 0.0 && x <= sc.length()))
        throw DomainError("dynamical_matrix: position outside the device");
    const Eigen::Matrix4cd m = rotating_generator(kind, sc, x);
    const auto idx = evolved_indices(kind);
    const auto n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd out(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index k = 0; k < n; ++k)
            out(j, k) = m(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(k)]);
    return out;
}

Eigen::MatrixXcd dynamical_matrix(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                                  double omega_e, double x, Dispersion dispersion)
{
    return dynamical_matrix(kind, SignalCoupling(profile, modes, omega_e, dispersion), x);
}

Propagation propagate(ModelKind kind, const SignalCoupling& sc, const StateVector& initial,
                      double stride, const IntegratorOptions& opts)
{
    if (dimension(kind) == 2)
        return propagate_impl<2>(kind, sc, initial, stride, opts);
    return propagate_impl<4>(kind, sc, initial, stride, opts);
}

Propagation propagate(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                      double omega_e, const StateVector& initial, double stride,
                      const IntegratorOptions& opts, Dispersion dispersion)
{
    return propagate(kind, SignalCoupling(profile, modes, omega_e, dispersion), initial, stride, opts);
}

Eigen::Matrix4cd TransferMatrix::full() const
{
    if (matrix.rows() == 4)
        return matrix;
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Identity();
    const int offset = model == ModelKind::Simple2x2Backward ? 2 : 0;
    out.block<2, 2>(offset, offset) = matrix;
    return out;
}

TransferMatrix transfer_matrix(ModelKind kind, const SignalCoupling& sc, const IntegratorOptions& opts)
{
    if (dimension(kind) == 2)
        return transfer_impl<2>(kind, sc, opts);
    return transfer_impl<4>(kind, sc, opts);
}

TransferMatrix transfer_matrix(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                               double omega_e, const IntegratorOptions& opts, Dispersion dispersion)
{
    return transfer_matrix(kind, SignalCoupling(profile, modes, omega_e, dispersion), opts);
}

ScatteringSolution scattering_solve(const TransferMatrix& tm, Drive drive)
{
    if (drive == Drive::ForwardE && !has_forward(tm.model))
        throw DomainError("model has no forward amplitudes");
    if (drive == Drive::BackwardE && !has_backward(tm.model))
        throw DomainError("model has no backward amplitudes");

    const Eigen::Matrix4cd t = tm.full();
    Eigen::Vector4cd start = Eigen::Vector4cd::Zero();

    if (tm.model == ModelKind::Simple2x2Forward) {
        start(0) = 1.0;
    } else {
        // Incoming: E_f, O_f at x = 0 and E_b, O_b at x = L. The outgoing
        // backward amplitudes at x = 0 follow from the lower block rows:
        //   T_bf u_f(0) + T_bb u_b(0) = u_b(L).
        const Eigen::Matrix2cd t_bb = t.block<2, 2>(2, 2);
        const double cond = condition_number(t_bb);
        if (!(cond <= 1e12))
            throw ScatteringError("ill-conditioned scattering solve (condition number " +
                                  std::to_string(cond) + ")");

        Eigen::Vector2cd u_f = Eigen::Vector2cd::Zero();
        Eigen::Vector2cd u_b_end = Eigen::Vector2cd::Zero();
        if (drive == Drive::ForwardE)
            u_f(0) = 1.0;
        else
            u_b_end(0) = 1.0;

        const Eigen::Vector2cd rhs = u_b_end - t.block<2, 2>(2, 0) * u_f;
        const Eigen::Vector2cd u_b = t_bb.fullPivLu().solve(rhs);
        start.head<2>() = u_f;
        start.tail<2>() = u_b;
    }

    ScatteringSolution sol;
    sol.at_start = StateVector::from_vector(start);
    sol.at_end = StateVector::from_vector(t * start);
    return sol;
}

} // namespace adiso
