#pragma once

#include "adiso/pump.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace adiso {

using Complex = std::complex<double>;

/// Wave amplitudes in photon-flux normalisation: |.|^2 is proportional to the
/// photon number carried by each wave.
struct StateVector {
    Complex e_f{0.0, 0.0};
    Complex o_f{0.0, 0.0};
    Complex e_b{0.0, 0.0};
    Complex o_b{0.0, 0.0};

    double forward_power() const { return std::norm(e_f) + std::norm(o_f); }
    double backward_power() const { return std::norm(e_b) + std::norm(o_b); }

    Eigen::Vector4cd to_vector() const { return {e_f, o_f, e_b, o_b}; }
    static StateVector from_vector(const Eigen::Vector4cd& v) { return {v(0), v(1), v(2), v(3)}; }
};

enum class ModelKind {
    Simple2x2Forward,   ///< forward (E_f, O_f) pair only
    Simple2x2Backward,  ///< backward (E_b, O_b) pair only
    Rwa4x4,             ///< both pairs, decoupled by the spatial RWA
    Full4x4,            ///< forward and backward pairs coupled by fast off-block terms
};

std::string_view to_string(ModelKind kind);
/// Accepts "simple", "rwa", "full" and the enumerator spellings.
std::optional<ModelKind> parse_model_kind(std::string_view name);

/// Number of amplitudes the model evolves (2 or 4).
int dimension(ModelKind kind);

/// Controls for the adaptive Dormand-Prince integrator.
struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    /// Explicit step cap in cells; 0 selects min(1, 1/20 of the fastest period).
    double max_step = 0.0;
    /// Multiplies the step cap. 0.5 halves it for convergence checks.
    double max_step_scale = 1.0;
    /// Allowed drift of the conserved (pseudo-)norm before failing.
    double norm_tolerance = 1e-6;
    std::size_t max_steps = 50'000'000;
};

/// Step cap used for `kind` at this signal frequency.
double max_step_for(ModelKind kind, const SignalCoupling& sc, const IntegratorOptions& opts = {});

/// Coupled-mode generator M(x) in the rotating frame, so that dU/dx = M U.
/// Returns 2x2 for the simple models and 4x4 otherwise, ordered
/// (E_f, O_f, E_b, O_b) restricted to the model's amplitudes.
Eigen::MatrixXcd dynamical_matrix(ModelKind kind, const SignalCoupling& sc, double x);

Eigen::MatrixXcd dynamical_matrix(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                                  double omega_e, double x,
                                  Dispersion dispersion = Dispersion::Exact);

struct TrajectorySample {
    double x = 0.0;
    StateVector state;
};

struct Propagation {
    StateVector final_state;
    std::vector<TrajectorySample> trajectory;  ///< empty unless a stride was requested
    std::size_t steps = 0;
};

/// Integrates dU/dx = M(x) U from x = 0 to x = L.
///
/// The amplitudes the model does not evolve are passed through unchanged.
/// With `stride` > 0 the state is recorded at x = 0, stride, 2 stride, ...
/// and at x = L.
Propagation propagate(ModelKind kind, const SignalCoupling& sc, const StateVector& initial,
                      double stride = 0.0, const IntegratorOptions& opts = {});

Propagation propagate(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                      double omega_e, const StateVector& initial, double stride = 0.0,
                      const IntegratorOptions& opts = {},
                      Dispersion dispersion = Dispersion::Exact);

/// Propagator from x = 0 to x = L, in the rotating frame.
struct TransferMatrix {
    Eigen::MatrixXcd matrix;  ///< 2x2 or 4x4, same ordering as dynamical_matrix
    ModelKind model = ModelKind::Rwa4x4;
    double omega_e = 0.0;
    std::size_t steps = 0;

    /// Embeds a 2x2 simple-model matrix into the 4x4 (E_f, O_f, E_b, O_b) basis,
    /// with the identity on the amplitudes the model does not evolve.
    Eigen::Matrix4cd full() const;
};

TransferMatrix transfer_matrix(ModelKind kind, const SignalCoupling& sc,
                               const IntegratorOptions& opts = {});

TransferMatrix transfer_matrix(ModelKind kind, const PumpProfile& profile, const ModePair& modes,
                               double omega_e, const IntegratorOptions& opts = {},
                               Dispersion dispersion = Dispersion::Exact);

enum class Drive {
    ForwardE,   ///< unit E wave entering at x = 0
    BackwardE,  ///< unit E wave entering at x = L
};

/// Amplitudes at both ends once the boundary conditions are imposed.
struct ScatteringSolution {
    StateVector at_start;  ///< x = 0
    StateVector at_end;    ///< x = L
};

/// Imposes the incoming amplitudes of `drive` (the other incoming waves are
/// zero) and solves for the outgoing ones. Throws ScatteringError when the
/// boundary system has condition number above 1e12, DomainError when the
/// model has no amplitudes in the driven direction.
ScatteringSolution scattering_solve(const TransferMatrix& tm, Drive drive);

} // namespace adiso
