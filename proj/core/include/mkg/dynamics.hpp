#pragma once

#include <functional>
#include <vector>

#include "mkg/gauge.hpp"

namespace mkg {

enum class NonlinearityForm { Decomposed, Direct };

struct IntegratorConfig {
    double dt = 1e-2;
    enum class Scheme { LawsonRK4 } scheme = Scheme::LawsonRK4;
    NonlinearityForm form = NonlinearityForm::Decomposed;
};

/// Source terms of the first-order system at one instant. mean_J carries the
/// forcing of the zero-mode registers: d/dt(mean dA_mu/dt) = mean(J_mu).
struct NonlinearityOutput {
    ScalarField M;                 ///< scalar-equation source, spectral, dealiased
    std::array<ScalarField, 4> N;  ///< potential-equation sources, spectral, dealiased
    std::array<double, 4> mean_J{};
};

/// Null-form bilinear on scalar fields:
///   f <grad>_m g + |grad|^{-1} grad(s1 f) . grad(s2 g),
/// computed pseudo-spectrally with dealiased binary products.
ScalarField null_form_A(const ScalarField& f, const ScalarField& g, int s1, int s2, double m);

/// The advection null form assembled from the half-wave pair of A0 and phi:
/// P1 = -i Sum_{s1,s2} s2 * null_form_A(A0_{s1}, phi_{s2}).
ScalarField P1_decomposed(const ScalarField& A0p, const ScalarField& A0m,
                          const ScalarField& phip, const ScalarField& phim, double m);

/// Reference evaluation -A0 dtphi + Laplace^{-1} grad(dtA0) . grad(phi).
ScalarField P1_direct(const ScalarField& A0, const ScalarField& dtA0, const ScalarField& phi,
                      const ScalarField& dtphi);

/// The magnetic null form Sum_l (grad w_l x grad phi)_l with w = Laplace^{-1} curl A;
/// equals (divergence-free part of A) . grad phi.
ScalarField P2_null_form(const VectorField3& A, const ScalarField& phi);

/// Direct covariant advection -A0 dtphi + A . grad phi (dealiased products).
ScalarField advection_direct(const std::array<ScalarField, 4>& A, const ScalarField& phi,
                             const ScalarField& dtphi);

/// Source of the scalar-field equation. Both forms include the cubic term
/// with metric signature (-,+,+,+) and the zero-mode register couplings.
ScalarField assemble_M(const HalfWaveState& s, NonlinearityForm form);
/// Sources of the four potential equations.
std::array<ScalarField, 4> assemble_N(const HalfWaveState& s);

NonlinearityOutput assemble_nonlinearity(const HalfWaveState& s, NonlinearityForm form);

/// Time derivative of every state component.
struct StateDeriv {
    ScalarField phi_p, phi_m;
    std::array<ScalarField, 4> A_p, A_m;
    std::array<double, 4> zmode_A{}, zmode_dA{};
};

StateDeriv rhs(const HalfWaveState& s, NonlinearityForm form);

/// One integrating-factor RK4 step: the linear half-wave phases are applied
/// exactly, classical RK4 handles the transformed nonlinearity and the
/// zero-mode registers. With zero sources the step is an exact phase rotation.
/// Throws BlowUpError on non-finite values.
HalfWaveState step(const HalfWaveState& s, const IntegratorConfig& cfg);

using DiagnosticsCallback = std::function<void(const HalfWaveState&)>;

struct EvolveResult {
    HalfWaveState state;
    /// Gauge waves applied at re-gauge checkpoints, with their launch times.
    std::vector<std::pair<double, GaugeWave>> gauges;
};

/// Advances to t = T (last step shortened), invoking the callback at the
/// start, every `cadence` steps, and at the end. At each time in regauge_at
/// the state is gauge-transformed back to the normalized gauge and the
/// generator recorded. Norm growth beyond 1e6 x initial throws BlowUpError.
EvolveResult evolve(const HalfWaveState& s0, double T, const IntegratorConfig& cfg,
                    const DiagnosticsCallback& cb = {}, int cadence = 1,
                    std::vector<double> regauge_at = {});

} // namespace mkg
