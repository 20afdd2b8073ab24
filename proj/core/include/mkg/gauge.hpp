#pragma once

#include <array>

#include "mkg/grid.hpp"
#include "mkg/multipliers.hpp"

namespace mkg {

/// Physical initial condition: scalar field pair and electromagnetic fields,
/// subject to the compatibility constraints
///   div B0 = 0,   div E0 = Im(phi0 conj(phi1)),   total charge = 0.
struct CauchyData {
    ScalarField phi0;  ///< complex
    ScalarField phi1;  ///< complex
    VectorField3 E0;   ///< real
    VectorField3 B0;   ///< real
    double m = 1.0;    ///< scalar field mass, > 0
};

/// Potential-level data in the normalized initial gauge a0 = da0/dt = 0:
/// a is the divergence-free vector potential with curl a = B0 (up to the
/// zero mode), and da/dt = -E0.
struct PotentialData {
    ScalarField a0;      ///< identically zero by construction
    ScalarField adot0;   ///< identically zero by construction
    VectorField3 a;
    VectorField3 adot;
};

/// The evolved unknowns: half-wave pairs for the scalar field and the four
/// potential components (nonzero modes only, Fourier representation), plus
/// one (mean, d/dt mean) register per potential component. The splitting is
/// singular at frequency zero, so constant modes are carried separately.
struct HalfWaveState {
    GridPtr grid;
    double m = 1.0;
    double t = 0.0;
    ScalarField phi_p, phi_m;
    std::array<ScalarField, 4> A_p, A_m;
    std::array<double, 4> zmode_A{};   ///< mean of A_mu
    std::array<double, 4> zmode_dA{};  ///< mean of dA_mu/dt
};

/// Potential-level fields at one instant (spectral representation).
struct FieldTuple {
    ScalarField phi, dtphi;
    std::array<ScalarField, 4> A, dtA;
};

/// Free solution of the wave equation used as a gauge generator; determined
/// by data (chi0, chi1) at its launch time. The zero mode evolves linearly.
struct GaugeWave {
    ScalarField chi0, chi1; ///< spectral, real

    /// chi and dt chi a time tau after launch.
    std::pair<ScalarField, ScalarField> at(double tau) const;
    GaugeWave negated() const;
};

/// Validates the CauchyData invariants; throws ConstraintError naming the
/// violated integral.
void validate(const CauchyData& cd);

/// Total charge integral Im(phi0 conj(phi1)) summed over the box.
double total_charge(const ScalarField& phi0, const ScalarField& phi1);

/// Completes a divergence-free electric field to the full constrained E0:
/// E0 = E0_df + Laplace^{-1} grad Im(phi0 conj(phi1)). Rejects data with
/// nonzero total charge (incompatible with a periodic box).
VectorField3 complete_electric_data(const ScalarField& phi0, const ScalarField& phi1,
                                    const VectorField3& E0_df);

/// Builds the normalized-gauge potentials: a = -Laplace^{-1} curl B0 with
/// zero mean, da/dt = -E0, a0 = da0/dt = 0.
PotentialData build_potential_data(const CauchyData& cd);

/// Half-wave split of general potential data at time t:
///   phi+- = (phi0 -+ i phi1 / <grad>_m) / 2,
///   A+-   = (a    -+ i adot / |grad|  ) / 2   on nonzero modes,
/// with the means routed to the zero-mode registers. Inputs are dealiased.
HalfWaveState split_from_potentials(const ScalarField& phi0, const ScalarField& phi1,
                                    const std::array<ScalarField, 4>& a,
                                    const std::array<ScalarField, 4>& adot,
                                    double m, double t = 0.0);

/// Split of constraint-compatible Cauchy data in the normalized gauge.
HalfWaveState split_half_waves(const CauchyData& cd, const PotentialData& pd);

/// Inverse of the split: phi = phi+ + phi-, dtphi = i<grad>_m(phi+ - phi-),
/// A = A+ + A- plus register, dtA = i|grad|(A+ - A-) plus register.
FieldTuple reconstruct(const HalfWaveState& s);

/// Applies phi -> e^{i chi} phi, A_mu -> A_mu + d_mu chi to potential-level
/// fields, where (chi, dtchi) solves the wave equation (so dt^2 chi equals
/// Laplace chi). Returns fields in space representation.
FieldTuple gauge_transform(const FieldTuple& in, const ScalarField& chi,
                           const ScalarField& dtchi);

/// Gauge generator that restores the normalized gauge at the current time:
/// Laplace chi0 = -div a (zero mean), chi1 = -a0.
GaugeWave lorenz_normalizing_wave(const FieldTuple& in);

/// Re-splits transformed potential-level fields into a state at time t.
HalfWaveState state_from_tuple(const FieldTuple& in, double m, double t);

} // namespace mkg
