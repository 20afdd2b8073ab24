#pragma once

#include <string>

#include "mkg/gauge.hpp"

namespace mkg {

/// One row of run diagnostics.
struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;
    double charge = 0.0;
    double lorenz_res = 0.0; ///< L2 of dtA0 - div A
    double gauss_res = 0.0;  ///< L2 of div E - rho
    double divB_res = 0.0;
    double phi_l2 = 0.0;
    double phi_h1 = 0.0;
    double A_norm = 0.0;
    double max_field = 0.0;
};

std::string csv_header();
std::string csv_row(const DiagnosticsRecord& r);

/// B = curl A, E = grad A0 - dA/dt. The zero mode of B vanishes; the zero
/// mode of E is -mean(dA/dt).
std::pair<VectorField3, VectorField3> em_fields(const std::array<ScalarField, 4>& A,
                                                const std::array<ScalarField, 4>& dtA);

/// Charge and current densities of the covariantly coupled field,
///   rho = Im(phi conj(dtphi)) + |phi|^2 A0,
///   J   = -Im(phi conj(grad phi)) - |phi|^2 A,
/// i.e. the raised components of Im(conj(phi) D phi), the combination whose
/// exchange with the field energy balances exactly.
/// Products are dealiased; outputs are real space fields.
std::pair<ScalarField, VectorField3> current(const ScalarField& phi, const ScalarField& dtphi,
                                             const std::array<ScalarField, 4>& A);

/// Total energy: 1/2 Int(|(dt - iA0)phi|^2 + |(grad - iA)phi|^2 + m^2|phi|^2
/// + |E|^2 + |B|^2), grid-sum quadrature.
double energy(const FieldTuple& f, double m);
double energy(const HalfWaveState& s);

/// Energy of the data quadruple, with U = (phi1, grad phi0 - i phi0 a).
double initial_energy(const CauchyData& cd, const PotentialData& pd);

/// Full diagnostics of a state (energy, charge, constraint residuals, norms).
DiagnosticsRecord constraint_residuals(const HalfWaveState& s);

} // namespace mkg
