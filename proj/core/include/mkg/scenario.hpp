#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mkg/dynamics.hpp"
#include "mkg/observables.hpp"

namespace mkg {

enum class Preset { DecoupledReal, GaussianPulse, NeutralPair, FromSnapshot };

/// Run configuration parsed from flat "key = value" text with dotted
/// section prefixes (e.g. "grid.n = 32"). '#' starts a comment.
struct ScenarioConfig {
    int n = 16;
    double L = 2.0 * 3.14159265358979323846;
    double m = 1.0;

    double dt = 1e-2;
    double T = 1.0;
    int cadence = 1;

    Preset preset = Preset::DecoupledReal;
    std::string snapshot_in; ///< for Preset::FromSnapshot
    double amplitude = 0.5;
    double width = 1.0;
    std::array<int, 3> mode{1, 0, 0};
    double omega = 1.0;
    std::array<double, 3> velocity{0.0, 0.0, 0.0};
    double em_amplitude = 0.0;
    double charge_imbalance = 0.0;

    NonlinearityForm form = NonlinearityForm::Decomposed;
    std::vector<double> regauge_at;

    std::string csv_path;
    int snapshot_cadence = 0; ///< 0 = never
    std::string snapshot_path;
    std::uint64_t seed = 0;

    IntegratorConfig integrator() const { return IntegratorConfig{dt, IntegratorConfig::Scheme::LawsonRK4, form}; }
};

/// Parses the flat config format; unknown keys and malformed values raise
/// ConfigError naming the line and field.
ScenarioConfig parse_config(std::istream& in);
ScenarioConfig parse_config_file(const std::string& path);

/// Smooth periodic bump: product over axes of exp(kappa (cos(2 pi (x-c)/L) - 1)).
ScalarField periodic_bump(GridPtr g, const std::array<double, 3>& center, double kappa,
                          double amplitude);

/// Builds constraint-compatible Cauchy data for the preset (dealiased).
CauchyData build_preset(const ScenarioConfig& cfg, GridPtr g);

/// Preset -> validated data -> potentials -> half-wave state at t = 0.
HalfWaveState initial_state(const ScenarioConfig& cfg, GridPtr g);

} // namespace mkg
