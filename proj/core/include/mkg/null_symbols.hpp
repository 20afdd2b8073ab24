#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace mkg {

/// One evaluation point for the bilinear null symbols: spatial frequencies
/// eta, zeta (nonzero), temporal frequencies lambda, mu, mass m >= 0 and a
/// sign pair.
struct SymbolSample {
    std::array<double, 3> eta{1, 0, 0};
    std::array<double, 3> zeta{0, 1, 0};
    double lambda = 0.0;
    double mu = 0.0;
    double m = 0.0;
    int s1 = +1;
    int s2 = +1;
};

/// Angle in [0,pi] between s1*eta and s2*zeta.
double signed_angle(const SymbolSample& s);

/// Advection symbol  <zeta>_m - (s1 eta).(s2 zeta)/|eta|.
double symbol_a(const SymbolSample& s);
/// Gradient-pair symbol  <eta>_m (s2 zeta) - <zeta>_m (s1 eta).
std::array<double, 3> symbol_b(const SymbolSample& s);
/// Cross symbol  eta x zeta (sign independent).
std::array<double, 3> symbol_c(const SymbolSample& s);

/// Explicit-constant bounds the symbols satisfy:
///   |a| <= m + |zeta| theta^2 / 2
///   |b| <= m(|eta|+|zeta|) + |eta||zeta| theta
///   |c| <= |eta||zeta| theta,        theta = signed_angle.
struct SymbolBounds {
    double a, b, c;
};
SymbolBounds symbol_bounds(const SymbolSample& s);

struct BoundCheckReport {
    std::int64_t samples = 0;
    std::int64_t violations = 0;
    double worst_ratio_a = 0.0; ///< max |a| / bound over bound > 0 samples
    double worst_ratio_b = 0.0;
    double worst_ratio_c = 0.0;
    std::string summary() const;
};

/// Seeded sampling check of the three bounds over all four sign pairs,
/// log-uniform magnitudes in [1e-3, 1e3], uniform directions. `count`
/// samples per sign pair. Violations are counted, not thrown.
BoundCheckReport check_symbol_bounds(double m, std::int64_t count, std::uint64_t seed);

/// Ratio theta / RHS for the null-cone angle bound with constant 1:
///   RHS = (<|lambda+mu|-|eta+zeta|> / M)^s
///       + ((<-lambda + s1|eta|> + <-mu + s2|zeta|>) / M)^{1/2},
/// with M = min(<eta>,<zeta>) and <x> = sqrt(1+x^2). Requires s in [0,1/2].
double angle_probe(const SymbolSample& s, double s_exp);

struct AngleProbeReport {
    std::int64_t samples = 0;
    double max_ratio = 0.0;
    SymbolSample argmax;
};

/// Seeded experiment recording the largest observed ratio; the constant in
/// the underlying bound is not specified by theory, so this is recorded,
/// not asserted.
AngleProbeReport angle_probe_experiment(double m, std::int64_t count, std::uint64_t seed,
                                        double s_exp);

} // namespace mkg
