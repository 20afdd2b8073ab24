#pragma once

#include <array>
#include <functional>

#include "mkg/grid.hpp"

namespace mkg {

/// Scalar Fourier multiplier with an explicit zero-mode rule.
struct MultiplierSymbol {
    enum class Kind { KleinGordon, Wave, InverseLaplacian, Custom };
    enum class ZeroMode { Zero, Mass, Identity, Reject };

    Kind kind = Kind::Wave;
    double m = 0.0;
    ZeroMode zero = ZeroMode::Zero;
    /// Custom symbol as a function of the wavenumber vector.
    std::function<cplx(double, double, double)> custom;

    static MultiplierSymbol klein_gordon(double m);
    static MultiplierSymbol wave();
    static MultiplierSymbol inverse_laplacian();
};

/// Multiply the spectrum of f by the symbol; the zero mode follows the
/// symbol's rule (Reject throws SingularOperatorError on nonzero-mean input).
/// The result is returned in the representation of the input.
ScalarField apply_multiplier(const MultiplierSymbol& sym, const ScalarField& f);

/// Generic spectral map: coefficient at xi multiplied by sym(xi); the zero
/// mode is multiplied by zero_value instead. Nyquist planes untouched.
ScalarField apply_symbol(const ScalarField& f,
                         const std::function<cplx(double, double, double)>& sym,
                         cplx zero_value);

// Named operators. All are pure, keep the input representation, and zero
// the Nyquist planes wherever a first derivative is involved.

/// sqrt(m^2 - Laplace), acting as sqrt(m^2+|xi|^2); zero mode -> m.
ScalarField kg_weight(const ScalarField& f, double m);
/// 1/sqrt(m^2+|xi|^2); requires m > 0 for the zero mode.
ScalarField kg_weight_inv(const ScalarField& f, double m);
/// |grad| = sqrt(-Laplace); zero mode -> 0.
ScalarField wave_weight(const ScalarField& f);
/// (i|grad|)^{-1}; zero mode must vanish (throws otherwise), maps to 0.
ScalarField inv_i_wave(const ScalarField& f);

ScalarField partial(const ScalarField& f, int axis);
VectorField3 gradient(const ScalarField& f);
ScalarField divergence(const VectorField3& V);
VectorField3 curl(const VectorField3& V);
ScalarField laplacian(const ScalarField& f);
/// Laplace^{-1}; zero mode -> 0.
ScalarField inverse_laplacian(const ScalarField& f);

/// Laplace^{-1} grad: component j has symbol -i xi_j/|xi|^2; zero mode -> 0.
VectorField3 riesz_inverse_grad(const ScalarField& f);
/// |grad|^{-1} grad: component j has symbol i xi_j/|xi|; zero mode -> 0.
VectorField3 riesz_unit_grad(const ScalarField& f);

struct HelmholtzParts {
    VectorField3 df; ///< divergence-free part (mean removed)
    VectorField3 cf; ///< curl-free part (mean removed)
    std::array<cplx, 3> mean{};
};

/// Splits V = df + cf + mean on the torus. df = -Laplace^{-1} curl curl V,
/// cf = Laplace^{-1} grad (div V) on nonzero modes.
HelmholtzParts helmholtz_split(const VectorField3& V);

} // namespace mkg
