#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "mkg/errors.hpp"

namespace mkg {

using cplx = std::complex<double>;

enum class Rep { Space, Fourier };
enum class Reality { Complex, Real };

class Grid3;
using GridPtr = std::shared_ptr<const Grid3>;

/// Periodic box [0,L)^3 sampled on n points per axis, with FFT plans,
/// per-mode wavenumber tables and the 2/3-rule dealiasing mask.
///
/// Wavenumbers per axis are (2pi/L)*{-n/2+1,...,n/2} in FFT index order;
/// the single Nyquist mode k=n/2 is excluded from differentiation and from
/// every product. The dealias mask keeps modes with 3*|k| <= n on all axes.
///
/// A grid is immutable after construction and may be shared across threads;
/// transforms execute on caller-owned buffers.
class Grid3 {
public:
    static GridPtr make(int n, double L);
    ~Grid3();

    Grid3(const Grid3&) = delete;
    Grid3& operator=(const Grid3&) = delete;

    int n() const { return n_; }
    double L() const { return L_; }
    std::int64_t size() const { return std::int64_t(n_) * n_ * n_; }
    double dx() const { return L_ / n_; }
    double volume() const { return L_ * L_ * L_; }
    /// Quadrature weight of one grid point, (L/n)^3.
    double cell() const { return dx() * dx() * dx(); }

    /// Integer mode number of axis index i, in {-n/2+1,...,n/2}.
    int mode(int i) const { return i <= n_ / 2 ? i : i - n_; }
    /// Physical wavenumber of axis index i.
    double xi(int i) const { return xi_[i]; }
    /// Wavenumber with the Nyquist mode zeroed (used by derivatives).
    double xi_d(int i) const { return xi_d_[i]; }

    std::int64_t index(int ix, int iy, int iz) const {
        return ix + std::int64_t(n_) * (iy + std::int64_t(n_) * iz);
    }

    /// |xi|^2 at flattened index.
    const std::vector<double>& k2() const { return k2_; }
    /// Dealias mask (1 = kept) at flattened index.
    const std::vector<std::uint8_t>& mask() const { return mask_; }
    bool kept(std::int64_t idx) const { return mask_[idx] != 0; }

    /// Unnormalized DFT pair; forward applies the 1/n^3 factor so that
    /// exp(i k.x) has Fourier coefficient exactly 1 at mode k.
    void forward(const cplx* in, cplx* out) const;
    void backward(const cplx* in, cplx* out) const;

private:
    Grid3(int n, double L);

    int n_;
    double L_;
    std::vector<double> xi_, xi_d_;
    std::vector<double> k2_;
    std::vector<std::uint8_t> mask_;
    void* plan_fwd_;
    void* plan_bwd_;
    std::vector<cplx> scratch_in_, scratch_out_;
};

/// Complex scalar field on a grid, in space or Fourier representation.
/// reality == Real asserts conjugate symmetry of the spectrum (the space
/// samples are real up to rounding).
struct ScalarField {
    GridPtr grid;
    Rep rep = Rep::Space;
    Reality reality = Reality::Complex;
    std::vector<cplx> v;

    std::int64_t size() const { return grid->size(); }
    cplx& operator[](std::int64_t i) { return v[i]; }
    const cplx& operator[](std::int64_t i) const { return v[i]; }
};

struct VectorField3 {
    ScalarField x, y, z;

    ScalarField& comp(int j) { return j == 0 ? x : (j == 1 ? y : z); }
    const ScalarField& comp(int j) const { return j == 0 ? x : (j == 1 ? y : z); }
    GridPtr grid() const { return x.grid; }
};

GridPtr make_grid(int n, double L);

ScalarField make_field(GridPtr g, Rep rep = Rep::Space, Reality r = Reality::Complex);
VectorField3 make_vector(GridPtr g, Rep rep = Rep::Space, Reality r = Reality::Complex);

/// DFT in the requested direction; throws UsageError on representation
/// mismatch. Round trip is the identity to rounding.
ScalarField transform(const ScalarField& f, Rep to);
ScalarField to_fourier(const ScalarField& f);
ScalarField to_space(const ScalarField& f);

/// Pointwise product of two space-representation fields on one grid,
/// dealiased by the 2/3 rule (spectrum outside the mask is zeroed).
ScalarField pointwise_product(const ScalarField& f, const ScalarField& g);

/// Zero every spectral coefficient outside the dealias mask.
void apply_mask(ScalarField& f);

/// Im(a conj(b)) pointwise, dealiased; real space field.
ScalarField im_product(const ScalarField& a, const ScalarField& b);

/// L2 norm with (L/n)^3 quadrature (space) or L^3 mode sum (Fourier).
double l2_norm(const ScalarField& f);
double l2_norm(const VectorField3& f);
/// sqrt(L^3 sum (1+|xi|^2) |fhat|^2).
double h1_norm(const ScalarField& f);
double max_abs(const ScalarField& f);

/// L2 inner product Re<f,g>.
double inner_real(const ScalarField& f, const ScalarField& g);

double mean(const ScalarField& f);
double max_imag(const ScalarField& f);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(cplx s, const ScalarField& a);

void check_same_grid(const ScalarField& a, const ScalarField& b);

} // namespace mkg
