#include "mkg/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace mkg {

namespace {
fftw_complex* fc(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
const double two_pi = 2.0 * std::numbers::pi;
} // namespace

Grid3::Grid3(int n, double L) : n_(n), L_(L) {
    if (n < 8 || n > 512 || n % 2 != 0)
        throw ConfigError("grid: n must be even and in [8,512], got " + std::to_string(n));
    if (!(L > 0.0))
        throw ConfigError("grid: box length must be positive");

    xi_.resize(n);
    xi_d_.resize(n);
    for (int i = 0; i < n; ++i) {
        xi_[i] = two_pi / L * mode(i);
        xi_d_[i] = (i == n / 2) ? 0.0 : xi_[i];
    }

    k2_.resize(size());
    mask_.resize(size());
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const std::int64_t id = index(ix, iy, iz);
                k2_[id] = xi_[ix] * xi_[ix] + xi_[iy] * xi_[iy] + xi_[iz] * xi_[iz];
                const bool keep = 3 * std::abs(mode(ix)) <= n && 3 * std::abs(mode(iy)) <= n &&
                                  3 * std::abs(mode(iz)) <= n;
                mask_[id] = keep ? 1 : 0;
            }

    // FFTW_ESTIMATE keeps plan selection deterministic run to run;
    // FFTW_UNALIGNED lets the plans execute on arbitrary caller buffers.
    scratch_in_.resize(size());
    scratch_out_.resize(size());
    plan_fwd_ = fftw_plan_dft_3d(n, n, n, fc(scratch_in_.data()), fc(scratch_out_.data()),
                                 FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft_3d(n, n, n, fc(scratch_in_.data()), fc(scratch_out_.data()),
                                 FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

Grid3::~Grid3() {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

GridPtr Grid3::make(int n, double L) { return GridPtr(new Grid3(n, L)); }

GridPtr make_grid(int n, double L) { return Grid3::make(n, L); }

void Grid3::forward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), fc(const_cast<cplx*>(in)), fc(out));
    const double s = 1.0 / double(size());
    for (std::int64_t i = 0; i < size(); ++i) out[i] *= s;
}

void Grid3::backward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), fc(const_cast<cplx*>(in)), fc(out));
}

ScalarField make_field(GridPtr g, Rep rep, Reality r) {
    ScalarField f;
    f.grid = std::move(g);
    f.rep = rep;
    f.reality = r;
    f.v.assign(f.grid->size(), cplx(0.0, 0.0));
    return f;
}

VectorField3 make_vector(GridPtr g, Rep rep, Reality r) {
    return VectorField3{make_field(g, rep, r), make_field(g, rep, r), make_field(g, rep, r)};
}

void check_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.grid.get() != b.grid.get())
        throw UsageError("fields live on different grids");
}

ScalarField transform(const ScalarField& f, Rep to) {
    if (f.rep == to)
        throw UsageError("transform: field already in requested representation");
    ScalarField out = f;
    out.rep = to;
    if (to == Rep::Fourier)
        f.grid->forward(f.v.data(), out.v.data());
    else
        f.grid->backward(f.v.data(), out.v.data());
    return out;
}

ScalarField to_fourier(const ScalarField& f) {
    return f.rep == Rep::Fourier ? f : transform(f, Rep::Fourier);
}

ScalarField to_space(const ScalarField& f) {
    return f.rep == Rep::Space ? f : transform(f, Rep::Space);
}

void apply_mask(ScalarField& f) {
    if (f.rep != Rep::Fourier)
        throw UsageError("apply_mask: field must be in Fourier representation");
    const auto& m = f.grid->mask();
    for (std::int64_t i = 0; i < f.size(); ++i)
        if (!m[i]) f.v[i] = 0.0;
}

ScalarField pointwise_product(const ScalarField& f, const ScalarField& g) {
    check_same_grid(f, g);
    if (f.rep != Rep::Space || g.rep != Rep::Space)
        throw UsageError("pointwise_product: operands must be in space representation");
    // operands are reduced to their dealiased synthesis, so the quadratic
    // product is alias-free within the mask
    auto dealiased = [](const ScalarField& a) {
        ScalarField ah = to_fourier(a);
        bool clean = true;
        const auto& m = a.grid->mask();
        for (std::int64_t i = 0; i < a.size(); ++i)
            if (!m[i] && ah.v[i] != cplx(0.0)) { clean = false; break; }
        if (clean) return a;
        apply_mask(ah);
        ScalarField out = to_space(ah);
        out.reality = a.reality;
        return out;
    };
    const ScalarField fs = dealiased(f);
    const ScalarField gs = dealiased(g);
    ScalarField prod = fs;
    for (std::int64_t i = 0; i < fs.size(); ++i) prod.v[i] *= gs.v[i];
    prod.reality = (f.reality == Reality::Real && g.reality == Reality::Real)
                       ? Reality::Real
                       : Reality::Complex;
    ScalarField ph = to_fourier(prod);
    apply_mask(ph);
    return to_space(ph);
}

ScalarField im_product(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a, b);
    const ScalarField as = to_space(a), bs = to_space(b);
    ScalarField r = make_field(a.grid, Rep::Space, Reality::Real);
    for (std::int64_t i = 0; i < r.size(); ++i)
        r.v[i] = std::imag(as.v[i] * std::conj(bs.v[i]));
    ScalarField rh = to_fourier(r);
    apply_mask(rh);
    return to_space(rh);
}

double l2_norm(const ScalarField& f) {
    double s = 0.0;
    for (const cplx& z : f.v) s += std::norm(z);
    const double w = f.rep == Rep::Space ? f.grid->cell() : f.grid->volume();
    return std::sqrt(w * s);
}

double l2_norm(const VectorField3& f) {
    const double a = l2_norm(f.x), b = l2_norm(f.y), c = l2_norm(f.z);
    return std::sqrt(a * a + b * b + c * c);
}

double h1_norm(const ScalarField& f) {
    ScalarField fh = to_fourier(f);
    const auto& k2 = f.grid->k2();
    double s = 0.0;
    for (std::int64_t i = 0; i < fh.size(); ++i) s += (1.0 + k2[i]) * std::norm(fh.v[i]);
    return std::sqrt(f.grid->volume() * s);
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (const cplx& z : f.v) m = std::max(m, std::abs(z));
    return m;
}

double inner_real(const ScalarField& f, const ScalarField& g) {
    check_same_grid(f, g);
    if (f.rep != g.rep) throw UsageError("inner_real: representation mismatch");
    double s = 0.0;
    for (std::int64_t i = 0; i < f.size(); ++i)
        s += std::real(f.v[i] * std::conj(g.v[i]));
    return s * (f.rep == Rep::Space ? f.grid->cell() : f.grid->volume());
}

double mean(const ScalarField& f) {
    if (f.rep == Rep::Fourier) return std::real(f.v[0]);
    double s = 0.0;
    for (const cplx& z : f.v) s += std::real(z);
    return s / double(f.size());
}

double max_imag(const ScalarField& f) {
    const ScalarField s = to_space(f);
    double m = 0.0;
    for (const cplx& z : s.v) m = std::max(m, std::abs(std::imag(z)));
    return m;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a, b);
    if (a.rep != b.rep) throw UsageError("operator+: representation mismatch");
    ScalarField r = a;
    for (std::int64_t i = 0; i < r.size(); ++i) r.v[i] += b.v[i];
    if (b.reality == Reality::Complex) r.reality = Reality::Complex;
    return r;
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
    check_same_grid(a, b);
    if (a.rep != b.rep) throw UsageError("operator-: representation mismatch");
    ScalarField r = a;
    for (std::int64_t i = 0; i < r.size(); ++i) r.v[i] -= b.v[i];
    if (b.reality == Reality::Complex) r.reality = Reality::Complex;
    return r;
}

ScalarField operator*(cplx s, const ScalarField& a) {
    ScalarField r = a;
    for (auto& z : r.v) z *= s;
    if (std::imag(s) != 0.0) r.reality = Reality::Complex;
    return r;
}

} // namespace mkg
