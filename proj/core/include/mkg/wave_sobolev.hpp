#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "mkg/grid.hpp"
#include "mkg/product_rules.hpp"

namespace mkg {

class SpaceTimeGrid;
using STGridPtr = std::shared_ptr<const SpaceTimeGrid>;

/// Periodic space-time box [0,Lt) x [0,L)^3 on nt x n^3 points, for the
/// discrete wave-Sobolev norms. Index order: x fastest, then y, z, t.
class SpaceTimeGrid {
public:
    static STGridPtr make(int nt, int n, double Lt, double L);
    ~SpaceTimeGrid();
    SpaceTimeGrid(const SpaceTimeGrid&) = delete;
    SpaceTimeGrid& operator=(const SpaceTimeGrid&) = delete;

    int nt() const { return nt_; }
    int n() const { return n_; }
    double Lt() const { return Lt_; }
    double L() const { return L_; }
    std::int64_t size() const { return std::int64_t(nt_) * n_ * n_ * n_; }
    double cell() const { return (Lt_ / nt_) * (L_ / n_) * (L_ / n_) * (L_ / n_); }
    double volume() const { return Lt_ * L_ * L_ * L_; }

    int mode_t(int i) const { return i <= nt_ / 2 ? i : i - nt_; }
    int mode_x(int i) const { return i <= n_ / 2 ? i : i - n_; }
    double tau(int i) const;
    double xi(int i) const;

    std::int64_t index(int ix, int iy, int iz, int it) const {
        return ix + std::int64_t(n_) * (iy + std::int64_t(n_) * (iz + std::int64_t(n_) * it));
    }

    void forward(const cplx* in, cplx* out) const;  ///< applies 1/(nt n^3)
    void backward(const cplx* in, cplx* out) const;

private:
    SpaceTimeGrid(int nt, int n, double Lt, double L);
    int nt_, n_;
    double Lt_, L_;
    void* plan_fwd_;
    void* plan_bwd_;
    std::vector<cplx> scratch_in_, scratch_out_;
};

struct SpaceTimeField {
    STGridPtr grid;
    Rep rep = Rep::Space;
    std::vector<cplx> v;
};

SpaceTimeField make_st_field(STGridPtr g, Rep rep = Rep::Space);
SpaceTimeField st_transform(const SpaceTimeField& f, Rep to);

/// sqrt( Lt L^3 sum <xi>^{2s} <|tau|-|xi|>^{2b} |uhat|^2 ), with
/// <x> = sqrt(1+x^2). s = b = 0 recovers the space-time L2 norm.
double hsb_norm(const SpaceTimeField& u, double s, double b);

/// Sign-adapted variant with temporal weight <-tau + sign |xi|>^b.
double xsb_norm(const SpaceTimeField& u, double s, double b, int sign);

/// Weight ratio <-tau + sign sqrt(m^2+xi^2)> / <-tau + sign |xi|>; lies
/// in [1/(1+m), 1+m] for every (tau, xi).
double kg_wave_weight_ratio(double tau, double xi_abs, double m, int sign);

/// Alias-free pointwise product: both factors are synthesized on a doubled
/// grid (2nt x (2n)^3), multiplied there, and returned on the doubled grid.
/// Exact for inputs band-limited to half the original Nyquist range.
SpaceTimeField padded_product(const SpaceTimeField& u, const SpaceTimeField& v);

struct ProbeSizeResult {
    int n = 0;
    double sup_ratio = 0.0;
};

struct BilinearProbeReport {
    ExponentMatrix matrix;
    bool accepted_by_rules = false;
    std::vector<ProbeSizeResult> per_size;
    std::int64_t trials = 0;
    bool non_increasing() const;
    std::string summary() const;
};

/// Empirical sup of ||uv||_{H^{-s0,-b0}} / (||u||_{H^{s1,b1}} ||v||_{H^{s2,b2}})
/// over seeded random Gaussian-spectrum fields, per grid size (nt = n).
/// Warns (in the report) when the matrix is not accepted by the rule engine.
BilinearProbeReport bilinear_probe(const ExponentMatrix& M, std::int64_t trials,
                                   const std::vector<int>& sizes, std::uint64_t seed);

} // namespace mkg
