#include "mkg/wave_sobolev.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace mkg {

namespace {
fftw_complex* fc(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
double angles(double x) { return std::sqrt(1.0 + x * x); }
} // namespace

SpaceTimeGrid::SpaceTimeGrid(int nt, int n, double Lt, double L)
    : nt_(nt), n_(n), Lt_(Lt), L_(L) {
    if (nt < 4 || n < 4 || nt % 2 || n % 2)
        throw ConfigError("space-time grid: nt and n must be even and >= 4");
    if (!(Lt > 0.0) || !(L > 0.0)) throw ConfigError("space-time grid: lengths must be positive");
    scratch_in_.resize(size());
    scratch_out_.resize(size());
    const int dims[4] = {nt_, n_, n_, n_}; // t slowest, x fastest
    plan_fwd_ = fftw_plan_dft(4, dims, fc(scratch_in_.data()), fc(scratch_out_.data()),
                              FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft(4, dims, fc(scratch_in_.data()), fc(scratch_out_.data()),
                              FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
}

SpaceTimeGrid::~SpaceTimeGrid() {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

STGridPtr SpaceTimeGrid::make(int nt, int n, double Lt, double L) {
    return STGridPtr(new SpaceTimeGrid(nt, n, Lt, L));
}

double SpaceTimeGrid::tau(int i) const { return 2.0 * std::numbers::pi / Lt_ * mode_t(i); }
double SpaceTimeGrid::xi(int i) const { return 2.0 * std::numbers::pi / L_ * mode_x(i); }

void SpaceTimeGrid::forward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_), fc(const_cast<cplx*>(in)), fc(out));
    const double s = 1.0 / double(size());
    for (std::int64_t i = 0; i < size(); ++i) out[i] *= s;
}

void SpaceTimeGrid::backward(const cplx* in, cplx* out) const {
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_), fc(const_cast<cplx*>(in)), fc(out));
}

SpaceTimeField make_st_field(STGridPtr g, Rep rep) {
    SpaceTimeField f;
    f.grid = std::move(g);
    f.rep = rep;
    f.v.assign(f.grid->size(), cplx(0.0));
    return f;
}

SpaceTimeField st_transform(const SpaceTimeField& f, Rep to) {
    if (f.rep == to) throw UsageError("st_transform: already in requested representation");
    SpaceTimeField out = f;
    out.rep = to;
    if (to == Rep::Fourier)
        f.grid->forward(f.v.data(), out.v.data());
    else
        f.grid->backward(f.v.data(), out.v.data());
    return out;
}

namespace {

SpaceTimeField st_fourier(const SpaceTimeField& f) {
    return f.rep == Rep::Fourier ? f : st_transform(f, Rep::Fourier);
}

template <class W>
double weighted_norm(const SpaceTimeField& u, W&& weight2) {
    const SpaceTimeField uh = st_fourier(u);
    const SpaceTimeGrid& g = *uh.grid;
    double s = 0.0;
    for (int it = 0; it < g.nt(); ++it)
        for (int iz = 0; iz < g.n(); ++iz)
            for (int iy = 0; iy < g.n(); ++iy)
                for (int ix = 0; ix < g.n(); ++ix) {
                    const std::int64_t id = g.index(ix, iy, iz, it);
                    const double kx = g.xi(ix), ky = g.xi(iy), kz = g.xi(iz);
                    const double kn = std::sqrt(kx * kx + ky * ky + kz * kz);
                    s += weight2(g.tau(it), kn) * std::norm(uh.v[id]);
                }
    return std::sqrt(g.volume() * s);
}

} // namespace

double hsb_norm(const SpaceTimeField& u, double s, double b) {
    return weighted_norm(u, [s, b](double tau, double kn) {
        return std::pow(angles(kn), 2.0 * s) * std::pow(angles(std::abs(tau) - kn), 2.0 * b);
    });
}

double xsb_norm(const SpaceTimeField& u, double s, double b, int sign) {
    return weighted_norm(u, [s, b, sign](double tau, double kn) {
        return std::pow(angles(kn), 2.0 * s) * std::pow(angles(-tau + sign * kn), 2.0 * b);
    });
}

double kg_wave_weight_ratio(double tau, double xi_abs, double m, int sign) {
    const double wkg = angles(-tau + sign * std::sqrt(m * m + xi_abs * xi_abs));
    const double ww = angles(-tau + sign * xi_abs);
    return wkg / ww;
}

SpaceTimeField padded_product(const SpaceTimeField& u, const SpaceTimeField& v) {
    if (u.grid.get() != v.grid.get()) throw UsageError("padded_product: grid mismatch");
    const SpaceTimeGrid& g = *u.grid;
    STGridPtr big = SpaceTimeGrid::make(2 * g.nt(), 2 * g.n(), g.Lt(), g.L());

    auto embed = [&](const SpaceTimeField& f) {
        const SpaceTimeField fh = st_fourier(f);
        SpaceTimeField out = make_st_field(big, Rep::Fourier);
        const SpaceTimeGrid& b = *big;
        for (int it = 0; it < g.nt(); ++it)
            for (int iz = 0; iz < g.n(); ++iz)
                for (int iy = 0; iy < g.n(); ++iy)
                    for (int ix = 0; ix < g.n(); ++ix) {
                        auto up = [&](int i, int nsmall, int nbig) {
                            const int k = i <= nsmall / 2 ? i : i - nsmall;
                            return k >= 0 ? k : k + nbig;
                        };
                        out.v[b.index(up(ix, g.n(), b.n()), up(iy, g.n(), b.n()),
                                      up(iz, g.n(), b.n()), up(it, g.nt(), b.nt()))] =
                            fh.v[g.index(ix, iy, iz, it)];
                    }
        return st_transform(out, Rep::Space);
    };

    SpaceTimeField us = embed(u), vs = embed(v);
    SpaceTimeField prod = us;
    for (std::int64_t i = 0; i < std::int64_t(prod.v.size()); ++i) prod.v[i] *= vs.v[i];
    return prod;
}

bool BilinearProbeReport::non_increasing() const {
    for (std::size_t i = 1; i < per_size.size(); ++i)
        if (per_size[i].sup_ratio > per_size[i - 1].sup_ratio) return false;
    return true;
}

std::string BilinearProbeReport::summary() const {
    std::ostringstream os;
    os << "matrix [" << to_string(matrix) << "] "
       << (accepted_by_rules ? "(product)" : "(NOT accepted by rule engine)") << ", " << trials
       << " trials:";
    for (const auto& r : per_size) os << "  n=" << r.n << " sup=" << r.sup_ratio;
    os << "  trend " << (non_increasing() ? "non-increasing" : "increasing");
    return os.str();
}

BilinearProbeReport bilinear_probe(const ExponentMatrix& M, std::int64_t trials,
                                   const std::vector<int>& sizes, std::uint64_t seed) {
    BilinearProbeReport rep;
    rep.matrix = M;
    rep.trials = trials;
    rep.accepted_by_rules = is_product(M).verdict == Verdict::Product;

    const double s0 = M.s[0].to_double(), s1 = M.s[1].to_double(), s2 = M.s[2].to_double();
    const double b0 = M.b[0].to_double(), b1 = M.b[1].to_double(), b2 = M.b[2].to_double();

    for (int n : sizes) {
        std::mt19937_64 rng(seed + std::uint64_t(n) * 7919u);
        std::normal_distribution<double> gauss(0.0, 1.0);
        STGridPtr g = SpaceTimeGrid::make(n, n, 2.0 * std::numbers::pi, 2.0 * std::numbers::pi);

        double sup = 0.0;
        for (std::int64_t trial = 0; trial < trials; ++trial) {
            auto random_field = [&]() {
                SpaceTimeField f = make_st_field(g, Rep::Fourier);
                const SpaceTimeGrid& gg = *g;
                const double sigma = std::max(1.0, n / 6.0);
                for (int it = 0; it < gg.nt(); ++it)
                    for (int iz = 0; iz < gg.n(); ++iz)
                        for (int iy = 0; iy < gg.n(); ++iy)
                            for (int ix = 0; ix < gg.n(); ++ix) {
                                const int kt = gg.mode_t(it), kx = gg.mode_x(ix),
                                          ky = gg.mode_x(iy), kz = gg.mode_x(iz);
                                if (3 * std::abs(kt) > gg.nt() || 3 * std::abs(kx) > gg.n() ||
                                    3 * std::abs(ky) > gg.n() || 3 * std::abs(kz) > gg.n())
                                    continue;
                                const double k2 = double(kt) * kt + double(kx) * kx +
                                                  double(ky) * ky + double(kz) * kz;
                                const double amp = std::exp(-k2 / (2.0 * sigma * sigma));
                                f.v[gg.index(ix, iy, iz, it)] =
                                    amp * cplx(gauss(rng), gauss(rng));
                            }
                return f;
            };
            const SpaceTimeField u = random_field();
            const SpaceTimeField v = random_field();
            const double nu = hsb_norm(u, s1, b1);
            const double nv = hsb_norm(v, s2, b2);
            if (nu == 0.0 || nv == 0.0) continue;
            const SpaceTimeField uv = padded_product(u, v);
            const double nuv = hsb_norm(uv, -s0, -b0);
            sup = std::max(sup, nuv / (nu * nv));
        }
        rep.per_size.push_back({n, sup});
    }
    return rep;
}

} // namespace mkg
