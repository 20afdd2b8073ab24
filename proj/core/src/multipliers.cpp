#include "mkg/multipliers.hpp"

#include <cmath>

namespace mkg {

namespace {

// Apply fn to every spectral coefficient: fn(ix,iy,iz, coeff&). Returns in
// the representation of the input.
template <class F>
ScalarField spectral_map(const ScalarField& f, F&& fn) {
    const Rep orig = f.rep;
    ScalarField fh = to_fourier(f);
    const Grid3& g = *fh.grid;
    const int n = g.n();
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) fn(g, ix, iy, iz, fh.v[g.index(ix, iy, iz)]);
    return orig == Rep::Space ? to_space(fh) : fh;
}

} // namespace

MultiplierSymbol MultiplierSymbol::klein_gordon(double m) {
    return MultiplierSymbol{Kind::KleinGordon, m, ZeroMode::Mass, {}};
}
MultiplierSymbol MultiplierSymbol::wave() {
    return MultiplierSymbol{Kind::Wave, 0.0, ZeroMode::Zero, {}};
}
MultiplierSymbol MultiplierSymbol::inverse_laplacian() {
    return MultiplierSymbol{Kind::InverseLaplacian, 0.0, ZeroMode::Zero, {}};
}

ScalarField apply_multiplier(const MultiplierSymbol& sym, const ScalarField& f) {
    const Rep orig = f.rep;
    ScalarField fh = to_fourier(f);

    if (sym.zero == MultiplierSymbol::ZeroMode::Reject) {
        const double tol = 1e-10 * (1.0 + l2_norm(fh));
        if (std::abs(fh.v[0]) > tol)
            throw SingularOperatorError("singular multiplier applied to field with nonzero mean");
        fh.v[0] = 0.0;
    }

    const Grid3& g = *fh.grid;
    const int n = g.n();
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const std::int64_t id = g.index(ix, iy, iz);
                if (id == 0) continue;
                const double k2 = g.k2()[id];
                cplx s;
                switch (sym.kind) {
                    case MultiplierSymbol::Kind::KleinGordon: s = std::sqrt(sym.m * sym.m + k2); break;
                    case MultiplierSymbol::Kind::Wave: s = std::sqrt(k2); break;
                    case MultiplierSymbol::Kind::InverseLaplacian: s = -1.0 / k2; break;
                    case MultiplierSymbol::Kind::Custom:
                        s = sym.custom(g.xi(ix), g.xi(iy), g.xi(iz));
                        break;
                }
                fh.v[id] *= s;
            }

    switch (sym.zero) {
        case MultiplierSymbol::ZeroMode::Zero: fh.v[0] = 0.0; break;
        case MultiplierSymbol::ZeroMode::Mass: fh.v[0] *= sym.m; break;
        case MultiplierSymbol::ZeroMode::Identity: break;
        case MultiplierSymbol::ZeroMode::Reject: break; // handled above
    }
    return orig == Rep::Space ? to_space(fh) : fh;
}

ScalarField apply_symbol(const ScalarField& f,
                         const std::function<cplx(double, double, double)>& sym,
                         cplx zero_value) {
    return spectral_map(f, [&](const Grid3& g, int ix, int iy, int iz, cplx& c) {
        const std::int64_t id = g.index(ix, iy, iz);
        c *= (id == 0) ? zero_value : sym(g.xi(ix), g.xi(iy), g.xi(iz));
    });
}

ScalarField kg_weight(const ScalarField& f, double m) {
    return spectral_map(f, [m](const Grid3& g, int ix, int iy, int iz, cplx& c) {
        c *= std::sqrt(m * m + g.k2()[g.index(ix, iy, iz)]);
    });
}

ScalarField kg_weight_inv(const ScalarField& f, double m) {
    if (!(m > 0.0)) throw ConfigError("kg_weight_inv requires m > 0");
    return spectral_map(f, [m](const Grid3& g, int ix, int iy, int iz, cplx& c) {
        c /= std::sqrt(m * m + g.k2()[g.index(ix, iy, iz)]);
    });
}

ScalarField wave_weight(const ScalarField& f) {
    return spectral_map(f, [](const Grid3& g, int ix, int iy, int iz, cplx& c) {
        c *= std::sqrt(g.k2()[g.index(ix, iy, iz)]);
    });
}

ScalarField inv_i_wave(const ScalarField& f) {
    const Rep orig = f.rep;
    ScalarField fh = to_fourier(f);
    const double tol = 1e-10 * (1.0 + l2_norm(fh));
    if (std::abs(fh.v[0]) > tol)
        throw SingularOperatorError(
            "inverse wave operator applied to field with nonzero mean; "
            "route the mean through the zero-mode registers");
    const Grid3& g = *fh.grid;
    for (std::int64_t id = 1; id < fh.size(); ++id)
        fh.v[id] *= cplx(0.0, -1.0) / std::sqrt(g.k2()[id]);
    fh.v[0] = 0.0;
    return orig == Rep::Space ? to_space(fh) : fh;
}

ScalarField partial(const ScalarField& f, int axis) {
    return spectral_map(f, [axis](const Grid3& g, int ix, int iy, int iz, cplx& c) {
        const int i = axis == 0 ? ix : (axis == 1 ? iy : iz);
        c *= cplx(0.0, g.xi_d(i));
    });
}

VectorField3 gradient(const ScalarField& f) {
    return VectorField3{partial(f, 0), partial(f, 1), partial(f, 2)};
}

ScalarField divergence(const VectorField3& V) {
    ScalarField d = partial(V.x, 0);
    ScalarField dy = partial(V.y, 1);
    ScalarField dz = partial(V.z, 2);
    for (std::int64_t i = 0; i < d.size(); ++i) d.v[i] += dy.v[i] + dz.v[i];
    return d;
}

VectorField3 curl(const VectorField3& V) {
    VectorField3 c;
    c.x = partial(V.z, 1) - partial(V.y, 2);
    c.y = partial(V.x, 2) - partial(V.z, 0);
    c.z = partial(V.y, 0) - partial(V.x, 1);
    return c;
}

ScalarField laplacian(const ScalarField& f) {
    return spectral_map(f, [](const Grid3& g, int ix, int iy, int iz, cplx& c) {
        c *= -g.k2()[g.index(ix, iy, iz)];
    });
}

ScalarField inverse_laplacian(const ScalarField& f) {
    return spectral_map(f, [](const Grid3& g, int ix, int iy, int iz, cplx& c) {
        const std::int64_t id = g.index(ix, iy, iz);
        c *= (id == 0) ? 0.0 : -1.0 / g.k2()[id];
    });
}

VectorField3 riesz_inverse_grad(const ScalarField& f) {
    VectorField3 out;
    for (int j = 0; j < 3; ++j)
        out.comp(j) = spectral_map(f, [j](const Grid3& g, int ix, int iy, int iz, cplx& c) {
            const std::int64_t id = g.index(ix, iy, iz);
            if (id == 0) { c = 0.0; return; }
            const int i = j == 0 ? ix : (j == 1 ? iy : iz);
            c *= cplx(0.0, -g.xi_d(i) / g.k2()[id]);
        });
    return out;
}

VectorField3 riesz_unit_grad(const ScalarField& f) {
    VectorField3 out;
    for (int j = 0; j < 3; ++j)
        out.comp(j) = spectral_map(f, [j](const Grid3& g, int ix, int iy, int iz, cplx& c) {
            const std::int64_t id = g.index(ix, iy, iz);
            if (id == 0) { c = 0.0; return; }
            const int i = j == 0 ? ix : (j == 1 ? iy : iz);
            c *= cplx(0.0, g.xi_d(i) / std::sqrt(g.k2()[id]));
        });
    return out;
}

HelmholtzParts helmholtz_split(const VectorField3& V) {
    const Rep orig = V.x.rep;
    ScalarField vx = to_fourier(V.x), vy = to_fourier(V.y), vz = to_fourier(V.z);
    const Grid3& g = *vx.grid;
    const int n = g.n();

    HelmholtzParts parts;
    parts.mean = {vx.v[0], vy.v[0], vz.v[0]};
    ScalarField cfx = vx, cfy = vy, cfz = vz;

    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const std::int64_t id = g.index(ix, iy, iz);
                const double kx = g.xi_d(ix), ky = g.xi_d(iy), kz = g.xi_d(iz);
                if (id == 0) {
                    cfx.v[id] = cfy.v[id] = cfz.v[id] = 0.0;
                    vx.v[id] = vy.v[id] = vz.v[id] = 0.0;
                    continue;
                }
                const double k2 = g.k2()[id];
                const cplx kdotv = kx * vx.v[id] + ky * vy.v[id] + kz * vz.v[id];
                const cplx s = kdotv / k2;
                cfx.v[id] = kx * s;
                cfy.v[id] = ky * s;
                cfz.v[id] = kz * s;
                vx.v[id] -= cfx.v[id];
                vy.v[id] -= cfy.v[id];
                vz.v[id] -= cfz.v[id];
            }

    auto back = [&](ScalarField& f) {
        f.reality = V.x.reality;
        if (orig == Rep::Space) f = to_space(f);
    };
    back(vx); back(vy); back(vz);
    back(cfx); back(cfy); back(cfz);
    parts.df = VectorField3{std::move(vx), std::move(vy), std::move(vz)};
    parts.cf = VectorField3{std::move(cfx), std::move(cfy), std::move(cfz)};
    return parts;
}

} // namespace mkg
