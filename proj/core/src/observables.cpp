#include "mkg/observables.hpp"

#include <cmath>
#include <cstdio>

namespace mkg {

namespace {

/// |phi|^2 pointwise, dealiased, real space field.
ScalarField abs2_dealiased(const ScalarField& phi) {
    const ScalarField p = to_space(phi);
    ScalarField r = make_field(phi.grid, Rep::Space, Reality::Real);
    for (std::int64_t i = 0; i < r.size(); ++i) r.v[i] = std::norm(p.v[i]);
    ScalarField rh = to_fourier(r);
    apply_mask(rh);
    return to_space(rh);
}

} // namespace

std::string csv_header() {
    return "t,energy,charge,lorenz_res,gauss_res,divB_res,phi_l2,phi_h1,A_norm,max_field";
}

std::string csv_row(const DiagnosticsRecord& r) {
    char buf[512];
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.t, r.energy,
                  r.charge, r.lorenz_res, r.gauss_res, r.divB_res, r.phi_l2, r.phi_h1, r.A_norm,
                  r.max_field);
    return std::string(buf);
}

std::pair<VectorField3, VectorField3> em_fields(const std::array<ScalarField, 4>& A,
                                                const std::array<ScalarField, 4>& dtA) {
    const VectorField3 Avec{A[1], A[2], A[3]};
    VectorField3 B = curl(Avec);
    VectorField3 gradA0 = gradient(A[0]);
    VectorField3 E;
    for (int j = 0; j < 3; ++j) {
        E.comp(j) = to_fourier(gradA0.comp(j)) - to_fourier(dtA[j + 1]);
        E.comp(j).reality = Reality::Real;
        B.comp(j).reality = Reality::Real;
    }
    return {std::move(E), std::move(B)};
}

std::pair<ScalarField, VectorField3> current(const ScalarField& phi, const ScalarField& dtphi,
                                             const std::array<ScalarField, 4>& A) {
    const ScalarField n2 = abs2_dealiased(phi);

    auto cubic = [&](const ScalarField& Amu) {
        const ScalarField As = to_space(Amu);
        ScalarField r = make_field(phi.grid, Rep::Space, Reality::Real);
        for (std::int64_t i = 0; i < r.size(); ++i)
            r.v[i] = n2.v[i] * std::real(As.v[i]);
        ScalarField rh = to_fourier(r);
        apply_mask(rh);
        return to_space(rh);
    };

    ScalarField rho = im_product(phi, dtphi) + cubic(A[0]);
    rho.reality = Reality::Real;

    VectorField3 J;
    for (int j = 0; j < 3; ++j) {
        const ScalarField dphi = partial(phi, j);
        J.comp(j) = cplx(-1.0, 0.0) * im_product(phi, dphi) - cubic(A[j + 1]);
        J.comp(j).reality = Reality::Real;
    }
    return {std::move(rho), std::move(J)};
}

double energy(const FieldTuple& f, double m) {
    const GridPtr g = f.phi.grid;
    const ScalarField phi = to_space(f.phi);
    const ScalarField dtphi = to_space(f.dtphi);
    std::array<ScalarField, 4> As;
    for (int mu = 0; mu < 4; ++mu) As[mu] = to_space(f.A[mu]);

    VectorField3 gphi = gradient(f.phi);
    std::array<ScalarField, 3> gphis;
    for (int j = 0; j < 3; ++j) gphis[j] = to_space(gphi.comp(j));

    auto [E, B] = em_fields(f.A, f.dtA);
    std::array<ScalarField, 6> em;
    for (int j = 0; j < 3; ++j) {
        em[j] = to_space(E.comp(j));
        em[3 + j] = to_space(B.comp(j));
    }

    double s = 0.0;
    for (std::int64_t i = 0; i < g->size(); ++i) {
        const cplx ph = phi.v[i];
        const cplx Dt = dtphi.v[i] - cplx(0.0, 1.0) * std::real(As[0].v[i]) * ph;
        double dens = std::norm(Dt) + m * m * std::norm(ph);
        for (int j = 0; j < 3; ++j) {
            const cplx Dj = gphis[j].v[i] - cplx(0.0, 1.0) * std::real(As[j + 1].v[i]) * ph;
            dens += std::norm(Dj);
        }
        for (int j = 0; j < 6; ++j) dens += std::norm(em[j].v[i]);
        s += dens;
    }
    return 0.5 * s * g->cell();
}

double energy(const HalfWaveState& s) { return energy(reconstruct(s), s.m); }

double initial_energy(const CauchyData& cd, const PotentialData& pd) {
    const GridPtr g = cd.phi0.grid;
    const ScalarField phi0 = to_space(cd.phi0);
    const ScalarField phi1 = to_space(cd.phi1);
    VectorField3 gphi = gradient(cd.phi0);

    std::array<ScalarField, 3> gp, av, e0, b0;
    for (int j = 0; j < 3; ++j) {
        gp[j] = to_space(gphi.comp(j));
        av[j] = to_space(pd.a.comp(j));
        e0[j] = to_space(cd.E0.comp(j));
        b0[j] = to_space(cd.B0.comp(j));
    }
    double s = 0.0;
    for (std::int64_t i = 0; i < g->size(); ++i) {
        double dens = std::norm(phi1.v[i]) + cd.m * cd.m * std::norm(phi0.v[i]);
        for (int j = 0; j < 3; ++j) {
            const cplx Uj = gp[j].v[i] - cplx(0.0, 1.0) * phi0.v[i] * std::real(av[j].v[i]);
            dens += std::norm(Uj) + std::norm(e0[j].v[i]) + std::norm(b0[j].v[i]);
        }
        s += dens;
    }
    return 0.5 * s * g->cell();
}

DiagnosticsRecord constraint_residuals(const HalfWaveState& s) {
    const FieldTuple f = reconstruct(s);
    DiagnosticsRecord r;
    r.t = s.t;
    r.energy = energy(f, s.m);

    const VectorField3 Avec{f.A[1], f.A[2], f.A[3]};
    ScalarField lres = to_fourier(f.dtA[0]) - divergence(Avec);
    r.lorenz_res = l2_norm(lres);

    auto [E, B] = em_fields(f.A, f.dtA);
    r.divB_res = l2_norm(divergence(B));

    auto [rho, J] = current(f.phi, f.dtphi, f.A);
    r.charge = mean(rho) * s.grid->volume();
    ScalarField gres = divergence(E) - to_fourier(rho);
    r.gauss_res = l2_norm(gres);

    r.phi_l2 = l2_norm(f.phi);
    r.phi_h1 = h1_norm(f.phi);
    double a2 = 0.0;
    double mf = max_abs(to_space(f.phi));
    for (int mu = 0; mu < 4; ++mu) {
        const double nm = l2_norm(f.A[mu]);
        a2 += nm * nm;
        mf = std::max(mf, max_abs(to_space(f.A[mu])));
    }
    r.A_norm = std::sqrt(a2);
    r.max_field = mf;
    return r;
}

} // namespace mkg
