#include "mkg/gauge.hpp"

#include <cmath>

namespace mkg {

namespace {

ScalarField masked_fourier(const ScalarField& f) {
    ScalarField fh = to_fourier(f);
    apply_mask(fh);
    return fh;
}

} // namespace

double total_charge(const ScalarField& phi0, const ScalarField& phi1) {
    const ScalarField rho = im_product(phi0, phi1);
    return mean(rho) * phi0.grid->volume();
}

void validate(const CauchyData& cd) {
    if (!(cd.m > 0.0)) throw ConfigError("CauchyData: mass must be positive");

    const double divB = l2_norm(divergence(cd.B0));
    const double scaleB = 1.0 + l2_norm(cd.B0);
    if (divB > 1e-10 * scaleB)
        throw ConstraintError("initial data violate div B0 = 0 (|div B0| = " +
                              std::to_string(divB) + ")");

    const double q = total_charge(cd.phi0, cd.phi1);
    const double scaleq = 1.0 + l2_norm(cd.phi0) * l2_norm(cd.phi1);
    if (std::abs(q) > 1e-10 * scaleq)
        throw ConstraintError(
            "initial data carry nonzero total charge Int Im(phi0 conj(phi1)) = " +
            std::to_string(q) +
            "; a periodic box forces zero net charge. Neutralize the data, e.g. "
            "with antipodal charge lumps of opposite sign.");

    ScalarField gauss = divergence(cd.E0);
    const ScalarField rho0 = to_fourier(im_product(cd.phi0, cd.phi1));
    gauss = to_fourier(gauss) - rho0;
    const double res = l2_norm(gauss);
    const double scaleE = 1.0 + l2_norm(cd.E0) + l2_norm(rho0);
    if (res > 1e-10 * scaleE)
        throw ConstraintError("initial data violate div E0 = Im(phi0 conj(phi1)) "
                              "(residual " + std::to_string(res) + ")");
}

VectorField3 complete_electric_data(const ScalarField& phi0, const ScalarField& phi1,
                                    const VectorField3& E0_df) {
    const ScalarField rho = im_product(phi0, phi1);
    const double q = mean(rho) * phi0.grid->volume();
    const double scaleq = 1.0 + l2_norm(phi0) * l2_norm(phi1);
    if (std::abs(q) > 1e-10 * scaleq)
        throw ConstraintError(
            "cannot complete electric data: total charge Int Im(phi0 conj(phi1)) = " +
            std::to_string(q) + " must vanish on the torus. Neutralize the data, "
            "e.g. with antipodal charge lumps of opposite sign.");

    // div E0 = rho0 with rho0 = Im(phi0 conj(phi1)); the curl-free part is
    // Laplace^{-1} grad rho0
    VectorField3 corr = riesz_inverse_grad(rho);
    VectorField3 E0;
    for (int j = 0; j < 3; ++j) {
        E0.comp(j) = to_space(E0_df.comp(j)) + to_space(corr.comp(j));
        E0.comp(j).reality = Reality::Real;
    }
    return E0;
}

PotentialData build_potential_data(const CauchyData& cd) {
    PotentialData pd;
    pd.a0 = make_field(cd.phi0.grid, Rep::Fourier, Reality::Real);
    pd.adot0 = make_field(cd.phi0.grid, Rep::Fourier, Reality::Real);

    VectorField3 cb = curl(cd.B0);
    for (int j = 0; j < 3; ++j) {
        ScalarField aj = inverse_laplacian(cb.comp(j));
        pd.a.comp(j) = cplx(-1.0, 0.0) * aj;
        pd.a.comp(j).reality = Reality::Real;
        pd.adot.comp(j) = cplx(-1.0, 0.0) * cd.E0.comp(j);
        pd.adot.comp(j).reality = Reality::Real;
    }
    return pd;
}

HalfWaveState split_from_potentials(const ScalarField& phi0, const ScalarField& phi1,
                                    const std::array<ScalarField, 4>& a,
                                    const std::array<ScalarField, 4>& adot,
                                    double m, double t) {
    if (!(m > 0.0)) throw ConfigError("half-wave split requires m > 0");
    const GridPtr g = phi0.grid;
    const Grid3& gr = *g;

    HalfWaveState s;
    s.grid = g;
    s.m = m;
    s.t = t;

    const ScalarField p0 = masked_fourier(phi0);
    const ScalarField p1 = masked_fourier(phi1);
    s.phi_p = make_field(g, Rep::Fourier);
    s.phi_m = make_field(g, Rep::Fourier);
    for (std::int64_t i = 0; i < gr.size(); ++i) {
        const double w = std::sqrt(m * m + gr.k2()[i]);
        const cplx half_dot = cplx(0.0, -0.5) * p1.v[i] / w; // (i w)^{-1} p1 / 2
        s.phi_p.v[i] = 0.5 * p0.v[i] + half_dot;
        s.phi_m.v[i] = 0.5 * p0.v[i] - half_dot;
    }

    for (int mu = 0; mu < 4; ++mu) {
        const ScalarField ah = masked_fourier(a[mu]);
        const ScalarField adh = masked_fourier(adot[mu]);
        s.zmode_A[mu] = std::real(ah.v[0]);
        s.zmode_dA[mu] = std::real(adh.v[0]);
        s.A_p[mu] = make_field(g, Rep::Fourier);
        s.A_m[mu] = make_field(g, Rep::Fourier);
        for (std::int64_t i = 1; i < gr.size(); ++i) {
            const double w = std::sqrt(gr.k2()[i]);
            const cplx half_dot = cplx(0.0, -0.5) * adh.v[i] / w;
            s.A_p[mu].v[i] = 0.5 * ah.v[i] + half_dot;
            s.A_m[mu].v[i] = 0.5 * ah.v[i] - half_dot;
        }
    }
    return s;
}

HalfWaveState split_half_waves(const CauchyData& cd, const PotentialData& pd) {
    return split_from_potentials(cd.phi0, cd.phi1,
                                 {pd.a0, pd.a.x, pd.a.y, pd.a.z},
                                 {pd.adot0, pd.adot.x, pd.adot.y, pd.adot.z}, cd.m, 0.0);
}

FieldTuple reconstruct(const HalfWaveState& s) {
    const Grid3& gr = *s.grid;
    FieldTuple out;
    out.phi = s.phi_p + s.phi_m;
    out.dtphi = make_field(s.grid, Rep::Fourier);
    for (std::int64_t i = 0; i < gr.size(); ++i) {
        const double w = std::sqrt(s.m * s.m + gr.k2()[i]);
        out.dtphi.v[i] = cplx(0.0, w) * (s.phi_p.v[i] - s.phi_m.v[i]);
    }
    for (int mu = 0; mu < 4; ++mu) {
        out.A[mu] = s.A_p[mu] + s.A_m[mu];
        out.A[mu].v[0] = s.zmode_A[mu];
        out.A[mu].reality = Reality::Real;
        out.dtA[mu] = make_field(s.grid, Rep::Fourier, Reality::Real);
        for (std::int64_t i = 1; i < gr.size(); ++i) {
            const double w = std::sqrt(gr.k2()[i]);
            out.dtA[mu].v[i] = cplx(0.0, w) * (s.A_p[mu].v[i] - s.A_m[mu].v[i]);
        }
        out.dtA[mu].v[0] = s.zmode_dA[mu];
    }
    return out;
}

std::pair<ScalarField, ScalarField> GaugeWave::at(double tau) const {
    const Grid3& gr = *chi0.grid;
    ScalarField c = chi0, dc = chi1;
    c.rep = dc.rep = Rep::Fourier;
    for (std::int64_t i = 1; i < gr.size(); ++i) {
        const double w = std::sqrt(gr.k2()[i]);
        const double cw = std::cos(w * tau), sw = std::sin(w * tau);
        c.v[i] = cw * chi0.v[i] + sw / w * chi1.v[i];
        dc.v[i] = -w * sw * chi0.v[i] + cw * chi1.v[i];
    }
    c.v[0] = chi0.v[0] + tau * chi1.v[0];
    dc.v[0] = chi1.v[0];
    return {std::move(c), std::move(dc)};
}

GaugeWave GaugeWave::negated() const {
    GaugeWave g;
    g.chi0 = cplx(-1.0, 0.0) * chi0;
    g.chi1 = cplx(-1.0, 0.0) * chi1;
    return g;
}

FieldTuple gauge_transform(const FieldTuple& in, const ScalarField& chi,
                           const ScalarField& dtchi) {
    const ScalarField chis = to_space(chi);
    const ScalarField dtchis = to_space(dtchi);
    const ScalarField lap_chi = to_space(laplacian(chi));
    const VectorField3 grad_chi = gradient(chi);
    const VectorField3 grad_dtchi = gradient(dtchi);

    const ScalarField phi = to_space(in.phi);
    const ScalarField dtphi = to_space(in.dtphi);

    FieldTuple out;
    out.phi = make_field(phi.grid, Rep::Space);
    out.dtphi = make_field(phi.grid, Rep::Space);
    for (std::int64_t i = 0; i < phi.size(); ++i) {
        const cplx ph = std::exp(cplx(0.0, std::real(chis.v[i])));
        out.phi.v[i] = ph * phi.v[i];
        out.dtphi.v[i] = ph * (dtphi.v[i] + cplx(0.0, std::real(dtchis.v[i])) * phi.v[i]);
    }

    out.A[0] = to_space(in.A[0]) + dtchis;
    out.dtA[0] = to_space(in.dtA[0]) + lap_chi; // dt^2 chi = Laplace chi
    for (int j = 0; j < 3; ++j) {
        out.A[j + 1] = to_space(in.A[j + 1]) + to_space(grad_chi.comp(j));
        out.dtA[j + 1] = to_space(in.dtA[j + 1]) + to_space(grad_dtchi.comp(j));
    }
    for (int mu = 0; mu < 4; ++mu) {
        out.A[mu].reality = Reality::Real;
        out.dtA[mu].reality = Reality::Real;
    }
    return out;
}

GaugeWave lorenz_normalizing_wave(const FieldTuple& in) {
    VectorField3 a{in.A[1], in.A[2], in.A[3]};
    ScalarField diva = divergence(a);
    GaugeWave g;
    g.chi0 = to_fourier(cplx(-1.0, 0.0) * inverse_laplacian(diva)); // zero mode stays 0
    g.chi1 = cplx(-1.0, 0.0) * to_fourier(in.A[0]);
    g.chi0.reality = g.chi1.reality = Reality::Real;
    return g;
}

HalfWaveState state_from_tuple(const FieldTuple& in, double m, double t) {
    return split_from_potentials(in.phi, in.dtphi, in.A, in.dtA, m, t);
}

} // namespace mkg
