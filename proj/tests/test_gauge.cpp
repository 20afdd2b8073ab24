#include <doctest.h>

#include "mkg/observables.hpp"
#include "testutil.hpp"

using namespace mkg;
using namespace mkgtest;

namespace {

const double two_pi = 2.0 * std::numbers::pi;

ScalarField cos_axis(GridPtr g, int axis) {
    ScalarField f = make_field(g, Rep::Space, Reality::Real);
    const int n = g->n();
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const int i = axis == 0 ? ix : (axis == 1 ? iy : iz);
                f.v[g->index(ix, iy, iz)] = std::cos(i * g->dx() * two_pi / g->L());
            }
    return f;
}

} // namespace

TEST_CASE("complete_electric_data: real scalar pair leaves E0 = E0_df") {
    GridPtr g = make_grid(16, two_pi);
    std::mt19937_64 rng(2);
    const ScalarField phi0 = random_masked_field(g, rng, 1.0, true);
    const ScalarField phi1 = random_masked_field(g, rng, 1.0, true);
    VectorField3 W;
    W.x = random_masked_field(g, rng, 1.0, true);
    W.y = random_masked_field(g, rng, 1.0, true);
    W.z = random_masked_field(g, rng, 1.0, true);
    const VectorField3 E0df = curl(W);
    const VectorField3 E0 = complete_electric_data(phi0, phi1, E0df);
    CHECK(rel_diff(E0.x, E0df.x) < 1e-12);
    CHECK(rel_diff(E0.y, E0df.y) < 1e-12);
}

TEST_CASE("complete_electric_data rejects net charge (mean of -cos^2 x1)") {
    GridPtr g = make_grid(16, two_pi);
    const ScalarField c1 = cos_axis(g, 0);
    const ScalarField ic1 = cplx(0.0, 1.0) * c1;
    CHECK_THROWS_AS(complete_electric_data(c1, ic1, make_vector(g, Rep::Space, Reality::Real)),
                    ConstraintError);
}

TEST_CASE("complete_electric_data solves the curl-free completion") {
    GridPtr g = make_grid(16, two_pi);
    const ScalarField phi0 = cos_axis(g, 0);
    ScalarField phi1 = pointwise_product(cos_axis(g, 0), cos_axis(g, 1));
    phi1 = cplx(0.0, 1.0) * phi1; // i cos x1 cos x2; mean of cos^2x1 cos x2 is 0
    const VectorField3 E0 = complete_electric_data(phi0, phi1, make_vector(g, Rep::Space, Reality::Real));

    // div E0 = Im(phi0 conj(phi1)) = -cos^2 x1 cos x2 to 1e-12
    const ScalarField dE = to_space(divergence(E0));
    ScalarField want = cplx(-1.0, 0.0) *
                       pointwise_product(pointwise_product(cos_axis(g, 0), cos_axis(g, 0)),
                                         cos_axis(g, 1));
    CHECK(rel_diff(dE, want) < 1e-12);

    // against the independent oracle: E0_j = Laplace^{-1} d_j rho via the DFT
    const auto oracle = dft3_oracle(to_space(want).v, 16);
    ScalarField e1 = to_fourier(E0.x);
    double worst = 0.0;
    const int n = 16;
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const std::int64_t id = g->index(ix, iy, iz);
                if (id == 0) continue;
                const double kx = g->xi_d(ix);
                const double k2 = g->k2()[id];
                const cplx expect = cplx(0.0, -kx / k2) * oracle[id];
                worst = std::max(worst, std::abs(e1.v[id] - expect));
            }
    CHECK(worst < 1e-12);
}

TEST_CASE("build_potential_data: zero fields and the sin/cos example") {
    GridPtr g = make_grid(16, two_pi);
    CauchyData cd;
    cd.m = 1.0;
    cd.phi0 = make_field(g, Rep::Space);
    cd.phi1 = make_field(g, Rep::Space);
    cd.E0 = make_vector(g, Rep::Space, Reality::Real);
    cd.B0 = make_vector(g, Rep::Space, Reality::Real);
    auto pd0 = build_potential_data(cd);
    CHECK(l2_norm(pd0.a) == 0.0);
    CHECK(l2_norm(pd0.adot) == 0.0);

    // B0 = (0,0,cos x1) -> a = (0, sin x1, 0)
    cd.B0.z = cos_axis(g, 0);
    auto pd = build_potential_data(cd);
    ScalarField sin1 = make_field(g, Rep::Space, Reality::Real);
    for (int iz = 0; iz < 16; ++iz)
        for (int iy = 0; iy < 16; ++iy)
            for (int ix = 0; ix < 16; ++ix)
                sin1.v[g->index(ix, iy, iz)] = std::sin(ix * g->dx());
    CHECK(rel_diff(to_space(pd.a.y), sin1) < 1e-12);
    CHECK(l2_norm(pd.a.x) < 1e-13);
    const VectorField3 b = curl(pd.a);
    CHECK(rel_diff(b.z, cd.B0.z) < 1e-12);
}

TEST_CASE("potential data: |adot| = |E0| exactly and |grad a| <= |B0|") {
    GridPtr g = make_grid(16, two_pi);
    std::mt19937_64 rng(31);
    const CauchyData cd = random_cauchy_data(g, rng);
    const PotentialData pd = build_potential_data(cd);
    CHECK(l2_norm(pd.adot) == l2_norm(cd.E0));

    double grad2 = 0.0;
    for (int j = 0; j < 3; ++j) {
        const VectorField3 gj = gradient(pd.a.comp(j));
        const double nj = l2_norm(gj);
        grad2 += nj * nj;
    }
    CHECK(std::sqrt(grad2) <= l2_norm(cd.B0) * (1.0 + 1e-12));
}

TEST_CASE("split: phi1 = 0 halves phi0; single-mode split isolates one branch") {
    GridPtr g = make_grid(8, two_pi);
    const double m = 1.0;
    std::array<ScalarField, 4> zero4{make_field(g, Rep::Fourier), make_field(g, Rep::Fourier),
                                     make_field(g, Rep::Fourier), make_field(g, Rep::Fourier)};

    std::mt19937_64 rng(4);
    const ScalarField phi0 = random_masked_field(g, rng);
    const ScalarField zero = make_field(g, Rep::Fourier);
    HalfWaveState s = split_from_potentials(phi0, zero, zero4, zero4, m);
    CHECK(rel_diff(s.phi_p, cplx(0.5, 0.0) * phi0) < 1e-13);
    CHECK(rel_diff(s.phi_m, cplx(0.5, 0.0) * phi0) < 1e-13);

    // phi0 = e^{i x1}, phi1 = i sqrt(1+m^2) e^{i x1}: only the + branch survives
    const ScalarField p0 = single_mode(g, 1, 0, 0);
    const ScalarField p1 = single_mode(g, 1, 0, 0, cplx(0.0, std::sqrt(2.0)));
    HalfWaveState s2 = split_from_potentials(p0, p1, zero4, zero4, 1.0);
    CHECK(std::abs(s2.phi_p.v[g->index(1, 0, 0)] - 1.0) < 1e-14);
    CHECK(l2_norm(s2.phi_m) < 1e-14);
}

TEST_CASE("split and reconstruct are mutually inverse to 1e-12") {
    GridPtr g = make_grid(16, two_pi);
    std::mt19937_64 rng(77);
    const CauchyData cd = random_cauchy_data(g, rng);
    validate(cd);
    const PotentialData pd = build_potential_data(cd);
    const HalfWaveState s = split_half_waves(cd, pd);
    const FieldTuple f = reconstruct(s);

    CHECK(rel_diff(f.phi, cd.phi0) < 1e-12);
    CHECK(rel_diff(f.dtphi, cd.phi1) < 1e-12);
    CHECK(rel_diff(f.A[2], pd.a.y) < 1e-12);
    for (int j = 0; j < 3; ++j) {
        ScalarField want = cplx(-1.0, 0.0) * to_fourier(cd.E0.comp(j));
        CHECK(rel_diff(f.dtA[j + 1], want) < 1e-12);
    }
    CHECK(l2_norm(f.A[0]) < 1e-13);
    CHECK(l2_norm(f.dtA[0]) < 1e-13);

    // real data reconstruct to real potentials
    for (int mu = 0; mu < 4; ++mu) {
        CHECK(max_imag(f.A[mu]) < 1e-11 * (1.0 + l2_norm(f.A[mu])));
        CHECK(max_imag(f.dtA[mu]) < 1e-11 * (1.0 + l2_norm(f.dtA[mu])));
    }
}

TEST_CASE("reconstruct: one-branch state") {
    GridPtr g = make_grid(8, two_pi);
    std::mt19937_64 rng(12);
    HalfWaveState s = random_state(g, rng);
    s.phi_m = make_field(g, Rep::Fourier);
    const FieldTuple f = reconstruct(s);
    CHECK(rel_diff(f.phi, s.phi_p) < 1e-14);
    const ScalarField want = cplx(0.0, 1.0) * kg_weight(s.phi_p, s.m);
    CHECK(rel_diff(f.dtphi, want) < 1e-13);
}

TEST_CASE("gauge transform: constant chi rotates phi and fixes A") {
    GridPtr g = make_grid(16, two_pi);
    std::mt19937_64 rng(21);
    const CauchyData cd = random_cauchy_data(g, rng);
    const HalfWaveState s = split_half_waves(cd, build_potential_data(cd));
    const FieldTuple f = reconstruct(s);

    ScalarField chi = make_field(g, Rep::Fourier, Reality::Real);
    chi.v[0] = 0.7;
    const ScalarField zero = make_field(g, Rep::Fourier, Reality::Real);
    const FieldTuple f2 = gauge_transform(f, chi, zero);

    const ScalarField want = std::exp(cplx(0.0, 0.7)) * to_space(f.phi);
    CHECK(rel_diff(f2.phi, want) < 1e-13);
    CHECK(rel_diff(f2.A[1], f.A[1]) < 1e-13);

    // |phi'| = |phi| pointwise
    const ScalarField p = to_space(f.phi);
    double worst = 0.0;
    for (std::int64_t i = 0; i < g->size(); ++i)
        worst = std::max(worst, std::abs(std::abs(f2.phi.v[i]) - std::abs(p.v[i])));
    CHECK(worst < 1e-13);
}

TEST_CASE("gauge transform leaves E, B, |phi| and the gauge residual invariant") {
    // the field-strength identities are exact, so rough data are fine here
    GridPtr g = make_grid(16, two_pi);
    std::mt19937_64 rng(22);
    const CauchyData cd = random_cauchy_data(g, rng);
    const HalfWaveState s = split_half_waves(cd, build_potential_data(cd));
    const FieldTuple f = reconstruct(s);

    GaugeWave gw;
    gw.chi0 = random_masked_field(g, rng, 0.3, true);
    gw.chi1 = random_masked_field(g, rng, 0.3, true);
    auto [chi, dtchi] = gw.at(0.35);
    const FieldTuple f2 = gauge_transform(f, chi, dtchi);

    auto [E1, B1] = em_fields(f.A, f.dtA);
    auto [E2, B2] = em_fields(f2.A, f2.dtA);
    const double scale = 1.0 + l2_norm(E1) + l2_norm(B1);
    for (int j = 0; j < 3; ++j) {
        CHECK(l2_norm(to_fourier(E2.comp(j)) - to_fourier(E1.comp(j))) < 1e-11 * scale);
        CHECK(l2_norm(to_fourier(B2.comp(j)) - to_fourier(B1.comp(j))) < 1e-11 * scale);
    }

    // Lorenz residual unchanged
    auto lres = [&](const FieldTuple& t) {
        VectorField3 a{t.A[1], t.A[2], t.A[3]};
        return to_fourier(t.dtA[0]) - to_fourier(divergence(a));
    };
    CHECK(l2_norm(lres(f2) - lres(f)) < 1e-11 * (1.0 + l2_norm(lres(f))) * g->n());
}

TEST_CASE("gauge transform leaves rho and J invariant on resolved data") {
    // the current identities cancel through nested dealiased products, so
    // they hold to rounding only when the spectra are truly resolved
    GridPtr g = make_grid(16, two_pi);
    std::mt19937_64 rng(26);
    const CauchyData cd = random_cauchy_data(g, rng, 1.0, true, 0.5, 1.5);
    const HalfWaveState s = split_half_waves(cd, build_potential_data(cd));
    const FieldTuple f = reconstruct(s);

    GaugeWave gw;
    gw.chi0 = smooth_masked_field(g, rng, 0.3, true, 1.5);
    gw.chi1 = smooth_masked_field(g, rng, 0.3, true, 1.5);
    auto [chi, dtchi] = gw.at(0.35);
    const FieldTuple f2 = gauge_transform(f, chi, dtchi);

    auto [rho1, J1] = current(f.phi, f.dtphi, f.A);
    auto [rho2, J2] = current(f2.phi, f2.dtphi, f2.A);
    CHECK(rel_diff(rho2, rho1) < 1e-11);
    CHECK(rel_diff(J2.x, J1.x) < 1e-11);
    CHECK(rel_diff(J2.z, J1.z) < 1e-11);
}

TEST_CASE("normalizing gauge wave restores a0 = 0 and div a = 0") {
    GridPtr g = make_grid(16, two_pi);
    std::mt19937_64 rng(23);
    HalfWaveState s = random_state(g, rng, 1.0, 0.3, true);
    const FieldTuple f = reconstruct(s);
    const GaugeWave gw = lorenz_normalizing_wave(f);
    auto [chi, dtchi] = gw.at(0.0);
    const FieldTuple f2 = gauge_transform(f, chi, dtchi);

    const double scale = 1.0 + l2_norm(f.A[0]);
    CHECK(l2_norm(to_fourier(f2.A[0])) < 1e-12 * scale * 10);
    VectorField3 a{f2.A[1], f2.A[2], f2.A[3]};
    CHECK(l2_norm(divergence(a)) < 1e-11 * scale * g->n());
}

TEST_CASE("validate rejects broken data with named constraints") {
    GridPtr g = make_grid(16, two_pi);
    std::mt19937_64 rng(25);
    CauchyData cd = random_cauchy_data(g, rng);
    validate(cd);

    CauchyData bad = cd;
    bad.B0.x = cos_axis(g, 0); // div B != 0
    CHECK_THROWS_WITH_AS(validate(bad), doctest::Contains("div B0"), ConstraintError);

    CauchyData bad2 = cd;
    bad2.phi1 = cplx(0.0, 1.0) * bad2.phi0; // uniformly charged
    CHECK_THROWS_WITH_AS(validate(bad2), doctest::Contains("charge"), ConstraintError);

    CauchyData bad3 = cd;
    bad3.E0.x = cos_axis(g, 0) + bad3.E0.x; // Gauss violated
    CHECK_THROWS_WITH_AS(validate(bad3), doctest::Contains("div E0"), ConstraintError);
}
