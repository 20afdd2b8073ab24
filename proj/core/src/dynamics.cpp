#include "mkg/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace mkg {

namespace {

const cplx I{0.0, 1.0};

ScalarField masked(ScalarField fh) {
    apply_mask(fh);
    return fh;
}

/// Sum of dealiased products f*<grad>_m g and s1*s2 * (|grad|^{-1} grad f).(grad g).
ScalarField null_form_A_impl(const ScalarField& f, const ScalarField& g, int s1, int s2,
                             double m) {
    check_same_grid(f, g);
    const ScalarField fs = to_space(f);
    ScalarField acc = pointwise_product(fs, to_space(kg_weight(g, m)));
    const VectorField3 rf = riesz_unit_grad(f);
    const VectorField3 gg = gradient(g);
    const double sg = double(s1) * double(s2);
    for (int j = 0; j < 3; ++j) {
        const ScalarField pj = pointwise_product(to_space(rf.comp(j)), to_space(gg.comp(j)));
        for (std::int64_t i = 0; i < acc.size(); ++i) acc.v[i] += sg * pj.v[i];
    }
    return acc;
}

} // namespace

ScalarField null_form_A(const ScalarField& f, const ScalarField& g, int s1, int s2, double m) {
    if (s1 != 1 && s1 != -1) throw UsageError("null_form_A: s1 must be +-1");
    if (s2 != 1 && s2 != -1) throw UsageError("null_form_A: s2 must be +-1");
    if (m < 0.0) throw ConfigError("null_form_A: mass must be nonnegative");
    return null_form_A_impl(f, g, s1, s2, m);
}

ScalarField P1_decomposed(const ScalarField& A0p, const ScalarField& A0m,
                          const ScalarField& phip, const ScalarField& phim, double m) {
    ScalarField sum = make_field(A0p.grid, Rep::Space);
    const ScalarField* a0[2] = {&A0p, &A0m};
    const ScalarField* ph[2] = {&phip, &phim};
    const int sgn[2] = {+1, -1};
    for (int i1 = 0; i1 < 2; ++i1)
        for (int i2 = 0; i2 < 2; ++i2) {
            const ScalarField t = null_form_A_impl(*a0[i1], *ph[i2], sgn[i1], sgn[i2], m);
            const double c = sgn[i2];
            for (std::int64_t i = 0; i < sum.size(); ++i) sum.v[i] += c * t.v[i];
        }
    return cplx(0.0, -1.0) * sum; // divide the +-2 sum by i
}

ScalarField P1_direct(const ScalarField& A0, const ScalarField& dtA0, const ScalarField& phi,
                      const ScalarField& dtphi) {
    ScalarField acc = cplx(-1.0, 0.0) * pointwise_product(to_space(A0), to_space(dtphi));
    const VectorField3 cf = riesz_inverse_grad(dtA0); // Laplace^{-1} grad dtA0
    const VectorField3 gp = gradient(phi);
    for (int j = 0; j < 3; ++j) {
        const ScalarField pj = pointwise_product(to_space(cf.comp(j)), to_space(gp.comp(j)));
        for (std::int64_t i = 0; i < acc.size(); ++i) acc.v[i] += pj.v[i];
    }
    return acc;
}

ScalarField P2_null_form(const VectorField3& A, const ScalarField& phi) {
    const VectorField3 cA = curl(A);
    VectorField3 w;
    for (int l = 0; l < 3; ++l) w.comp(l) = inverse_laplacian(cA.comp(l));

    std::array<ScalarField, 3> gphi;
    {
        const VectorField3 gp = gradient(phi);
        for (int j = 0; j < 3; ++j) gphi[j] = to_space(gp.comp(j));
    }

    // Sum over l of the l-th component of grad(w_l) x grad(phi).
    ScalarField acc = make_field(phi.grid, Rep::Space);
    const int ja[3] = {1, 2, 0}, jb[3] = {2, 0, 1};
    for (int l = 0; l < 3; ++l) {
        const VectorField3 gw = gradient(w.comp(l));
        const ScalarField t1 =
            pointwise_product(to_space(gw.comp(ja[l])), gphi[jb[l]]);
        const ScalarField t2 =
            pointwise_product(to_space(gw.comp(jb[l])), gphi[ja[l]]);
        for (std::int64_t i = 0; i < acc.size(); ++i) acc.v[i] += t1.v[i] - t2.v[i];
    }
    return acc;
}

ScalarField advection_direct(const std::array<ScalarField, 4>& A, const ScalarField& phi,
                             const ScalarField& dtphi) {
    ScalarField acc = cplx(-1.0, 0.0) * pointwise_product(to_space(A[0]), to_space(dtphi));
    const VectorField3 gp = gradient(phi);
    for (int j = 0; j < 3; ++j) {
        const ScalarField pj =
            pointwise_product(to_space(A[j + 1]), to_space(gp.comp(j)));
        for (std::int64_t i = 0; i < acc.size(); ++i) acc.v[i] += pj.v[i];
    }
    return acc;
}

NonlinearityOutput assemble_nonlinearity(const HalfWaveState& s, NonlinearityForm form) {
    const Grid3& g = *s.grid;
    const std::int64_t N = g.size();
    const double m = s.m;

    // Spectral building blocks.
    ScalarField phi_h = s.phi_p + s.phi_m;
    ScalarField T_h = make_field(s.grid, Rep::Fourier); // <grad>_m (phi+ - phi-); dtphi = i T
    for (std::int64_t i = 0; i < N; ++i)
        T_h.v[i] = std::sqrt(m * m + g.k2()[i]) * (s.phi_p.v[i] - s.phi_m.v[i]);

    ScalarField A0_h = s.A_p[0] + s.A_m[0];
    ScalarField X_h = s.A_p[0] - s.A_m[0]; // dtA0 = i|grad| X

    // Space-domain fields.
    const ScalarField phi = to_space(phi_h);
    const ScalarField T = to_space(T_h);
    std::array<ScalarField, 3> G;
    for (int j = 0; j < 3; ++j) G[j] = to_space(partial(phi_h, j));

    ScalarField A0full = to_space(A0_h);
    for (auto& z : A0full.v) z += s.zmode_A[0];
    std::array<ScalarField, 3> Afull;
    std::array<ScalarField, 3> Aosc_h;
    for (int j = 0; j < 3; ++j) {
        Aosc_h[j] = s.A_p[j + 1] + s.A_m[j + 1];
        Afull[j] = to_space(Aosc_h[j]);
        for (auto& z : Afull[j].v) z += s.zmode_A[j + 1];
    }

    // Divergence-free part of the oscillatory vector potential.
    std::array<ScalarField, 3> Adf;
    {
        std::array<ScalarField, 3> dfh;
        for (int j = 0; j < 3; ++j) dfh[j] = Aosc_h[j];
        const int n = g.n();
        for (int iz = 0; iz < n; ++iz)
            for (int iy = 0; iy < n; ++iy)
                for (int ix = 0; ix < n; ++ix) {
                    const std::int64_t id = g.index(ix, iy, iz);
                    if (id == 0) continue;
                    const double kx = g.xi_d(ix), ky = g.xi_d(iy), kz = g.xi_d(iz);
                    const cplx kv = (kx * dfh[0].v[id] + ky * dfh[1].v[id] + kz * dfh[2].v[id]) /
                                    g.k2()[id];
                    dfh[0].v[id] -= kx * kv;
                    dfh[1].v[id] -= ky * kv;
                    dfh[2].v[id] -= kz * kv;
                }
        for (int j = 0; j < 3; ++j) Adf[j] = to_space(dfh[j]);
    }

    // Cubic factors: A_mu A^mu (bilinear square, no conjugation) and |phi|^2,
    // each dealiased before the outer product.
    ScalarField Ssq = make_field(s.grid, Rep::Space);
    for (std::int64_t i = 0; i < N; ++i) {
        cplx v = -A0full.v[i] * A0full.v[i];
        for (int j = 0; j < 3; ++j) v += Afull[j].v[i] * Afull[j].v[i];
        Ssq.v[i] = v;
    }
    Ssq = to_space(masked(to_fourier(Ssq)));

    ScalarField W = make_field(s.grid, Rep::Space, Reality::Real);
    for (std::int64_t i = 0; i < N; ++i) W.v[i] = std::norm(phi.v[i]);
    W = to_space(masked(to_fourier(W)));

    // Scalar-equation source.
    ScalarField M = make_field(s.grid, Rep::Space);
    if (form == NonlinearityForm::Decomposed) {
        std::array<ScalarField, 3> R; // |grad|^{-1} grad (A0+ - A0-)
        {
            const VectorField3 r = riesz_unit_grad(X_h);
            for (int j = 0; j < 3; ++j) R[j] = to_space(r.comp(j));
        }
        for (std::int64_t i = 0; i < N; ++i) {
            cplx v = 2.0 * A0full.v[i] * T.v[i];
            for (int j = 0; j < 3; ++j) {
                v += 2.0 * R[j].v[i] * G[j].v[i];
                v += 2.0 * I * (Adf[j].v[i] + s.zmode_A[j + 1]) * G[j].v[i];
            }
            v += Ssq.v[i] * phi.v[i];
            M.v[i] = v;
        }
    } else {
        // Direct evaluation from reconstructed dtphi and dtA0, with the
        // curl-free advection written through dtA0 (the gauge relation the
        // evolved system encodes) and the divergence-free part projected.
        ScalarField dtA0_h = make_field(s.grid, Rep::Fourier);
        for (std::int64_t i = 0; i < N; ++i)
            dtA0_h.v[i] = I * std::sqrt(g.k2()[i]) * X_h.v[i];
        std::array<ScalarField, 3> CF;
        {
            const VectorField3 cf = riesz_inverse_grad(dtA0_h);
            for (int j = 0; j < 3; ++j) CF[j] = to_space(cf.comp(j));
        }
        for (std::int64_t i = 0; i < N; ++i) {
            const cplx dtphi = I * T.v[i];
            cplx adv = -A0full.v[i] * dtphi;
            for (int j = 0; j < 3; ++j)
                adv += (CF[j].v[i] + Adf[j].v[i] + s.zmode_A[j + 1]) * G[j].v[i];
            M.v[i] = 2.0 * I * adv + Ssq.v[i] * phi.v[i];
        }
    }

    // Potential-equation sources: N_mu = -(current of the state), so that
    // box A = -J pumps the field with the sign the energy balance needs.
    // N0 = Im(phi dt(conj phi)) + A0|phi|^2 with dtphi = iT reads
    // -Re(phi conj(T)) + A0|phi|^2.
    std::array<ScalarField, 4> Nf;
    for (int mu = 0; mu < 4; ++mu) Nf[mu] = make_field(s.grid, Rep::Space);
    for (std::int64_t i = 0; i < N; ++i) {
        Nf[0].v[i] = -std::real(phi.v[i] * std::conj(T.v[i])) + A0full.v[i] * W.v[i];
        for (int j = 0; j < 3; ++j)
            Nf[j + 1].v[i] =
                std::imag(phi.v[i] * std::conj(G[j].v[i])) + Afull[j].v[i] * W.v[i];
    }

    NonlinearityOutput out;
    out.M = masked(to_fourier(M));
    for (int mu = 0; mu < 4; ++mu) {
        out.N[mu] = masked(to_fourier(Nf[mu]));
        out.mean_J[mu] = -std::real(out.N[mu].v[0]);
    }
    return out;
}

ScalarField assemble_M(const HalfWaveState& s, NonlinearityForm form) {
    return assemble_nonlinearity(s, form).M;
}

std::array<ScalarField, 4> assemble_N(const HalfWaveState& s) {
    return assemble_nonlinearity(s, NonlinearityForm::Decomposed).N;
}

namespace {

/// Source part of the derivative: everything except the diagonal linear
/// phases (the integrating-factor step applies those exactly). Registers
/// have no linear phase, so their full drift lives here.
StateDeriv source_rhs(const HalfWaveState& s, NonlinearityForm form) {
    const Grid3& g = *s.grid;
    const std::int64_t N = g.size();
    const NonlinearityOutput nl = assemble_nonlinearity(s, form);

    StateDeriv d;
    d.phi_p = make_field(s.grid, Rep::Fourier);
    d.phi_m = make_field(s.grid, Rep::Fourier);
    for (std::int64_t i = 0; i < N; ++i) {
        const double w = std::sqrt(s.m * s.m + g.k2()[i]);
        const cplx src = I * nl.M.v[i] / (2.0 * w);
        d.phi_p.v[i] = src;
        d.phi_m.v[i] = -src;
    }
    for (int mu = 0; mu < 4; ++mu) {
        d.A_p[mu] = make_field(s.grid, Rep::Fourier);
        d.A_m[mu] = make_field(s.grid, Rep::Fourier);
        for (std::int64_t i = 1; i < N; ++i) {
            const double w = std::sqrt(g.k2()[i]);
            const cplx src = I * nl.N[mu].v[i] / (2.0 * w);
            d.A_p[mu].v[i] = src;
            d.A_m[mu].v[i] = -src;
        }
        d.zmode_A[mu] = s.zmode_dA[mu];
        d.zmode_dA[mu] = nl.mean_J[mu];
    }
    return d;
}

} // namespace

StateDeriv rhs(const HalfWaveState& s, NonlinearityForm form) {
    const Grid3& g = *s.grid;
    const std::int64_t N = g.size();
    StateDeriv d = source_rhs(s, form);
    for (std::int64_t i = 0; i < N; ++i) {
        const double w = std::sqrt(s.m * s.m + g.k2()[i]);
        d.phi_p.v[i] += I * w * s.phi_p.v[i];
        d.phi_m.v[i] += -I * w * s.phi_m.v[i];
    }
    for (int mu = 0; mu < 4; ++mu)
        for (std::int64_t i = 1; i < N; ++i) {
            const double w = std::sqrt(g.k2()[i]);
            d.A_p[mu].v[i] += I * w * s.A_p[mu].v[i];
            d.A_m[mu].v[i] += -I * w * s.A_m[mu].v[i];
        }
    return d;
}

namespace {

/// Exact linear propagator phases e^{i w h} for one step size, tabulated
/// once per mode (the per-mode exp dominates the step cost otherwise).
struct PhaseTable {
    std::vector<cplx> phi; ///< e^{i <xi>_m h}
    std::vector<cplx> A;   ///< e^{i |xi| h}

    PhaseTable(const Grid3& g, double m, double h) {
        const std::int64_t N = g.size();
        phi.resize(N);
        A.resize(N);
        for (std::int64_t i = 0; i < N; ++i) {
            const double k = std::sqrt(g.k2()[i]);
            phi[i] = std::exp(I * (std::sqrt(m * m + k * k) * h));
            A[i] = std::exp(I * (k * h));
        }
    }
};

template <class S>
void propagate_fields(S& s, const PhaseTable& ph) {
    const std::int64_t N = std::int64_t(ph.phi.size());
    for (std::int64_t i = 0; i < N; ++i) {
        s.phi_p.v[i] *= ph.phi[i];
        s.phi_m.v[i] *= std::conj(ph.phi[i]);
    }
    for (int mu = 0; mu < 4; ++mu)
        for (std::int64_t i = 1; i < N; ++i) {
            s.A_p[mu].v[i] *= ph.A[i];
            s.A_m[mu].v[i] *= std::conj(ph.A[i]);
        }
}

void axpy(HalfWaveState& s, double c, const StateDeriv& d) {
    const std::int64_t N = s.grid->size();
    for (std::int64_t i = 0; i < N; ++i) {
        s.phi_p.v[i] += c * d.phi_p.v[i];
        s.phi_m.v[i] += c * d.phi_m.v[i];
    }
    for (int mu = 0; mu < 4; ++mu) {
        for (std::int64_t i = 0; i < N; ++i) {
            s.A_p[mu].v[i] += c * d.A_p[mu].v[i];
            s.A_m[mu].v[i] += c * d.A_m[mu].v[i];
        }
        s.zmode_A[mu] += c * d.zmode_A[mu];
        s.zmode_dA[mu] += c * d.zmode_dA[mu];
    }
}

void acc(StateDeriv& a, double c, const StateDeriv& d) {
    const std::int64_t N = a.phi_p.grid->size();
    for (std::int64_t i = 0; i < N; ++i) {
        a.phi_p.v[i] += c * d.phi_p.v[i];
        a.phi_m.v[i] += c * d.phi_m.v[i];
    }
    for (int mu = 0; mu < 4; ++mu) {
        for (std::int64_t i = 0; i < N; ++i) {
            a.A_p[mu].v[i] += c * d.A_p[mu].v[i];
            a.A_m[mu].v[i] += c * d.A_m[mu].v[i];
        }
        a.zmode_A[mu] += c * d.zmode_A[mu];
        a.zmode_dA[mu] += c * d.zmode_dA[mu];
    }
}

bool finite_state(const HalfWaveState& s) {
    auto ok = [](const ScalarField& f) {
        for (const cplx& z : f.v)
            if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z))) return false;
        return true;
    };
    if (!ok(s.phi_p) || !ok(s.phi_m)) return false;
    for (int mu = 0; mu < 4; ++mu) {
        if (!ok(s.A_p[mu]) || !ok(s.A_m[mu])) return false;
        if (!std::isfinite(s.zmode_A[mu]) || !std::isfinite(s.zmode_dA[mu])) return false;
    }
    return true;
}

double state_norm(const HalfWaveState& s) {
    double n2 = 0.0;
    auto add = [&](const ScalarField& f) {
        const double v = l2_norm(f);
        n2 += v * v;
    };
    add(s.phi_p);
    add(s.phi_m);
    for (int mu = 0; mu < 4; ++mu) {
        add(s.A_p[mu]);
        add(s.A_m[mu]);
        n2 += s.zmode_A[mu] * s.zmode_A[mu] + s.zmode_dA[mu] * s.zmode_dA[mu];
    }
    return std::sqrt(n2);
}

} // namespace

HalfWaveState step(const HalfWaveState& s, const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0)) throw ConfigError("step: dt must be positive");
    const double h = cfg.dt;
    const Grid3& g = *s.grid;
    const PhaseTable half(g, s.m, 0.5 * h);
    const PhaseTable full(g, s.m, h);

    StateDeriv k1 = source_rhs(s, cfg.form);

    HalfWaveState ua = s;
    axpy(ua, 0.5 * h, k1);
    propagate_fields(ua, half);
    ua.t = s.t + 0.5 * h;
    StateDeriv k2 = source_rhs(ua, cfg.form);

    HalfWaveState ub = s;
    propagate_fields(ub, half);
    axpy(ub, 0.5 * h, k2);
    ub.t = s.t + 0.5 * h;
    StateDeriv k3 = source_rhs(ub, cfg.form);

    HalfWaveState uc = s;
    propagate_fields(uc, full);
    propagate_fields(k3, half); // e^{Lh/2} k3, reused below
    axpy(uc, h, k3);
    uc.t = s.t + h;
    StateDeriv k4 = source_rhs(uc, cfg.form);

    HalfWaveState out = s;
    propagate_fields(out, full);
    propagate_fields(k1, full);
    propagate_fields(k2, half);
    acc(k1, 2.0, k2);
    acc(k1, 2.0, k3);
    acc(k1, 1.0, k4);
    axpy(out, h / 6.0, k1);
    out.t = s.t + h;

    if (!finite_state(out))
        throw BlowUpError("non-finite field values at t = " + std::to_string(out.t), out.t);
    return out;
}

EvolveResult evolve(const HalfWaveState& s0, double T, const IntegratorConfig& cfg,
                    const DiagnosticsCallback& cb, int cadence, std::vector<double> regauge_at) {
    if (T < 0.0) throw ConfigError("evolve: T must be nonnegative");
    if (cadence < 1) throw ConfigError("evolve: cadence must be >= 1");

    EvolveResult res;
    res.state = s0;
    if (cb) cb(res.state);
    if (T == 0.0) return res;

    const double t_end = s0.t + T;
    const double norm0 = state_norm(s0);
    std::sort(regauge_at.begin(), regauge_at.end());
    std::size_t next_gauge = 0;

    long k = 0;
    const double tiny = 1e-12 * std::max(1.0, std::abs(t_end));
    while (res.state.t < t_end - tiny) {
        double target = std::min(res.state.t + cfg.dt, t_end);
        if (next_gauge < regauge_at.size())
            target = std::min(target, regauge_at[next_gauge]);

        IntegratorConfig c = cfg;
        c.dt = target - res.state.t;
        res.state = step(res.state, c);
        res.state.t = target; // assign, not accumulate
        ++k;

        if (next_gauge < regauge_at.size() &&
            std::abs(res.state.t - regauge_at[next_gauge]) <= tiny) {
            const FieldTuple f = reconstruct(res.state);
            GaugeWave gw = lorenz_normalizing_wave(f);
            auto [chi, dtchi] = gw.at(0.0);
            const FieldTuple f2 = gauge_transform(f, chi, dtchi);
            res.state = state_from_tuple(f2, res.state.m, res.state.t);
            res.gauges.emplace_back(res.state.t, std::move(gw));
            ++next_gauge;
        }

        const double nrm = state_norm(res.state);
        if (!(nrm <= 1e6 * (norm0 + 1e-300)))
            throw BlowUpError("norm blow-up at t = " + std::to_string(res.state.t), res.state.t);

        if (cb && (k % cadence == 0 || !(res.state.t < t_end - tiny))) cb(res.state);
    }
    return res;
}

} // namespace mkg
