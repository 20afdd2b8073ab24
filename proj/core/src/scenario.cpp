#include "mkg/scenario.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mkg/snapshot.hpp"

namespace mkg {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') { out.push_back(trim(cur)); cur.clear(); }
        else cur += c;
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

[[noreturn]] void bad(int lineno, const std::string& key, const std::string& why) {
    throw ConfigError("config line " + std::to_string(lineno) + ", field '" + key + "': " + why);
}

} // namespace

ScenarioConfig parse_config(std::istream& in) {
    ScenarioConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));

        try {
            if (key == "grid.n") cfg.n = std::stoi(val);
            else if (key == "grid.L") cfg.L = std::stod(val);
            else if (key == "physics.m") cfg.m = std::stod(val);
            else if (key == "time.dt") cfg.dt = std::stod(val);
            else if (key == "time.T") cfg.T = std::stod(val);
            else if (key == "time.cadence") cfg.cadence = std::stoi(val);
            else if (key == "data.preset") {
                if (val == "decoupled_real") cfg.preset = Preset::DecoupledReal;
                else if (val == "gaussian_pulse") cfg.preset = Preset::GaussianPulse;
                else if (val == "neutral_pair") cfg.preset = Preset::NeutralPair;
                else if (val == "from_snapshot") cfg.preset = Preset::FromSnapshot;
                else bad(lineno, key, "unknown preset '" + val + "'");
            } else if (key == "data.snapshot") cfg.snapshot_in = val;
            else if (key == "data.amplitude") cfg.amplitude = std::stod(val);
            else if (key == "data.width") cfg.width = std::stod(val);
            else if (key == "data.mode") {
                const auto parts = split_list(val);
                if (parts.size() != 3) bad(lineno, key, "expected three comma-separated integers");
                for (int j = 0; j < 3; ++j) cfg.mode[j] = std::stoi(parts[j]);
            } else if (key == "data.omega") cfg.omega = std::stod(val);
            else if (key == "data.velocity") {
                const auto parts = split_list(val);
                if (parts.size() != 3) bad(lineno, key, "expected three comma-separated reals");
                for (int j = 0; j < 3; ++j) cfg.velocity[j] = std::stod(parts[j]);
            } else if (key == "data.em_amplitude") cfg.em_amplitude = std::stod(val);
            else if (key == "data.charge_imbalance") cfg.charge_imbalance = std::stod(val);
            else if (key == "nonlinearity_form") {
                if (val == "decomposed") cfg.form = NonlinearityForm::Decomposed;
                else if (val == "direct") cfg.form = NonlinearityForm::Direct;
                else bad(lineno, key, "expected decomposed|direct");
            } else if (key == "regauge_at") {
                for (const auto& p : split_list(val))
                    if (!p.empty()) cfg.regauge_at.push_back(std::stod(p));
            } else if (key == "output.csv") cfg.csv_path = val;
            else if (key == "output.snapshot_cadence") cfg.snapshot_cadence = std::stoi(val);
            else if (key == "output.snapshot_path") cfg.snapshot_path = val;
            else if (key == "seed") cfg.seed = std::stoull(val);
            else bad(lineno, key, "unknown key");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            bad(lineno, key, "cannot parse value '" + val + "'");
        }
    }
    if (!(cfg.dt > 0.0)) throw ConfigError("config: time.dt must be positive");
    if (cfg.T < 0.0) throw ConfigError("config: time.T must be nonnegative");
    if (cfg.T > 0.0 && cfg.dt > cfg.T) throw ConfigError("config: time.dt must not exceed time.T");
    if (!(cfg.m > 0.0)) throw ConfigError("config: physics.m must be positive");
    if (cfg.cadence < 1) throw ConfigError("config: time.cadence must be >= 1");
    return cfg;
}

ScenarioConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

ScalarField periodic_bump(GridPtr g, const std::array<double, 3>& center, double kappa,
                          double amplitude) {
    ScalarField f = make_field(g, Rep::Space, Reality::Real);
    const int n = g->n();
    const double h = g->dx();
    const double w = 2.0 * std::numbers::pi / g->L();
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const double cx = std::cos(w * (ix * h - center[0]));
                const double cy = std::cos(w * (iy * h - center[1]));
                const double cz = std::cos(w * (iz * h - center[2]));
                f.v[g->index(ix, iy, iz)] =
                    amplitude * std::exp(kappa * (cx + cy + cz - 3.0));
            }
    return f;
}

namespace {

void mask_in_place(ScalarField& f) {
    ScalarField fh = to_fourier(f);
    apply_mask(fh);
    const Reality r = f.reality;
    f = to_space(fh);
    f.reality = r;
}

/// phi0 = g e^{i p.x}, phi1 = i(omega g - lambda) e^{i p.x} - v.grad phi0,
/// with lambda fixing total charge to zero.
void complex_lump(const ScenarioConfig& cfg, GridPtr g, ScalarField& phi0, ScalarField& phi1) {
    const double w = 2.0 * std::numbers::pi / cfg.L;
    const double kappa = 1.0 / (w * w * cfg.width * cfg.width);
    const std::array<double, 3> c{cfg.L / 2, cfg.L / 2, cfg.L / 2};
    const ScalarField bump = periodic_bump(g, c, kappa, cfg.amplitude);

    double sum_g = 0.0, sum_g2 = 0.0;
    for (const cplx& z : bump.v) {
        sum_g += std::real(z);
        sum_g2 += std::real(z) * std::real(z);
    }
    const std::array<double, 3> p{w * cfg.mode[0], w * cfg.mode[1], w * cfg.mode[2]};
    const double vdotp =
        cfg.velocity[0] * p[0] + cfg.velocity[1] * p[1] + cfg.velocity[2] * p[2];
    const double lambda = sum_g > 1e-300 ? (cfg.omega - vdotp) * sum_g2 / sum_g : 0.0;

    phi0 = make_field(g, Rep::Space);
    phi1 = make_field(g, Rep::Space);
    const int n = g->n();
    const double h = g->dx();
    for (int iz = 0; iz < n; ++iz)
        for (int iy = 0; iy < n; ++iy)
            for (int ix = 0; ix < n; ++ix) {
                const std::int64_t id = g->index(ix, iy, iz);
                const double phase = p[0] * ix * h + p[1] * iy * h + p[2] * iz * h;
                const cplx e = std::exp(cplx(0.0, phase));
                const double gg = std::real(bump.v[id]);
                phi0.v[id] = gg * e;
                phi1.v[id] = cplx(0.0, 1.0) * (cfg.omega * gg - lambda) * e;
            }
    // transport part -v.grad phi0
    if (cfg.velocity[0] != 0.0 || cfg.velocity[1] != 0.0 || cfg.velocity[2] != 0.0) {
        const VectorField3 gp = gradient(phi0);
        for (int j = 0; j < 3; ++j) {
            const ScalarField d = to_space(gp.comp(j));
            for (std::int64_t i = 0; i < phi1.size(); ++i)
                phi1.v[i] -= cfg.velocity[j] * d.v[i];
        }
    }
    mask_in_place(phi0);
    mask_in_place(phi1);

    // cancel the residual charge the truncation left behind:
    // phi1 += i c phi0 shifts Im(phi0 conj(phi1)) by -c |phi0|^2
    const double q = total_charge(phi0, phi1) / g->volume();
    double p2 = 0.0;
    for (const cplx& z : phi0.v) p2 += std::norm(z);
    p2 /= double(g->size());
    if (p2 > 0.0) {
        const double c = q / p2;
        for (std::int64_t i = 0; i < phi1.size(); ++i)
            phi1.v[i] += cplx(0.0, c) * phi0.v[i];
    }
}

} // namespace

CauchyData build_preset(const ScenarioConfig& cfg, GridPtr g) {
    CauchyData cd;
    cd.m = cfg.m;
    const double w = 2.0 * std::numbers::pi / cfg.L;
    const double kappa = 1.0 / (w * w * cfg.width * cfg.width);
    const std::array<double, 3> mid{cfg.L / 2, cfg.L / 2, cfg.L / 2};

    switch (cfg.preset) {
        case Preset::DecoupledReal: {
            cd.phi0 = periodic_bump(g, mid, kappa, cfg.amplitude);
            cd.phi1 = periodic_bump(g, {cfg.L / 2 + cfg.L / 8, cfg.L / 2, cfg.L / 2}, kappa,
                                    0.3 * cfg.amplitude);
            mask_in_place(cd.phi0);
            mask_in_place(cd.phi1);
            cd.E0 = make_vector(g, Rep::Space, Reality::Real);
            cd.B0 = make_vector(g, Rep::Space, Reality::Real);
            return cd;
        }
        case Preset::GaussianPulse: {
            ScalarField phi0, phi1;
            complex_lump(cfg, g, phi0, phi1);
            cd.phi0 = std::move(phi0);
            cd.phi1 = std::move(phi1);

            // Divergence-free electromagnetic seed fields from curls of
            // off-center bumps.
            const ScalarField psiE = periodic_bump(
                g, {cfg.L / 2 + cfg.L / 4, cfg.L / 2, cfg.L / 2}, kappa, cfg.em_amplitude);
            const ScalarField psiB = periodic_bump(
                g, {cfg.L / 2, cfg.L / 2 + cfg.L / 4, cfg.L / 2}, kappa, cfg.em_amplitude);
            VectorField3 vE = make_vector(g, Rep::Space, Reality::Real);
            vE.z = psiE;
            VectorField3 vB = make_vector(g, Rep::Space, Reality::Real);
            vB.x = psiB;
            VectorField3 E0df = curl(vE);
            cd.B0 = curl(vB);
            for (int j = 0; j < 3; ++j) {
                E0df.comp(j) = to_space(E0df.comp(j));
                E0df.comp(j).reality = Reality::Real;
                cd.B0.comp(j) = to_space(cd.B0.comp(j));
                cd.B0.comp(j).reality = Reality::Real;
                mask_in_place(E0df.comp(j));
                mask_in_place(cd.B0.comp(j));
            }
            cd.E0 = complete_electric_data(cd.phi0, cd.phi1, E0df);
            return cd;
        }
        case Preset::NeutralPair: {
            const ScalarField g1 =
                periodic_bump(g, {cfg.L / 4, cfg.L / 2, cfg.L / 2}, kappa, cfg.amplitude);
            const ScalarField g2 = periodic_bump(g, {3 * cfg.L / 4, cfg.L / 2, cfg.L / 2}, kappa,
                                                 cfg.amplitude * (1.0 + cfg.charge_imbalance));
            cd.phi0 = make_field(g, Rep::Space);
            cd.phi1 = make_field(g, Rep::Space);
            const int n = g->n();
            const double h = g->dx();
            const std::array<double, 3> p{w * cfg.mode[0], w * cfg.mode[1], w * cfg.mode[2]};
            for (int iz = 0; iz < n; ++iz)
                for (int iy = 0; iy < n; ++iy)
                    for (int ix = 0; ix < n; ++ix) {
                        const std::int64_t id = g->index(ix, iy, iz);
                        const double phase = p[0] * ix * h + p[1] * iy * h + p[2] * iz * h;
                        const cplx e1 = std::exp(cplx(0.0, phase));
                        const cplx e2 = std::conj(e1);
                        cd.phi0.v[id] = std::real(g1.v[id]) * e1 + std::real(g2.v[id]) * e2;
                        cd.phi1.v[id] = cplx(0.0, cfg.omega) *
                                        (std::real(g1.v[id]) * e1 - std::real(g2.v[id]) * e2);
                    }
            mask_in_place(cd.phi0);
            mask_in_place(cd.phi1);
            cd.B0 = make_vector(g, Rep::Space, Reality::Real);
            cd.E0 = complete_electric_data(cd.phi0, cd.phi1,
                                           make_vector(g, Rep::Space, Reality::Real));
            return cd;
        }
        case Preset::FromSnapshot:
            throw UsageError("build_preset: from_snapshot is restored, not built");
    }
    throw ConfigError("unknown preset");
}

HalfWaveState initial_state(const ScenarioConfig& cfg, GridPtr g) {
    if (cfg.preset == Preset::FromSnapshot) {
        if (cfg.snapshot_in.empty())
            throw ConfigError("config: data.snapshot required for from_snapshot");
        return read_snapshot(cfg.snapshot_in);
    }
    CauchyData cd = build_preset(cfg, g);
    validate(cd);
    const PotentialData pd = build_potential_data(cd);
    return split_half_waves(cd, pd);
}

} // namespace mkg
