#include "mkg/null_symbols.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace mkg {

namespace {

using vec3 = std::array<double, 3>;

double dot(const vec3& a, const vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
double norm(const vec3& a) { return std::sqrt(dot(a, a)); }
vec3 cross(const vec3& a, const vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

void require_nonzero(const SymbolSample& s) {
    if (norm(s.eta) == 0.0) throw std::domain_error("null symbol: eta must be nonzero");
    if (norm(s.zeta) == 0.0) throw std::domain_error("null symbol: zeta must be nonzero");
}

double angles(double x) { return std::sqrt(1.0 + x * x); }

} // namespace

double signed_angle(const SymbolSample& s) {
    require_nonzero(s);
    const double sg = double(s.s1) * double(s.s2);
    const double c = sg * dot(s.eta, s.zeta);
    const double x = norm(cross(s.eta, s.zeta));
    return std::atan2(x, c);
}

double symbol_a(const SymbolSample& s) {
    require_nonzero(s);
    const double zn = norm(s.zeta);
    const double sg = double(s.s1) * double(s.s2);
    return std::sqrt(s.m * s.m + zn * zn) - sg * dot(s.eta, s.zeta) / norm(s.eta);
}

std::array<double, 3> symbol_b(const SymbolSample& s) {
    require_nonzero(s);
    const double we = std::sqrt(s.m * s.m + dot(s.eta, s.eta));
    const double wz = std::sqrt(s.m * s.m + dot(s.zeta, s.zeta));
    vec3 out;
    for (int j = 0; j < 3; ++j)
        out[j] = we * s.s2 * s.zeta[j] - wz * s.s1 * s.eta[j];
    return out;
}

std::array<double, 3> symbol_c(const SymbolSample& s) {
    require_nonzero(s);
    return cross(s.eta, s.zeta);
}

SymbolBounds symbol_bounds(const SymbolSample& s) {
    const double theta = signed_angle(s);
    const double en = norm(s.eta), zn = norm(s.zeta);
    return SymbolBounds{s.m + 0.5 * zn * theta * theta,
                        s.m * (en + zn) + en * zn * theta,
                        en * zn * theta};
}

std::string BoundCheckReport::summary() const {
    std::ostringstream os;
    os << violations << " violations in " << samples << " samples"
       << "; worst ratios: a " << worst_ratio_a << ", b " << worst_ratio_b << ", c "
       << worst_ratio_c;
    return os.str();
}

BoundCheckReport check_symbol_bounds(double m, std::int64_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uz(-1.0, 1.0);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * 3.14159265358979323846);
    std::uniform_real_distribution<double> ulog(-3.0, 3.0);

    auto random_dir = [&]() -> vec3 {
        const double z = uz(rng);
        const double phi = uphi(rng);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    };

    BoundCheckReport rep;
    const int signs[4][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
    for (const auto& sg : signs) {
        for (std::int64_t k = 0; k < count; ++k) {
            SymbolSample s;
            s.m = m;
            s.s1 = sg[0];
            s.s2 = sg[1];
            const double re = std::pow(10.0, ulog(rng));
            const double rz = std::pow(10.0, ulog(rng));
            const vec3 de = random_dir(), dz = random_dir();
            for (int j = 0; j < 3; ++j) {
                s.eta[j] = re * de[j];
                s.zeta[j] = rz * dz[j];
            }
            ++rep.samples;

            const SymbolBounds bd = symbol_bounds(s);
            const double va = std::abs(symbol_a(s));
            const double vb = norm(symbol_b(s));
            const double vc = norm(symbol_c(s));
            const double en = norm(s.eta), zn = norm(s.zeta);
            // rounding guard, scaled to the magnitudes involved
            const double slack = 1e-12 * (1.0 + en * zn + m * (en + zn));

            if (va > bd.a + slack || vb > bd.b + slack || vc > bd.c + slack) ++rep.violations;
            if (bd.a > 0.0) rep.worst_ratio_a = std::max(rep.worst_ratio_a, va / bd.a);
            if (bd.b > 0.0) rep.worst_ratio_b = std::max(rep.worst_ratio_b, vb / bd.b);
            if (bd.c > 0.0) rep.worst_ratio_c = std::max(rep.worst_ratio_c, vc / bd.c);
        }
    }
    return rep;
}

double angle_probe(const SymbolSample& s, double s_exp) {
    if (s_exp < 0.0 || s_exp > 0.5)
        throw std::domain_error("angle_probe: exponent must lie in [0, 1/2]");
    require_nonzero(s);
    const double theta = signed_angle(s);
    const double en = norm(s.eta), zn = norm(s.zeta);
    const double mn = std::min(angles(en), angles(zn));
    vec3 sum;
    for (int j = 0; j < 3; ++j) sum[j] = s.eta[j] + s.zeta[j];
    const double t1 = angles(std::abs(s.lambda + s.mu) - norm(sum)) / mn;
    const double t2 =
        (angles(-s.lambda + s.s1 * en) + angles(-s.mu + s.s2 * zn)) / mn;
    const double rhs = std::pow(t1, s_exp) + std::sqrt(t2);
    return theta / rhs;
}

AngleProbeReport angle_probe_experiment(double m, std::int64_t count, std::uint64_t seed,
                                        double s_exp) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uz(-1.0, 1.0);
    std::uniform_real_distribution<double> uphi(0.0, 2.0 * 3.14159265358979323846);
    std::uniform_real_distribution<double> ulog(-3.0, 3.0);
    std::uniform_int_distribution<int> usign(0, 1);
    std::uniform_int_distribution<int> unear(0, 2);

    auto random_dir = [&]() -> vec3 {
        const double z = uz(rng);
        const double phi = uphi(rng);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        return {r * std::cos(phi), r * std::sin(phi), z};
    };

    AngleProbeReport rep;
    const int signs[4][2] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};
    for (const auto& sg : signs) {
        for (std::int64_t k = 0; k < count; ++k) {
            SymbolSample s;
            s.m = m;
            s.s1 = sg[0];
            s.s2 = sg[1];
            const double re = std::pow(10.0, ulog(rng));
            const double rz = std::pow(10.0, ulog(rng));
            const vec3 de = random_dir(), dz = random_dir();
            for (int j = 0; j < 3; ++j) {
                s.eta[j] = re * de[j];
                s.zeta[j] = rz * dz[j];
            }
            // temporal frequencies: free, near-cone, or on-cone
            auto pick = [&](double r, int sgn) {
                const int mode = unear(rng);
                if (mode == 0) return (usign(rng) ? 1.0 : -1.0) * std::pow(10.0, ulog(rng));
                if (mode == 1) return sgn * r + (usign(rng) ? 1.0 : -1.0) * std::pow(10.0, ulog(rng)) * 1e-2;
                return double(sgn) * r;
            };
            s.lambda = pick(re, s.s1);
            s.mu = pick(rz, s.s2);
            ++rep.samples;
            const double ratio = angle_probe(s, s_exp);
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.argmax = s;
            }
        }
    }
    return rep;
}

} // namespace mkg
