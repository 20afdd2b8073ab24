#include "mkg/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>

namespace mkg {

namespace {

constexpr char kMagic[4] = {'M', 'K', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(b[i]) << (8 * i);
    return v;
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (u >> (8 * i)) & 0xff;
    os.write(reinterpret_cast<const char*>(b), 8);
}

double get_f64(std::istream& is) {
    unsigned char b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= std::uint64_t(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

void put_field(std::ostream& os, const ScalarField& f) {
    for (const cplx& z : f.v) {
        put_f64(os, std::real(z));
        put_f64(os, std::imag(z));
    }
}

void get_field(std::istream& is, ScalarField& f) {
    for (cplx& z : f.v) {
        const double re = get_f64(is);
        const double im = get_f64(is);
        z = cplx(re, im);
    }
}

} // namespace

void write_snapshot(const HalfWaveState& s, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("cannot open snapshot file '" + path + "' for writing");
    os.write(kMagic, 4);
    put_u32(os, kVersion);
    put_u32(os, std::uint32_t(s.grid->n()));
    put_f64(os, s.grid->L());
    put_f64(os, s.m);
    put_f64(os, s.t);
    put_field(os, s.phi_p);
    put_field(os, s.phi_m);
    for (int mu = 0; mu < 4; ++mu) {
        put_field(os, s.A_p[mu]);
        put_field(os, s.A_m[mu]);
    }
    for (int mu = 0; mu < 4; ++mu) put_f64(os, s.zmode_A[mu]);
    for (int mu = 0; mu < 4; ++mu) put_f64(os, s.zmode_dA[mu]);
    if (!os) throw ConfigError("short write to snapshot file '" + path + "'");
}

HalfWaveState read_snapshot(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open snapshot file '" + path + "'");
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw ConfigError("'" + path + "' is not a field snapshot (bad magic)");
    const std::uint32_t version = get_u32(is);
    if (version != kVersion)
        throw ConfigError("snapshot version " + std::to_string(version) + " unsupported");
    const int n = int(get_u32(is));
    const double L = get_f64(is);
    const double m = get_f64(is);
    const double t = get_f64(is);

    HalfWaveState s;
    s.grid = make_grid(n, L);
    s.m = m;
    s.t = t;
    s.phi_p = make_field(s.grid, Rep::Fourier);
    s.phi_m = make_field(s.grid, Rep::Fourier);
    get_field(is, s.phi_p);
    get_field(is, s.phi_m);
    for (int mu = 0; mu < 4; ++mu) {
        s.A_p[mu] = make_field(s.grid, Rep::Fourier);
        s.A_m[mu] = make_field(s.grid, Rep::Fourier);
        get_field(is, s.A_p[mu]);
        get_field(is, s.A_m[mu]);
    }
    for (int mu = 0; mu < 4; ++mu) s.zmode_A[mu] = get_f64(is);
    for (int mu = 0; mu < 4; ++mu) s.zmode_dA[mu] = get_f64(is);
    if (!is) throw ConfigError("snapshot file '" + path + "' truncated");
    return s;
}

} // namespace mkg
