#pragma once

#include <string>

#include "mkg/gauge.hpp"

namespace mkg {

/// Binary state snapshot. Layout (little-endian):
///   "MKGF" | u32 version | u32 n | f64 L | f64 m | f64 t
///   | phi+ phi- A0+ A0- A1+ A1- A2+ A2- A3+ A3-   (spectral coefficients,
///     n^3 (re,im) f64 pairs each, x-fastest index order)
///   | 8 x f64 zero-mode registers (mean A_mu, then mean dA_mu/dt).
void write_snapshot(const HalfWaveState& s, const std::string& path);
HalfWaveState read_snapshot(const std::string& path);

} // namespace mkg
