#pragma once

#include <string>

#include "shearmhd/spectral.hpp"

namespace shearmhd {

// Binary spectral snapshot, little-endian:
//   char[8]  magic "SMHDSNAP"
//   u32      version (1)
//   u32      n_x, u32 n_y
//   f64      L_y, f64 dealias_fraction, f64 t
//   u32      label length, then label bytes (UTF-8, no terminator)
//   n_x·n_y  pairs of f32 (re, im), row-major: rows k = −n_x/2 … n_x/2−1,
//            columns m = −n_y/2 … n_y/2−1 (η = m·2π/L_y)
struct Snapshot {
  SpectralField field;
  double t = 0.0;
};

void write_snapshot(const std::string& path, const SpectralField& f, double t);
Snapshot read_snapshot(const std::string& path);

}  // namespace shearmhd
