#pragma once

#include <random>

#include "shearmhd/spectral.hpp"

namespace testutil {

using shearmhd::cplx;
using shearmhd::Grid;
using shearmhd::SpectralField;

// Random real field (conjugate-symmetric), supported on |k| ≤ kb, |m| ≤ mb,
// zero mean mode.
inline SpectralField random_real_field(const Grid& g, std::mt19937_64& rng, int kb, int mb,
                                       double amp = 1.0) {
  std::normal_distribution<double> n(0.0, amp);
  SpectralField f(g);
  for (int k = -kb; k <= kb; ++k)
    for (int m = -mb; m <= mb; ++m) {
      if (!g.contains(k, m) || !g.contains(-k, -m)) continue;
      if (k == 0 && m == 0) continue;
      if (k < 0 || (k == 0 && m < 0)) continue;
      const cplx c(n(rng), n(rng));
      f.mode(k, m) = c;
      f.mode(-k, -m) = std::conj(c);
    }
  return f;
}

inline double rel_diff(const SpectralField& a, const SpectralField& b) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.data().size(); ++i) {
    num += std::norm(a.data()[i] - b.data()[i]);
    den += std::norm(b.data()[i]);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

}  // namespace testutil
