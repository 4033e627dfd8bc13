#pragma once

#include <memory>
#include <vector>

#include "shearmhd/spectral.hpp"

namespace shearmhd {

// FFTW-backed physical <-> spectral transforms for one grid.
// Plans are built with FFTW_ESTIMATE, so the same grid always gets the same
// plan and results are bit-reproducible.
class Transformer {
 public:
  explicit Transformer(const Grid& g);
  ~Transformer();
  Transformer(const Transformer&) = delete;
  Transformer& operator=(const Transformer&) = delete;

  const Grid& grid() const { return grid_; }

  // phys(x_i, y_j) = Σ c(k,η) e^{i(k x_i + η y_j)}
  void to_physical(const cplx* spec, cplx* phys) const;
  // c = (1/n_x n_y) Σ phys e^{−i(...)}, optionally truncated to the dealias set
  void to_spectral(const cplx* phys, cplx* spec, bool dealias = true) const;

  // Two real fields through one complex transform: phys = a + i·b.
  void pair_to_physical(const cplx* a, const cplx* b, cplx* phys) const;
  // Inverse of the above for real physical data p, q packed as p + i·q.
  void pair_to_spectral(const cplx* phys, cplx* a, cplx* b, bool dealias = true) const;

 private:
  Grid grid_;
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

// Shared, lazily created transformer for a grid (plan creation is serialized).
std::shared_ptr<const Transformer> transformer_for(const Grid& g);

std::vector<cplx> to_physical(const SpectralField& f);
SpectralField to_spectral(const std::vector<cplx>& phys, const Grid& g, std::string label = {},
                          bool dealias = true);

// Coefficients of the pointwise product a·b, 2/3-dealiased.
SpectralField transform_product(const SpectralField& a, const SpectralField& b);

}  // namespace shearmhd
