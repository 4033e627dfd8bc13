#include "shearmhd/transform.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "shearmhd/errors.hpp"

namespace shearmhd {

namespace {
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }
}  // namespace

Transformer::Transformer(const Grid& g) : grid_(g) {
  std::lock_guard<std::mutex> lock(plan_mutex());
  std::vector<cplx> buf(static_cast<size_t>(g.size()));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  fwd_ = fftw_plan_dft_2d(g.n_x, g.n_y, as_fftw(buf.data()), as_fftw(buf.data()), FFTW_FORWARD,
                          flags);
  bwd_ = fftw_plan_dft_2d(g.n_x, g.n_y, as_fftw(buf.data()), as_fftw(buf.data()), FFTW_BACKWARD,
                          flags);
  if (!fwd_ || !bwd_) throw ConfigError("FFTW plan creation failed");
}

Transformer::~Transformer() {
  std::lock_guard<std::mutex> lock(plan_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

void Transformer::to_physical(const cplx* spec, cplx* phys) const {
  if (spec != phys) std::copy(spec, spec + grid_.size(), phys);
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), as_fftw(phys), as_fftw(phys));
}

void Transformer::to_spectral(const cplx* phys, cplx* spec, bool dealias) const {
  if (spec != phys) std::copy(phys, phys + grid_.size(), spec);
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(spec), as_fftw(spec));
  const double scale = 1.0 / grid_.size();
  for (int ix = 0; ix < grid_.n_x; ++ix)
    for (int iy = 0; iy < grid_.n_y; ++iy) {
      cplx& c = spec[grid_.index(ix, iy)];
      c = (dealias && !grid_.retained(ix, iy)) ? cplx{} : c * scale;
    }
}

void Transformer::pair_to_physical(const cplx* a, const cplx* b, cplx* phys) const {
  const int n = grid_.size();
  for (int i = 0; i < n; ++i) phys[i] = a[i] + cplx(-b[i].imag(), b[i].real());
  fftw_execute_dft(static_cast<fftw_plan>(bwd_), as_fftw(phys), as_fftw(phys));
}

void Transformer::pair_to_spectral(const cplx* phys, cplx* a, cplx* b, bool dealias) const {
  // a is used as scratch for the packed spectrum Z.
  std::copy(phys, phys + grid_.size(), a);
  fftw_execute_dft(static_cast<fftw_plan>(fwd_), as_fftw(a), as_fftw(a));
  const double scale = 0.5 / grid_.size();
  // Walk each conjugate pair once so Z can be overwritten in place.
  for (int ix = 0; ix < grid_.n_x; ++ix)
    for (int iy = 0; iy < grid_.n_y; ++iy) {
      const int i = grid_.index(ix, iy);
      const int j = grid_.conj_index(ix, iy);
      if (j < i) continue;
      const cplx zi = a[i], zj = a[j];
      const bool keep = !dealias || grid_.retained(ix, iy);
      // P(k) = (Z(k) + conj Z(−k))/2, Q(k) = (Z(k) − conj Z(−k))/(2i)
      const cplx pi = (zi + std::conj(zj)) * scale;
      const cplx qi = (zi - std::conj(zj)) * scale;
      const cplx pj = (zj + std::conj(zi)) * scale;
      const cplx qj = (zj - std::conj(zi)) * scale;
      // The retained set is symmetric under (k,η) → (−k,−η) except at Nyquist
      // rows, where both indices see the same predicate result.
      a[i] = keep ? pi : cplx{};
      b[i] = keep ? cplx(qi.imag(), -qi.real()) : cplx{};
      if (j != i) {
        a[j] = keep ? pj : cplx{};
        b[j] = keep ? cplx(qj.imag(), -qj.real()) : cplx{};
      }
    }
}

std::shared_ptr<const Transformer> transformer_for(const Grid& g) {
  using Key = std::tuple<int, int, double, double>;
  static std::mutex m;
  static std::map<Key, std::shared_ptr<const Transformer>> cache;
  Key key{g.n_x, g.n_y, g.L_y, g.dealias_fraction};
  std::lock_guard<std::mutex> lock(m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto tr = std::make_shared<const Transformer>(g);
  cache.emplace(key, tr);
  return tr;
}

std::vector<cplx> to_physical(const SpectralField& f) {
  std::vector<cplx> phys(static_cast<size_t>(f.grid().size()));
  transformer_for(f.grid())->to_physical(f.data().data(), phys.data());
  return phys;
}

SpectralField to_spectral(const std::vector<cplx>& phys, const Grid& g, std::string label,
                          bool dealias) {
  if (static_cast<int>(phys.size()) != g.size()) throw ConfigError("physical array size mismatch");
  SpectralField f(g, std::move(label));
  transformer_for(g)->to_spectral(phys.data(), f.data().data(), dealias);
  return f;
}

SpectralField transform_product(const SpectralField& a, const SpectralField& b) {
  require_same_grid(a, b);
  const Grid& g = a.grid();
  auto tr = transformer_for(g);
  std::vector<cplx> pa(static_cast<size_t>(g.size())), pb(pa.size());
  tr->to_physical(a.data().data(), pa.data());
  tr->to_physical(b.data().data(), pb.data());
  for (size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
  SpectralField out(g);
  tr->to_spectral(pa.data(), out.data().data(), true);
  return out;
}

}  // namespace shearmhd
