#include <cmath>
#include <cstdio>
#include <numbers>

#include "doctest.h"
#include "shearmhd/errors.hpp"
#include "shearmhd/snapshot.hpp"
#include "shearmhd/spectral.hpp"
#include "shearmhd/transform.hpp"
#include "test_util.hpp"

using namespace shearmhd;
using testutil::random_real_field;
using testutil::rel_diff;

constexpr double kPi = std::numbers::pi;

TEST_CASE("make_grid enumerates wavenumbers") {
  Grid g = make_grid(8, 8, 2 * kPi, 2.0 / 3.0);
  auto ks = g.k_values();
  auto es = g.eta_values();
  REQUIRE(ks.size() == 8);
  CHECK(ks.front() == -4);
  CHECK(ks.back() == 3);
  CHECK(es.front() == doctest::Approx(-4.0));
  CHECK(es.back() == doctest::Approx(3.0));
  CHECK(g.k_cut == 2);

  Grid h = make_grid(8, 8, 4 * kPi, 2.0 / 3.0);
  CHECK(h.d_eta() == doctest::Approx(0.5));
  CHECK(h.eta_values()[1] - h.eta_values()[0] == doctest::Approx(0.5));

  Grid full = make_grid(16, 32, 2 * kPi, 1.0);
  CHECK(full.size() == 16 * 32);
  CHECK(full.k_cut == 8);
  CHECK(full.m_cut == 16);
  for (int ix = 0; ix < full.n_x; ++ix)
    for (int iy = 0; iy < full.n_y; ++iy) CHECK(full.retained(ix, iy));

  // 2/3 rule leaves no aliasing of quadratic products.
  for (int n : {8, 16, 64, 128, 256}) {
    Grid q = make_grid(n, n);
    CHECK(3 * q.k_cut < n);
    CHECK(3 * q.k_cut >= n - 3);
  }
}

TEST_CASE("make_grid rejects bad sizes") {
  CHECK_THROWS_AS(make_grid(12, 8), ConfigError);
  CHECK_THROWS_AS(make_grid(4, 8), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 8, 0.0), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 8, -1.0), ConfigError);
}

TEST_CASE("moving symbols") {
  CHECK(moving_symbol(Symbol::laplacian_t, 2, 3.0, 1.0).real() == doctest::Approx(-5.0));
  for (int k = -3; k <= 3; ++k)
    for (double eta : {-2.0, 0.0, 1.5})
      CHECK(moving_symbol(Symbol::laplacian_t, k, eta, 0.0).real() ==
            doctest::Approx(-(k * k + eta * eta)));
  CHECK(moving_symbol(Symbol::inv_laplacian_t, 1, 2.5, 2.5).real() == doctest::Approx(-1.0));
  CHECK(moving_symbol(Symbol::grad_t_x, 3, 1.0, 2.0) == cplx(0, 3));
  CHECK(moving_symbol(Symbol::grad_t_y, 3, 1.0, 2.0) == cplx(0, -5));
  CHECK(moving_symbol(Symbol::lambda_t, 1, 0.0, 4.0).real() == doctest::Approx(std::sqrt(17.0)));
  CHECK_THROWS_AS(moving_symbol(Symbol::inv_laplacian_t, 0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(moving_symbol(Symbol::inv_lambda_t, 0, 0.0, 1.0), DomainError);

  for (int k = -5; k <= 5; ++k)
    for (double eta = -4.0; eta <= 4.0; eta += 0.5) {
      if (k == 0 && eta == 0.0) continue;
      for (double t : {0.0, 0.7, 13.0}) {
        cplx a = moving_symbol(Symbol::laplacian_t, k, eta, t);
        cplx b = moving_symbol(Symbol::inv_laplacian_t, k, eta, t);
        CHECK(std::abs(a * b - 1.0) < 1e-14);
        cplx c = moving_symbol(Symbol::lambda_t, k, eta, t);
        cplx d = moving_symbol(Symbol::inv_lambda_t, k, eta, t);
        CHECK(std::abs(c * d - 1.0) < 1e-14);
      }
    }
}

TEST_CASE("apply_multiplier") {
  Grid g = make_grid(8, 8);
  std::mt19937_64 rng(1);
  SpectralField zero(g);
  auto out = apply_multiplier(zero, Symbol::laplacian_t, 1.0);
  CHECK(out.max_abs() == 0.0);

  auto f = random_real_field(g, rng, 3, 3);
  auto id = apply_multiplier(f, [](int, double, double) { return cplx(1.0); }, 0.3);
  CHECK(rel_diff(id, f) == 0.0);

  SpectralField delta(g);
  delta.mode(1, 0) = 1.0;
  auto lap = apply_multiplier(delta, Symbol::laplacian_t, 2.0);
  CHECK(lap.mode(1, 0).real() == doctest::Approx(-5.0));

  // Real symbol keeps reality; i·k is odd and also keeps it.
  CHECK(apply_multiplier(f, Symbol::laplacian_t, 0.8).symmetry_defect() < 1e-14);
  CHECK(apply_multiplier(f, Symbol::grad_t_y, 0.8).symmetry_defect() < 1e-14);

  // singular symbol meeting the mean mode
  SpectralField mean(g);
  mean.mode(0, 0) = 1.0;
  CHECK_THROWS_AS(apply_multiplier(mean, Symbol::inv_laplacian_t, 0.0), DomainError);
  auto pnz = project(f, Part::nonzero_modes);
  CHECK_NOTHROW(apply_multiplier(pnz, Symbol::inv_laplacian_t, 0.0));
}

TEST_CASE("projections") {
  Grid g = make_grid(16, 8);
  std::mt19937_64 rng(2);
  auto f = random_real_field(g, rng, 5, 3);
  auto p0 = project(f, Part::zero_mode);
  auto pn = project(f, Part::nonzero_modes);
  CHECK(rel_diff(p0 + pn, f) == 0.0);
  CHECK(rel_diff(project(p0, Part::zero_mode), p0) == 0.0);
  SpectralField k1(g);
  k1.mode(1, 2) = 1.0;
  CHECK(project(k1, Part::zero_mode).max_abs() == 0.0);
}

namespace {
SpectralField brute_product(const SpectralField& a, const SpectralField& b) {
  const Grid& g = a.grid();
  SpectralField out(g);
  for (int ix = 0; ix < g.n_x; ++ix)
    for (int iy = 0; iy < g.n_y; ++iy) {
      if (!g.retained(ix, iy)) continue;
      const int k = g.k_of(ix), m = g.m_of(iy);
      cplx s = 0.0;
      for (int k1 = -g.n_x; k1 <= g.n_x; ++k1)
        for (int m1 = -g.n_y; m1 <= g.n_y; ++m1) {
          const int k2 = k - k1, m2 = m - m1;
          if (!g.contains(k1, m1) || !g.contains(k2, m2)) continue;
          s += a.mode(k1, m1) * b.mode(k2, m2);
        }
      out(ix, iy) = s;
    }
  return out;
}
}  // namespace

TEST_CASE("transform_product") {
  Grid g = make_grid(8, 8);
  std::mt19937_64 rng(3);
  auto b = random_real_field(g, rng, 3, 3);
  SpectralField one(g);
  one.mode(0, 0) = 1.0;
  auto d = b;
  d.dealias();
  CHECK(rel_diff(transform_product(one, b), d) < 1e-14);

  SpectralField e(g);
  e.mode(1, 0) = 1.0;
  auto e2 = transform_product(e, e);
  CHECK(std::abs(e2.mode(2, 0) - 1.0) < 1e-14);
  e2.mode(2, 0) = 0.0;
  CHECK(e2.max_abs() < 1e-14);

  for (int trial = 0; trial < 5; ++trial) {
    auto x = random_real_field(g, rng, g.k_cut, g.m_cut);
    auto y = random_real_field(g, rng, g.k_cut, g.m_cut);
    CHECK(rel_diff(transform_product(x, y), brute_product(x, y)) < 1e-12);
  }
  // 16×16 with a non-2π period
  Grid h = make_grid(16, 16, 3.0);
  for (int trial = 0; trial < 3; ++trial) {
    auto x = random_real_field(h, rng, h.k_cut, h.m_cut);
    auto y = random_real_field(h, rng, h.k_cut, h.m_cut);
    auto p = transform_product(x, y);
    CHECK(rel_diff(p, brute_product(x, y)) < 1e-12);
    CHECK(p.symmetry_defect() < 1e-13 * p.max_abs());
    CHECK(p.is_dealiased());
  }
  Grid other = make_grid(16, 8);
  CHECK_THROWS_AS(transform_product(SpectralField(g), SpectralField(other)), ConfigError);
}

TEST_CASE("transform round trip and reality") {
  Grid g = make_grid(32, 64, 5.0, 1.0);
  std::mt19937_64 rng(4);
  auto f = random_real_field(g, rng, 15, 31);
  auto phys = to_physical(f);
  double imag = 0.0, re = 0.0;
  for (auto& v : phys) {
    imag = std::max(imag, std::abs(v.imag()));
    re = std::max(re, std::abs(v.real()));
  }
  CHECK(imag <= 1e-12 * re);
  auto back = to_spectral(phys, g, "", false);
  CHECK(rel_diff(back, f) < 1e-12);

  // Parseval: mean |f|² = Σ|c|²
  double mean = 0.0;
  for (auto& v : phys) mean += std::norm(v);
  mean /= g.size();
  CHECK(std::abs(mean - f.norm2()) < 1e-12 * f.norm2());

  // packed pair transforms agree with single transforms
  auto tr = transformer_for(g);
  auto f2 = random_real_field(g, rng, 10, 20);
  std::vector<cplx> packed(g.size()), s1(g.size()), s2(g.size());
  tr->pair_to_physical(f.data().data(), f2.data().data(), packed.data());
  auto p2 = to_physical(f2);
  for (int i = 0; i < g.size(); ++i) {
    CHECK(std::abs(packed[i].real() - phys[i].real()) < 1e-11);
    CHECK(std::abs(packed[i].imag() - p2[i].real()) < 1e-11);
  }
  tr->pair_to_spectral(packed.data(), s1.data(), s2.data(), false);
  double e1 = 0.0, e2 = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    e1 = std::max(e1, std::abs(s1[i] - f.data()[i]));
    e2 = std::max(e2, std::abs(s2[i] - f2.data()[i]));
  }
  CHECK(e1 < 1e-12);
  CHECK(e2 < 1e-12);
}

TEST_CASE("transforms are deterministic") {
  Grid g = make_grid(64, 32);
  std::mt19937_64 rng(5);
  auto a = random_real_field(g, rng, 20, 10);
  auto b = random_real_field(g, rng, 20, 10);
  auto p1 = transform_product(a, b);
  auto p2 = transform_product(a, b);
  CHECK(p1.data() == p2.data());
}

TEST_CASE("snapshot round trip") {
  Grid g = make_grid(16, 8, 3.5);
  std::mt19937_64 rng(6);
  auto f = random_real_field(g, rng, 4, 3);
  f.set_label("phi");
  const std::string path = "test_snapshot.bin";
  write_snapshot(path, f, 1.25);
  auto s = read_snapshot(path);
  CHECK(s.t == 1.25);
  CHECK(s.field.label() == "phi");
  CHECK(s.field.grid() == g);
  CHECK(rel_diff(s.field, f) < 1e-6);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_snapshot("does_not_exist.bin"), ConfigError);
}
