#include "shearmhd/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "shearmhd/errors.hpp"

namespace shearmhd {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

namespace {
constexpr char kMagic[8] = {'S', 'M', 'H', 'D', 'S', 'N', 'A', 'P'};

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw ConfigError("truncated snapshot");
  return v;
}
}  // namespace

void write_snapshot(const std::string& path, const SpectralField& f, double t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open snapshot for writing: " + path);
  const Grid& g = f.grid();
  os.write(kMagic, sizeof kMagic);
  put<uint32_t>(os, 1);
  put<uint32_t>(os, static_cast<uint32_t>(g.n_x));
  put<uint32_t>(os, static_cast<uint32_t>(g.n_y));
  put<double>(os, g.L_y);
  put<double>(os, g.dealias_fraction);
  put<double>(os, t);
  put<uint32_t>(os, static_cast<uint32_t>(f.label().size()));
  os.write(f.label().data(), static_cast<std::streamsize>(f.label().size()));
  for (int k = -g.n_x / 2; k < g.n_x / 2; ++k)
    for (int m = -g.n_y / 2; m < g.n_y / 2; ++m) {
      const cplx c = f.mode(k, m);
      put<float>(os, static_cast<float>(c.real()));
      put<float>(os, static_cast<float>(c.imag()));
    }
  if (!os) throw ConfigError("failed writing snapshot: " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot open snapshot: " + path);
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw ConfigError("not a spectral snapshot: " + path);
  if (get<uint32_t>(is) != 1) throw ConfigError("unsupported snapshot version");
  const int n_x = static_cast<int>(get<uint32_t>(is));
  const int n_y = static_cast<int>(get<uint32_t>(is));
  const double L_y = get<double>(is);
  const double frac = get<double>(is);
  const double t = get<double>(is);
  const uint32_t len = get<uint32_t>(is);
  std::string label(len, '\0');
  is.read(label.data(), len);
  Grid g = make_grid(n_x, n_y, L_y, frac);
  Snapshot s{SpectralField(g, label), t};
  for (int k = -n_x / 2; k < n_x / 2; ++k)
    for (int m = -n_y / 2; m < n_y / 2; ++m) {
      const float re = get<float>(is);
      const float im = get<float>(is);
      s.field.mode(k, m) = cplx(re, im);
    }
  return s;
}

}  // namespace shearmhd
