#include "doctest.h"

#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>

#include "lptx/coeff.hpp"
#include "lptx/grid.hpp"
#include "lptx/norms.hpp"
#include "lptx/random.hpp"
#include "oracles.hpp"

using namespace lptx;

TEST_CASE("make_grid validates and exposes the frequency lattice") {
  Grid g = make_grid(8, two_pi);
  CHECK(g.n == 8);
  CHECK(g.mode(0) == 0);
  CHECK(g.mode(3) == 3);
  CHECK(g.mode(4) == -4);
  CHECK(g.mode(7) == -1);
  CHECK(g.freq(3) == doctest::Approx(3.0));
  CHECK(g.band_max() == 1);

  Grid g256 = make_grid(256);
  CHECK(g256.band_max() == 6);  // dyadic bands 0..6 resolved

  CHECK_THROWS_AS(make_grid(6, two_pi), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, two_pi), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(128, -1.0), std::invalid_argument);
}

TEST_CASE("forward transform: DC and pure modes") {
  Grid g = make_grid(8);
  Field ones(g);
  for (auto& z : ones.data()) z = 1.0;
  Field spec = forward_transform(ones);
  CHECK(std::abs(spec.at(0, 0) - std::complex<double>(two_pi, 0)) < 1e-12);
  double off = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j)
      if (i != 0 || j != 0) off = std::max(off, std::abs(spec.at(i, j)));
  CHECK(off < 1e-13);

  Field mode = oracles::pure_mode(g, 3, 0);
  Field mspec = forward_transform(mode);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      double expect = (g.mode(i) == 3 && g.mode(j) == 0) ? two_pi : 0.0;
      CHECK(std::abs(mspec.at(i, j) - expect) < 1e-12);
    }
}

TEST_CASE("transform matches the direct DFT summation oracle") {
  Grid g = make_grid(8);
  Field f = random_field(g, 42);
  Field fast = forward_transform(f);
  Field slow = oracles::dft_forward(f);
  CHECK(oracles::max_diff(fast, slow) < 1e-12);

  Field back = inverse_transform(fast);
  CHECK(oracles::max_diff(back, f) < 1e-12);
}

TEST_CASE("inverse examples: delta spectrum and symmetry oracle") {
  Grid g = make_grid(8);
  Field delta(g, true);
  delta.at(0, 0) = 1.0;
  Field constant = inverse_transform(delta);
  for (const auto& z : constant.data()) CHECK(std::abs(z - constant[0]) < 1e-14);

  // Conjugate-symmetric spectrum inverts to a real field.
  Field raw(g, true);
  Rng rng(5);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) raw.at(i, j) = {rng.normal(), rng.normal()};
  Field spec(g, true);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      if (g.mode(i) == -4 || g.mode(j) == -4) continue;
      int im = (g.n - i) % g.n, jm = (g.n - j) % g.n;
      spec.at(i, j) = 0.5 * (raw.at(i, j) + std::conj(raw.at(im, jm)));
    }
  spec.at(0, 0) = std::complex<double>(spec.at(0, 0).real(), 0.0);
  Field real_field = inverse_transform(spec);
  double worst_imag = 0.0;
  for (const auto& z : real_field.data()) worst_imag = std::max(worst_imag, std::abs(z.imag()));
  CHECK(worst_imag < 1e-12);
}

TEST_CASE("Parseval, linearity and translation phase over a random bank") {
  Grid g = make_grid(32);
  for (int trial = 0; trial < 100; ++trial) {
    Field f = random_field(g, 100 + std::uint64_t(trial));
    double phys = lp_norm(f, 2.0);
    double spec = sobolev_norm(f, 0.0);
    CHECK(phys == doctest::Approx(spec).epsilon(1e-10));
  }

  Field f = random_field(g, 7), h = random_field(g, 8);
  Field lhs = forward_transform(1.75 * f + (-0.5) * h);
  Field rhs = 1.75 * forward_transform(f) + (-0.5) * forward_transform(h);
  CHECK(oracles::max_diff(lhs, rhs) < 1e-12);

  // Shift by two grid cells multiplies coefficients by exp(-i xi . h).
  int shift = 2;
  Field shifted(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) shifted.at(i, j) = f.at((i + g.n - shift) % g.n, j);
  Field spec_f = forward_transform(f);
  Field spec_s = forward_transform(shifted);
  double worst = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      auto phase = std::polar(1.0, -g.freq(i) * shift * g.spacing());
      worst = std::max(worst, std::abs(spec_s.at(i, j) - phase * spec_f.at(i, j)));
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("field dump round trips bit-exactly") {
  Grid g = make_grid(16);
  Field f = random_field(g, 11);
  f.at(3, 5) = {1e-301, -0.0};  // denormal and signed zero survive
  auto path = std::filesystem::temp_directory_path() / "lptx_dump_test.bin";
  save_field(f, path);
  Field back = load_field(path);
  CHECK(back.grid() == f.grid());
  CHECK(back.spectral() == f.spectral());
  bool identical = true;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::memcmp(&f[i], &back[i], sizeof f[i]) != 0) identical = false;
  }
  CHECK(identical);

  // Header layout: magic, u32 n, u32 flags.
  std::ifstream is(path, std::ios::binary);
  char head[16];
  is.read(head, 16);
  CHECK(std::string(head, 6) == "LPTXF1");
  std::filesystem::remove(path);

  Field spec = forward_transform(f);
  save_field(spec, path);
  CHECK(load_field(path).spectral());
  std::filesystem::remove(path);
}

TEST_CASE("transforms reject non-finite fields") {
  Grid g = make_grid(8);
  Field f(g);
  f.at(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(forward_transform(f), std::invalid_argument);
}
