#pragma once

// Test-only oracles, kept independent of the library's transform path.

#include <cmath>
#include <complex>
#include <vector>

#include "lptx/grid.hpp"

namespace oracles {

inline constexpr double pi = 3.14159265358979323846;

// Direct O(n^4) DFT with the library's unitary normalization:
// hat f(nu) = (L / n^2) sum_x f(x) exp(-i xi_nu . x).
inline lptx::Field dft_forward(const lptx::Field& f) {
  const lptx::Grid& g = f.grid();
  lptx::Field out(g, true);
  double scale = g.length / (double(g.n) * g.n);
  for (int p = 0; p < g.n; ++p)
    for (int q = 0; q < g.n; ++q) {
      std::complex<double> acc = 0.0;
      for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
          double phase = -2.0 * pi * (double(g.mode(p)) * i + double(g.mode(q)) * j) / g.n;
          acc += f.at(i, j) * std::polar(1.0, phase);
        }
      out.at(p, q) = scale * acc;
    }
  return out;
}

inline lptx::Field dft_inverse(const lptx::Field& spec) {
  const lptx::Grid& g = spec.grid();
  lptx::Field out(g, false);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      std::complex<double> acc = 0.0;
      for (int p = 0; p < g.n; ++p)
        for (int q = 0; q < g.n; ++q) {
          double phase = 2.0 * pi * (double(g.mode(p)) * i + double(g.mode(q)) * j) / g.n;
          acc += spec.at(p, q) * std::polar(1.0, phase);
        }
      out.at(i, j) = acc / g.length;
    }
  return out;
}

// Direct multiplier application through the O(n^4) sums.
inline lptx::Field direct_apply(const std::vector<std::complex<double>>& symbol, const lptx::Field& f) {
  lptx::Field spec = dft_forward(f);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= symbol[i];
  return dft_inverse(spec);
}

// Pure mode exp(i (m1 x1 + m2 x2)) sampled on the grid.
inline lptx::Field pure_mode(const lptx::Grid& g, int m1, int m2, std::complex<double> amp = 1.0) {
  lptx::Field f(g);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      double x1 = i * g.spacing(), x2 = j * g.spacing();
      f.at(i, j) = amp * std::polar(1.0, (2.0 * pi / g.length) * (m1 * x1 + m2 * x2));
    }
  return f;
}

inline double max_diff(const lptx::Field& a, const lptx::Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace oracles
