#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

namespace lptx {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// Periodic grid on the 2-torus [0, L)^2 with a power-of-two point count per
/// axis. Frequencies live on the integer lattice {-n/2, ..., n/2-1}^2 scaled
/// by 2*pi/L and are stored in DFT order (0, 1, ..., n/2-1, -n/2, ..., -1).
struct Grid {
  int n = 0;
  double length = two_pi;

  double spacing() const { return length / n; }
  double cell_area() const { return spacing() * spacing(); }

  /// Highest dyadic band fully resolved by the lattice: log2(n/2) - 1.
  int band_max() const;

  /// Signed integer mode for a storage index along one axis.
  int mode(int index) const { return index <= n / 2 - 1 ? index : index - n; }

  /// Frequency component of a storage index (mode scaled by 2*pi/L).
  double freq(int index) const { return mode(index) * (two_pi / length); }

  /// |xi| for the storage index pair (i, j).
  double freq_norm(int i, int j) const;

  /// Shortest displacement x - y on the torus, one coordinate.
  double wrap(double dx) const;

  bool operator==(const Grid&) const = default;
};

/// pre: n_points a power of two >= 8, domain_length > 0.
Grid make_grid(int n_points, double domain_length = two_pi);

/// Scalar field sampled on a Grid. A Field is either a table of physical
/// samples or a table of spectral coefficients (unitary normalization,
/// DFT index order); the flag records which.
class Field {
 public:
  Field() = default;
  Field(const Grid& grid, bool spectral = false);

  const Grid& grid() const { return grid_; }
  bool spectral() const { return spectral_; }
  int n() const { return grid_.n; }
  std::size_t size() const { return v_.size(); }

  std::complex<double>& operator[](std::size_t i) { return v_[i]; }
  const std::complex<double>& operator[](std::size_t i) const { return v_[i]; }
  std::complex<double>& at(int i, int j) { return v_[std::size_t(i) * grid_.n + j]; }
  const std::complex<double>& at(int i, int j) const { return v_[std::size_t(i) * grid_.n + j]; }

  std::span<std::complex<double>> data() { return v_; }
  std::span<const std::complex<double>> data() const { return v_; }

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double s);
  Field& operator*=(std::complex<double> s);

  double max_abs() const;
  bool finite() const;

 private:
  Grid grid_{};
  bool spectral_ = false;
  std::vector<std::complex<double>> v_;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double s, Field a);

/// Pointwise product of two physical-space fields on the same grid.
Field pointwise_multiply(const Field& a, const Field& b);

/// Unitary forward/inverse DFT. inverse(forward(f)) == f to 1e-12 relative,
/// and the spectral l^2 norm equals the physical Riemann-sum L^2 norm.
Field forward_transform(const Field& f);
Field inverse_transform(const Field& f);

/// Ensures a field is in the requested representation.
Field to_spectral(const Field& f);
Field to_physical(const Field& f);

/// Drops the imaginary part (used after symmetric spectral constructions).
Field real_part(Field f);

/// Binary dump: 16-byte header (magic "LPTXF1", u32 n_points LE, u32 flags
/// with bit0 = spectral) followed by row-major interleaved (re, im) doubles,
/// little-endian. Round trips bit-exactly.
void save_field(const Field& f, const std::filesystem::path& file);
Field load_field(const std::filesystem::path& file);

/// Appends a dump record to an already-open stream (used for slice streams).
void write_field_record(std::ostream& os, const Field& f);
Field read_field_record(std::istream& is);

}  // namespace lptx
