#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "lptx/grid.hpp"

namespace lptx {

/// Optional spectral localization window of a multiplier.
struct BandWindow {
  enum class Kind { band, at_or_above, below };
  Kind kind;
  int k;
};

/// Translation-invariant multiplier operator: (Mf)^(xi) = m(xi) f^(xi).
/// symbol_bound is the smallest constant c found for the discrete symbol
/// regularity check |D^alpha m(xi)| <= c (1+|xi|)^-|alpha|, |alpha| <= 4,
/// with centered lattice finite differences.
class Multiplier {
 public:
  Multiplier(Grid grid, std::vector<std::complex<double>> symbol, double symbol_bound,
             std::optional<BandWindow> window = std::nullopt)
      : grid_(grid), symbol_(std::move(symbol)), symbol_bound_(symbol_bound), window_(window) {}

  const Grid& grid() const { return grid_; }
  const std::vector<std::complex<double>>& symbol() const { return symbol_; }
  double symbol_bound() const { return symbol_bound_; }
  const std::optional<BandWindow>& window() const { return window_; }

 private:
  Grid grid_;
  std::vector<std::complex<double>> symbol_;
  double symbol_bound_;
  std::optional<BandWindow> window_;
};

/// Builds one of the named symbols: "identity", "riesz(i,j)" with
/// m = xi_i xi_j / |xi|^2 (m(0) = 0), or "smoothed_riesz(i,j)" with
/// m = xi_i xi_j / (1 + |xi|^2). Construction fails if the regularity
/// check yields a constant > 100.
Multiplier make_multiplier(const Grid& grid, const std::string& spec);

/// Builds a multiplier from an explicit symbol table in DFT index order.
Multiplier make_multiplier(const Grid& grid, std::vector<std::complex<double>> table);

/// Loads a symbol table from a binary field dump (spectral flag required).
Multiplier load_multiplier(const Grid& grid, const std::filesystem::path& file);

/// Evaluates the discrete regularity constant of a symbol table.
double symbol_regularity_constant(const Grid& grid, const std::vector<std::complex<double>>& symbol);

/// Applies M to a field, staying in the input representation.
Field apply(const Multiplier& m, const Field& f);

/// M^n by raising the symbol pointwise. pre: n >= 1, M unlocalized.
Multiplier power(const Multiplier& m, int n);

/// Multiplies the symbol by the chi window of the given kind.
Multiplier localize(const Multiplier& m, BandWindow::Kind kind, int k);

/// Commutator [(M^n)_{>=k}, a_k] applied to f, with mn_high localized
/// at-or-above k and a_k band-k limited (checked, 1e-12 relative L^2 mass).
Field commutator_apply(const Multiplier& mn_high, const Field& a_k, const Field& f);

}  // namespace lptx
