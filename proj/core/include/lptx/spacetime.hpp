#pragma once

#include <vector>

#include "lptx/grid.hpp"

namespace lptx {

/// Uniform time grid over [0, 1]: nt intervals, nodes t_i = i / nt.
struct TimeGrid {
  int nt = 0;

  int nodes() const { return nt + 1; }
  double dt() const { return 1.0 / nt; }
  double node(int i) const { return double(i) / nt; }

  bool operator==(const TimeGrid&) const = default;
};

/// A time-indexed sequence of Fields on a shared spatial grid.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  SpaceTimeField(const TimeGrid& tg, const Grid& g, bool spectral = false);
  SpaceTimeField(const TimeGrid& tg, std::vector<Field> slices);

  const TimeGrid& time_grid() const { return tg_; }
  const Grid& grid() const { return slices_.front().grid(); }
  int nodes() const { return int(slices_.size()); }

  Field& slice(int i) { return slices_[std::size_t(i)]; }
  const Field& slice(int i) const { return slices_[std::size_t(i)]; }

  SpaceTimeField& operator+=(const SpaceTimeField& o);
  SpaceTimeField& operator-=(const SpaceTimeField& o);
  SpaceTimeField& operator*=(double s);

  /// max over nodes of the slice L^1 norm.
  double sup_l1() const;
  /// max over nodes and samples of |value|.
  double max_abs() const;

 private:
  TimeGrid tg_{};
  std::vector<Field> slices_;
};

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b);
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b);

/// Trapezoid weights on the node index (dt/2 at the ends, dt inside).
double trapezoid_weight(const TimeGrid& tg, int i);

/// Trapezoid integral over [0,1] of per-node scalar samples.
double trapezoid(const TimeGrid& tg, const std::vector<double>& values);

/// Cumulative trapezoid antiderivative: U(t_i) = int_0^{t_i} F, U(0) = 0.
SpaceTimeField cumulative_integral(const SpaceTimeField& f);

/// Coefficient data for the transport equation: a = d_t b + c on a shared
/// time grid, rescaled so max(||a||_1, ||b||_2, ||c||_3) equals delta0.
struct CoefficientDecomposition {
  SpaceTimeField a;
  SpaceTimeField b;
  SpaceTimeField c;
  double delta0 = 0.0;

  /// d_t b recovered structurally (exact by construction).
  SpaceTimeField db_dt() const;
  /// Rescales a, b, c by one common factor to a new delta0.
  CoefficientDecomposition rescaled(double new_delta0) const;
};

}  // namespace lptx
