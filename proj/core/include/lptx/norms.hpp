#pragma once

#include <utility>
#include <vector>

#include "lptx/grid.hpp"

namespace lptx {

class SpaceTimeField;
struct CoefficientDecomposition;

/// log+ x = log(2 + |x|); nondecreasing and >= log 2.
double log_plus(double x);

/// Riemann-sum L^p norm; p = infinity (use lp_norm_inf) returns max |f|.
/// pre: p >= 1.
double lp_norm(const Field& f, double p);
double lp_norm_inf(const Field& f);

/// Spectral Sobolev norm (sum (1+|xi|^2)^s |f^(xi)|^2)^(1/2); s = 0 agrees
/// with lp_norm(f, 2).
double sobolev_norm(const Field& f, double s);

/// Inhomogeneous Besov B^1_{2,1}: ||P_0 f||_2 + sum_{k>=1} 2^k ||P_k f||_2
/// over resolved bands.
double besov_norm(const Field& f);

/// distribution(f, lambda) = cell_area * #{x : |f(x)| > lambda}.
double distribution(const Field& f, double lambda);

/// sup over lambda sampled at all distinct |f| values of lambda *
/// distribution(f, lambda).
double weak_l1(const Field& f);

/// Splits f into (f_{<lambda}, f_{>=lambda}): the first coincides with f
/// where |f| < lambda and vanishes elsewhere; the sum is exactly f.
std::pair<Field, Field> level_split(const Field& f, double lambda);

/// Compact-setting log-corrected L^1 functional for a single field:
/// ||f||_1 log+ ||f||_inf + 1.
double n_of(const Field& f);

/// Same functional over [0,1] x torus, time integrals by trapezoid:
/// ||g||_{L^1([0,1] x T^2)} log+ ||g||_{L^inf} + 1. Always >= 1.
double n_of_g(const SpaceTimeField& g);

/// Partition of unity adapted to a near-unit lattice of cell centers on the
/// torus. Every point is covered by at most 9 cells; the weights sum to 1.
class CellPartition {
 public:
  explicit CellPartition(const Grid& grid, int cells_per_axis = 6);

  const Grid& grid() const { return grid_; }
  int cells_per_axis() const { return m_; }
  int count() const { return m_ * m_; }
  const Field& weight(int a) const { return weights_[a]; }
  std::pair<double, double> center(int a) const;

  /// Torus-wrapped Euclidean distance between cell indices, in cell units.
  double index_distance(int a, int b) const;

 private:
  Grid grid_;
  int m_;
  std::vector<Field> weights_;
};

/// Weight beta(x) = (1 + |x - x_c|)^-3 with x_c the torus center and the
/// flat torus distance; l1 is the recorded Riemann-sum mass.
struct WeightProfile {
  Field beta;
  double l1 = 0.0;
};

WeightProfile make_weight_profile(const Grid& grid);

/// Lattice-cell refinement of the log functional:
/// mu ||beta||_1 + ||f||_1 log+ { sup_a sum_{|b-a|<=3} ||chi_b f||_inf /
/// (mu ||chi_a beta||_1) }. pre: mu > 0.
double n_mu_beta(const Field& f, double mu, const WeightProfile& beta, const CellPartition& cells);

/// The three space-time coefficient norms (||a||_1, ||b||_2, ||c||_3):
/// L^2_t H^1_x, (int ||b||_{H^2}^2 + int ||d_t b||_{H^1}^2)^(1/2) with
/// d_t b = a - c, and int_0^1 ||c(t)||_{B^1_{2,1}} dt.
struct CoefficientNorms {
  double a1 = 0.0;
  double b2 = 0.0;
  double c3 = 0.0;
  double max() const;
};

CoefficientNorms coefficient_norms(const CoefficientDecomposition& cd);

}  // namespace lptx
