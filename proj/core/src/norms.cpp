#include "lptx/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lptx/lp.hpp"
#include "lptx/spacetime.hpp"

namespace lptx {

double log_plus(double x) { return std::log(2.0 + std::abs(x)); }

double lp_norm(const Field& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (f.spectral()) throw std::invalid_argument("lp_norm: expects a physical-space field");
  double ca = f.grid().cell_area();
  if (p == 1.0) {
    double s = 0.0;
    for (const auto& z : f.data()) s += std::abs(z);
    return ca * s;
  }
  if (p == 2.0) {
    double s = 0.0;
    for (const auto& z : f.data()) s += std::norm(z);
    return std::sqrt(ca * s);
  }
  double s = 0.0;
  for (const auto& z : f.data()) s += std::pow(std::abs(z), p);
  return std::pow(ca * s, 1.0 / p);
}

double lp_norm_inf(const Field& f) {
  if (f.spectral()) throw std::invalid_argument("lp_norm_inf: expects a physical-space field");
  return f.max_abs();
}

double sobolev_norm(const Field& f, double s) {
  Field spec = to_spectral(f);
  const Grid& g = spec.grid();
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      double w = 1.0 + g.freq(i) * g.freq(i) + g.freq(j) * g.freq(j);
      acc += std::pow(w, s) * std::norm(spec.at(i, j));
    }
  return std::sqrt(acc);
}

double besov_norm(const Field& f) {
  Field spec = to_spectral(f);
  double total = 0.0;
  for (const auto& [k, part] : decompose(spec)) {
    double l2 = 0.0;
    for (const auto& z : part.data()) l2 += std::norm(z);
    total += std::ldexp(std::sqrt(l2), k);  // 2^k ||P_k f||_2, k = 0 term plain
  }
  return total;
}

double distribution(const Field& f, double lambda) {
  if (lambda < 0.0) throw std::invalid_argument("distribution: lambda must be >= 0");
  std::size_t count = 0;
  for (const auto& z : f.data())
    if (std::abs(z) > lambda) ++count;
  return f.grid().cell_area() * double(count);
}

double weak_l1(const Field& f) {
  std::vector<double> levels;
  levels.reserve(f.size());
  for (const auto& z : f.data()) levels.push_back(std::abs(z));
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  // lambda * area{|f| > lambda} sampled at the distinct values of |f|;
  // counts follow from the sorted order without rescanning.
  double best = 0.0;
  std::vector<double> sorted;
  sorted.reserve(f.size());
  for (const auto& z : f.data()) sorted.push_back(std::abs(z));
  std::sort(sorted.begin(), sorted.end());
  double ca = f.grid().cell_area();
  for (double lam : levels) {
    auto above = sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), lam);
    best = std::max(best, lam * ca * double(above));
  }
  return best;
}

std::pair<Field, Field> level_split(const Field& f, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("level_split: lambda must be positive");
  Field low(f.grid()), high(f.grid());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(f[i]) < lambda)
      low[i] = f[i];
    else
      high[i] = f[i];
  }
  return {std::move(low), std::move(high)};
}

double n_of(const Field& f) { return lp_norm(f, 1.0) * log_plus(lp_norm_inf(f)) + 1.0; }

double n_of_g(const SpaceTimeField& g) {
  std::vector<double> l1(std::size_t(g.nodes()));
  for (int i = 0; i < g.nodes(); ++i) l1[std::size_t(i)] = lp_norm(g.slice(i), 1.0);
  return trapezoid(g.time_grid(), l1) * log_plus(g.max_abs()) + 1.0;
}

namespace {

// Plateau bump in one radial variable: 1 on [0, p], smooth decay to 0 at 1.
double cell_bump(double u) {
  constexpr double p = 0.3;
  if (u <= p) return 1.0;
  if (u >= 1.0) return 0.0;
  double t = (1.0 - u) / (1.0 - p);
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace

CellPartition::CellPartition(const Grid& grid, int cells_per_axis) : grid_(grid), m_(cells_per_axis) {
  if (m_ < 3) throw std::invalid_argument("CellPartition: need at least 3 cells per axis");
  double spacing = grid.length / m_;
  // Support radius 1.5 * spacing keeps the cover count at <= 9 (inside the
  // radius-2 envelope at the default 2*pi domain).
  double radius = 1.5 * spacing;
  std::vector<Field> raw(static_cast<std::size_t>(count()), Field(grid));
  Field total(grid);
  for (int a = 0; a < count(); ++a) {
    auto [cx, cy] = center(a);
    for (int i = 0; i < grid.n; ++i)
      for (int j = 0; j < grid.n; ++j) {
        double dx = grid.wrap(i * grid.spacing() - cx);
        double dy = grid.wrap(j * grid.spacing() - cy);
        double d = std::sqrt(dx * dx + dy * dy);
        raw[std::size_t(a)].at(i, j) = cell_bump(d / radius);
      }
    total += raw[std::size_t(a)];
  }
  for (std::size_t i = 0; i < total.size(); ++i)
    if (total[i].real() <= 0.0) throw std::runtime_error("CellPartition: uncovered point");
  weights_ = std::move(raw);
  for (auto& w : weights_)
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = w[i].real() / total[i].real();
}

std::pair<double, double> CellPartition::center(int a) const {
  double spacing = grid_.length / m_;
  return {double(a / m_) * spacing, double(a % m_) * spacing};
}

double CellPartition::index_distance(int a, int b) const {
  auto wrap = [&](int d) {
    d = ((d % m_) + m_) % m_;
    return d > m_ / 2 ? m_ - d : d;
  };
  double di = wrap(a / m_ - b / m_);
  double dj = wrap(a % m_ - b % m_);
  return std::sqrt(di * di + dj * dj);
}

WeightProfile make_weight_profile(const Grid& grid) {
  WeightProfile w{Field(grid), 0.0};
  double cx = 0.5 * grid.length, cy = 0.5 * grid.length;
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j) {
      double dx = grid.wrap(i * grid.spacing() - cx);
      double dy = grid.wrap(j * grid.spacing() - cy);
      double d = std::sqrt(dx * dx + dy * dy);
      w.beta.at(i, j) = std::pow(1.0 + d, -3.0);
    }
  w.l1 = lp_norm(w.beta, 1.0);
  return w;
}

double n_mu_beta(const Field& f, double mu, const WeightProfile& beta, const CellPartition& cells) {
  if (!(mu > 0.0)) throw std::invalid_argument("n_mu_beta: mu must be positive");
  if (!(f.grid() == cells.grid())) throw std::invalid_argument("n_mu_beta: grid mismatch");
  int nc = cells.count();
  std::vector<double> cell_sup(static_cast<std::size_t>(nc)), cell_beta(static_cast<std::size_t>(nc));
  for (int a = 0; a < nc; ++a) {
    const Field& w = cells.weight(a);
    double sup = 0.0, bmass = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      sup = std::max(sup, w[i].real() * std::abs(f[i]));
      bmass += w[i].real() * beta.beta[i].real();
    }
    cell_sup[std::size_t(a)] = sup;
    cell_beta[std::size_t(a)] = bmass * f.grid().cell_area();
  }
  double worst = 0.0;
  for (int a = 0; a < nc; ++a) {
    double neigh = 0.0;
    for (int b = 0; b < nc; ++b)
      if (cells.index_distance(a, b) <= 3.0) neigh += cell_sup[std::size_t(b)];
    worst = std::max(worst, neigh / (mu * cell_beta[std::size_t(a)]));
  }
  return mu * beta.l1 + lp_norm(f, 1.0) * log_plus(worst);
}

double CoefficientNorms::max() const { return std::max(a1, std::max(b2, c3)); }

CoefficientNorms coefficient_norms(const CoefficientDecomposition& cd) {
  const auto& tg = cd.a.time_grid();
  if (!(cd.b.time_grid() == tg) || !(cd.c.time_grid() == tg))
    throw std::invalid_argument("coefficient_norms: mismatched time grids");
  SpaceTimeField dbdt = cd.db_dt();
  std::vector<double> a_h1(static_cast<std::size_t>(tg.nodes())), b_h2(a_h1.size()), db_h1(a_h1.size()), c_b(a_h1.size());
  for (int i = 0; i <= tg.nt; ++i) {
    auto u = std::size_t(i);
    double ah1 = sobolev_norm(cd.a.slice(i), 1.0);
    double bh2 = sobolev_norm(cd.b.slice(i), 2.0);
    double dh1 = sobolev_norm(dbdt.slice(i), 1.0);
    a_h1[u] = ah1 * ah1;
    b_h2[u] = bh2 * bh2;
    db_h1[u] = dh1 * dh1;
    c_b[u] = besov_norm(cd.c.slice(i));
  }
  CoefficientNorms out;
  out.a1 = std::sqrt(trapezoid(tg, a_h1));
  out.b2 = std::sqrt(trapezoid(tg, b_h2) + trapezoid(tg, db_h1));
  out.c3 = trapezoid(tg, c_b);
  return out;
}

}  // namespace lptx
