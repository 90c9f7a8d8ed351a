#include "lptx/spacetime.hpp"

#include <stdexcept>

#include "lptx/norms.hpp"

namespace lptx {

SpaceTimeField::SpaceTimeField(const TimeGrid& tg, const Grid& g, bool spectral) : tg_(tg) {
  if (tg.nt < 1) throw std::invalid_argument("SpaceTimeField: need at least one time interval");
  slices_.assign(std::size_t(tg.nodes()), Field(g, spectral));
}

SpaceTimeField::SpaceTimeField(const TimeGrid& tg, std::vector<Field> slices)
    : tg_(tg), slices_(std::move(slices)) {
  if (int(slices_.size()) != tg.nodes())
    throw std::invalid_argument("SpaceTimeField: slice count does not match the time grid");
  for (const auto& s : slices_)
    if (!(s.grid() == slices_.front().grid()))
      throw std::invalid_argument("SpaceTimeField: slices must share one grid");
}

SpaceTimeField& SpaceTimeField::operator+=(const SpaceTimeField& o) {
  if (!(tg_ == o.tg_)) throw std::invalid_argument("SpaceTimeField: time grid mismatch");
  for (std::size_t i = 0; i < slices_.size(); ++i) slices_[i] += o.slices_[i];
  return *this;
}

SpaceTimeField& SpaceTimeField::operator-=(const SpaceTimeField& o) {
  if (!(tg_ == o.tg_)) throw std::invalid_argument("SpaceTimeField: time grid mismatch");
  for (std::size_t i = 0; i < slices_.size(); ++i) slices_[i] -= o.slices_[i];
  return *this;
}

SpaceTimeField& SpaceTimeField::operator*=(double s) {
  for (auto& f : slices_) f *= s;
  return *this;
}

double SpaceTimeField::sup_l1() const {
  double m = 0.0;
  for (const auto& f : slices_) m = std::max(m, lp_norm(f, 1.0));
  return m;
}

double SpaceTimeField::max_abs() const {
  double m = 0.0;
  for (const auto& f : slices_) m = std::max(m, f.max_abs());
  return m;
}

SpaceTimeField operator+(SpaceTimeField a, const SpaceTimeField& b) { return a += b; }
SpaceTimeField operator-(SpaceTimeField a, const SpaceTimeField& b) { return a -= b; }

double trapezoid_weight(const TimeGrid& tg, int i) {
  return (i == 0 || i == tg.nt) ? 0.5 * tg.dt() : tg.dt();
}

double trapezoid(const TimeGrid& tg, const std::vector<double>& values) {
  if (int(values.size()) != tg.nodes())
    throw std::invalid_argument("trapezoid: sample count does not match the time grid");
  double s = 0.0;
  for (int i = 0; i <= tg.nt; ++i) s += trapezoid_weight(tg, i) * values[std::size_t(i)];
  return s;
}

SpaceTimeField cumulative_integral(const SpaceTimeField& f) {
  SpaceTimeField u(f.time_grid(), f.grid());
  double half_dt = 0.5 * f.time_grid().dt();
  for (int i = 1; i < f.nodes(); ++i) {
    Field step = f.slice(i - 1) + f.slice(i);
    step *= half_dt;
    u.slice(i) = u.slice(i - 1) + step;
  }
  return u;
}

SpaceTimeField CoefficientDecomposition::db_dt() const { return a - c; }

CoefficientDecomposition CoefficientDecomposition::rescaled(double new_delta0) const {
  if (!(delta0 > 0.0)) throw std::invalid_argument("rescaled: decomposition has zero scale");
  double s = new_delta0 / delta0;
  CoefficientDecomposition out = *this;
  out.a *= s;
  out.b *= s;
  out.c *= s;
  out.delta0 = new_delta0;
  return out;
}

}  // namespace lptx
