#include "lptx/lp.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>

namespace lptx {

namespace {

// psi(t) = exp(-1/t) for t > 0, 0 otherwise.
double psi(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

// Smooth step: 0 for t <= 0, 1 for t >= 1.
double step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = psi(t);
  return a / (a + psi(1.0 - t));
}

void require_band(const Grid& g, int k, int upper, const char* op) {
  if (k < 0 || k > upper)
    throw std::invalid_argument(std::string(op) + ": band " + std::to_string(k) +
                                " outside [0, " + std::to_string(upper) + "] on this grid (n=" +
                                std::to_string(g.n) + ")");
}

// Cached per-grid tables of the band symbols chi_k(|xi|) on the lattice.
class BandTable {
 public:
  static const BandTable& get(const Grid& g) {
    static std::mutex mu;
    static std::map<std::pair<int, double>, std::unique_ptr<BandTable>> cache;
    std::scoped_lock lock(mu);
    auto key = std::make_pair(g.n, g.length);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::unique_ptr<BandTable>(new BandTable(g))).first;
    return *it->second;
  }

  // chi_k values, k in 0..band_max.
  const std::vector<double>& band(int k) const { return bands_[std::size_t(k)]; }
  // sum_{j<k} chi_j values, k in 0..band_max+1.
  const std::vector<double>& low(int k) const { return lows_[std::size_t(k)]; }

 private:
  explicit BandTable(const Grid& g) {
    int kmax = g.band_max();
    std::size_t sz = std::size_t(g.n) * g.n;
    bands_.assign(std::size_t(kmax + 1), std::vector<double>(sz));
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        double r = g.freq_norm(i, j);
        for (int k = 0; k <= kmax; ++k) bands_[std::size_t(k)][std::size_t(i) * g.n + j] = band_symbol(k, r);
      }
    lows_.assign(std::size_t(kmax + 2), std::vector<double>(sz, 0.0));
    for (int k = 1; k <= kmax + 1; ++k)
      for (std::size_t i = 0; i < sz; ++i)
        lows_[std::size_t(k)][i] = lows_[std::size_t(k - 1)][i] + bands_[std::size_t(k - 1)][i];
  }

  std::vector<std::vector<double>> bands_;
  std::vector<std::vector<double>> lows_;
};

Field apply_table(const Field& f, const std::vector<double>& w, bool complement) {
  Field spec = to_spectral(f);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= complement ? 1.0 - w[i] : w[i];
  return f.spectral() ? spec : inverse_transform(spec);
}

}  // namespace

double lowpass(double r) { return step(2.0 - r); }

double bump(double r) { return lowpass(r) - lowpass(2.0 * r); }

double band_symbol(int k, double r) {
  return k == 0 ? lowpass(r) : bump(std::ldexp(r, -k));
}

double low_symbol(int k, double r) {
  double s = 0.0;
  for (int j = 0; j < k; ++j) s += band_symbol(j, r);
  return s;
}

Field project_band(const Field& f, int k) {
  require_band(f.grid(), k, f.grid().band_max(), "project_band");
  return apply_table(f, BandTable::get(f.grid()).band(k), false);
}

Field project_low(const Field& f, int k) {
  require_band(f.grid(), k, f.grid().band_max() + 1, "project_low");
  return apply_table(f, BandTable::get(f.grid()).low(k), false);
}

Field project_high(const Field& f, int k) {
  require_band(f.grid(), k, f.grid().band_max() + 1, "project_high");
  return apply_table(f, BandTable::get(f.grid()).low(k), true);
}

std::vector<std::pair<int, Field>> decompose(const Field& f) {
  std::vector<std::pair<int, Field>> parts;
  Field spec = to_spectral(f);
  const BandTable& table = BandTable::get(f.grid());
  for (int k = 0; k <= f.grid().band_max(); ++k) {
    Field part = apply_table(spec, table.band(k), false);
    parts.emplace_back(k, f.spectral() ? std::move(part) : inverse_transform(part));
  }
  return parts;
}

double band_leakage(const Field& f, int k) {
  Field spec = to_spectral(f);
  const auto& w = BandTable::get(f.grid()).band(k);
  double in = 0.0, out = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    double m = std::norm(spec[i]);
    if (w[i] > 0.0)
      in += m;
    else
      out += m;
  }
  double total = in + out;
  return total > 0.0 ? out / total : 0.0;
}

}  // namespace lptx
