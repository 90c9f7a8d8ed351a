#include "lptx/multiplier.hpp"

#include <cmath>
#include <stdexcept>

#include "lptx/lp.hpp"

namespace lptx {

namespace {

constexpr double kRegularityGate = 100.0;

std::size_t flat(const Grid& g, int i, int j) { return std::size_t(i) * g.n + j; }

// Parses "name(i,j)" with i, j in {1, 2}.
bool parse_pair_spec(const std::string& spec, const std::string& name, int& i, int& j) {
  if (spec.rfind(name + "(", 0) != 0 || spec.back() != ')') return false;
  std::string args = spec.substr(name.size() + 1, spec.size() - name.size() - 2);
  auto comma = args.find(',');
  if (comma == std::string::npos) return false;
  i = std::stoi(args.substr(0, comma));
  j = std::stoi(args.substr(comma + 1));
  if (i < 1 || i > 2 || j < 1 || j > 2) throw std::invalid_argument("multiplier spec: indices must be 1 or 2");
  return true;
}

void require_finite_table(const std::vector<std::complex<double>>& t) {
  for (const auto& z : t)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw std::invalid_argument("multiplier symbol has non-finite entries");
}

}  // namespace

double symbol_regularity_constant(const Grid& g, const std::vector<std::complex<double>>& symbol) {
  const int n = g.n;
  double worst = 0.0;
  // Iterated centered differences D1^a1 D2^a2 for a1 + a2 <= 4, evaluated
  // where the full stencil fits inside the mode range [-n/2, n/2-1].
  for (int a1 = 0; a1 <= 4; ++a1) {
    for (int a2 = 0; a2 + a1 <= 4; ++a2) {
      std::vector<std::complex<double>> cur = symbol;
      std::vector<std::complex<double>> nxt(cur.size());
      auto diff_pass = [&](int axis) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            int mi = g.mode(i), mj = g.mode(j);
            int m = axis == 0 ? mi : mj;
            if (m - 1 < -n / 2 || m + 1 > n / 2 - 1) {
              nxt[flat(g, i, j)] = 0.0;  // masked out below via margin check
              continue;
            }
            int ip = axis == 0 ? (i + 1) % n : i;
            int im = axis == 0 ? (i + n - 1) % n : i;
            int jp = axis == 1 ? (j + 1) % n : j;
            int jm = axis == 1 ? (j + n - 1) % n : j;
            nxt[flat(g, i, j)] = 0.5 * (cur[flat(g, ip, jp)] - cur[flat(g, im, jm)]);
          }
        cur.swap(nxt);
      };
      for (int r = 0; r < a1; ++r) diff_pass(0);
      for (int r = 0; r < a2; ++r) diff_pass(1);
      int order = a1 + a2;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int mi = g.mode(i), mj = g.mode(j);
          // Stay clear of the mode-range edges so every stencil was valid.
          if (mi - a1 < -n / 2 || mi + a1 > n / 2 - 1) continue;
          if (mj - a2 < -n / 2 || mj + a2 > n / 2 - 1) continue;
          double w = std::abs(cur[flat(g, i, j)]) * std::pow(1.0 + g.freq_norm(i, j), order);
          worst = std::max(worst, w);
        }
    }
  }
  return worst;
}

Multiplier make_multiplier(const Grid& g, std::vector<std::complex<double>> table) {
  if (table.size() != std::size_t(g.n) * g.n)
    throw std::invalid_argument("multiplier symbol table has wrong shape");
  require_finite_table(table);
  double c = symbol_regularity_constant(g, table);
  if (c > kRegularityGate)
    throw std::invalid_argument("multiplier symbol fails the regularity check (constant " + std::to_string(c) + ")");
  return Multiplier(g, std::move(table), c);
}

Multiplier make_multiplier(const Grid& g, const std::string& spec) {
  std::vector<std::complex<double>> table(std::size_t(g.n) * g.n);
  int p = 0, q = 0;
  if (spec == "identity") {
    for (auto& z : table) z = 1.0;
  } else if (parse_pair_spec(spec, "riesz", p, q)) {
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        double f1 = g.freq(i), f2 = g.freq(j);
        double nn = f1 * f1 + f2 * f2;
        double xp = p == 1 ? f1 : f2, xq = q == 1 ? f1 : f2;
        table[flat(g, i, j)] = nn > 0.0 ? xp * xq / nn : 0.0;
      }
  } else if (parse_pair_spec(spec, "smoothed_riesz", p, q)) {
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) {
        double f1 = g.freq(i), f2 = g.freq(j);
        double xp = p == 1 ? f1 : f2, xq = q == 1 ? f1 : f2;
        table[flat(g, i, j)] = xp * xq / (1.0 + f1 * f1 + f2 * f2);
      }
  } else {
    throw std::invalid_argument("unknown multiplier spec: " + spec);
  }
  return make_multiplier(g, std::move(table));
}

Multiplier load_multiplier(const Grid& g, const std::filesystem::path& file) {
  Field f = load_field(file);
  if (!f.spectral()) throw std::invalid_argument("load_multiplier: dump is not spectral");
  if (!(f.grid() == g)) throw std::invalid_argument("load_multiplier: grid mismatch");
  return make_multiplier(g, std::vector<std::complex<double>>(f.data().begin(), f.data().end()));
}

Field apply(const Multiplier& m, const Field& f) {
  if (!(m.grid() == f.grid())) throw std::invalid_argument("apply: grid mismatch");
  Field spec = to_spectral(f);
  const auto& sym = m.symbol();
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= sym[i];
  return f.spectral() ? spec : inverse_transform(spec);
}

Multiplier power(const Multiplier& m, int n) {
  if (n < 1) throw std::invalid_argument("power: exponent must be >= 1 (use the identity spec for n = 0)");
  if (m.window()) throw std::invalid_argument("power: multiplier must be unlocalized");
  std::vector<std::complex<double>> sym(m.symbol().size());
  for (std::size_t i = 0; i < sym.size(); ++i) sym[i] = std::pow(m.symbol()[i], n);
  double c = symbol_regularity_constant(m.grid(), sym);
  return Multiplier(m.grid(), std::move(sym), c);
}

Multiplier localize(const Multiplier& m, BandWindow::Kind kind, int k) {
  const Grid& g = m.grid();
  int upper = kind == BandWindow::Kind::band ? g.band_max() : g.band_max() + 1;
  if (k < 0 || k > upper) throw std::invalid_argument("localize: band out of range");
  std::vector<std::complex<double>> sym = m.symbol();
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      double r = g.freq_norm(i, j);
      double w = 0.0;
      switch (kind) {
        case BandWindow::Kind::band: w = band_symbol(k, r); break;
        case BandWindow::Kind::at_or_above: w = 1.0 - low_symbol(k, r); break;
        case BandWindow::Kind::below: w = low_symbol(k, r); break;
      }
      sym[flat(g, i, j)] *= w;
    }
  double c = symbol_regularity_constant(g, sym);
  return Multiplier(g, std::move(sym), c, BandWindow{kind, k});
}

Field commutator_apply(const Multiplier& mn_high, const Field& a_k, const Field& f) {
  if (!mn_high.window() || mn_high.window()->kind != BandWindow::Kind::at_or_above)
    throw std::invalid_argument("commutator_apply: operator must be localized at-or-above a band");
  int k = mn_high.window()->k;
  if (band_leakage(a_k, k) > 1e-12)
    throw std::invalid_argument("commutator_apply: a_k is not supported in band " + std::to_string(k));
  Field af = pointwise_multiply(to_physical(a_k), to_physical(f));
  Field lhs = apply(mn_high, af);
  Field rhs = pointwise_multiply(to_physical(a_k), apply(mn_high, to_physical(f)));
  return lhs - rhs;
}

}  // namespace lptx
