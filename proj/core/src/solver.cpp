#include "lptx/solver.hpp"

#include <cmath>

#include "lptx/lp.hpp"
#include "lptx/norms.hpp"

namespace lptx {

namespace {

constexpr double kBlowupThreshold = 1e12;

void require_shared_grids(const CoefficientDecomposition& cd, const Multiplier& m, const SpaceTimeField& g) {
  if (!(cd.a.grid() == g.grid()) || !(m.grid() == g.grid()))
    throw std::invalid_argument("solver: coefficient, operator and source must share one grid");
  if (!(cd.a.time_grid() == g.time_grid()))
    throw std::invalid_argument("solver: coefficient and source must share one time grid");
}

// Cubic Lagrange interpolation of a slice sequence at arbitrary t in [0, 1],
// exact at the nodes. The 4-point stencil is clamped at the ends.
Field interp_cubic(const SpaceTimeField& f, double t) {
  const TimeGrid& tg = f.time_grid();
  double s = t * tg.nt;
  int cell = std::min(std::max(int(std::floor(s)), 0), tg.nt - 1);
  int i0 = std::min(std::max(cell - 1, 0), std::max(tg.nt - 3, 0));
  int count = std::min(4, tg.nodes());
  double w[4] = {0, 0, 0, 0};
  for (int p = 0; p < count; ++p) {
    double lp = 1.0;
    for (int q = 0; q < count; ++q) {
      if (q == p) continue;
      lp *= (s - (i0 + q)) / double(p - q);
    }
    w[p] = lp;
  }
  Field out = f.slice(i0);
  out *= w[0];
  for (int p = 1; p < count; ++p) {
    Field term = f.slice(i0 + p);
    term *= w[p];
    out += term;
  }
  return out;
}

void check_blowup(const Field& u, double t) {
  for (const auto& z : u.data()) {
    double a = std::abs(z);
    if (!(a <= kBlowupThreshold)) throw blowup_error(t, a);
  }
}

}  // namespace

SolveResult reference_solve(const CoefficientDecomposition& cd, const Multiplier& m, const SpaceTimeField& g,
                            int substeps) {
  require_shared_grids(cd, m, g);
  if (substeps < 1) throw std::invalid_argument("reference_solve: substeps must be >= 1");
  const TimeGrid& tg = g.time_grid();
  auto rhs = [&](double t, const Field& u) {
    Field mu = apply(m, u);
    Field out = pointwise_multiply(interp_cubic(cd.a, t), mu);
    out += interp_cubic(g, t);
    return out;
  };
  SpaceTimeField u(tg, g.grid());
  Field cur(g.grid());
  double h = tg.dt() / substeps;
  for (int i = 0; i < tg.nt; ++i) {
    double t_node = tg.node(i);
    for (int s = 0; s < substeps; ++s) {
      double t = t_node + s * h;
      Field k1 = rhs(t, cur);
      Field half1 = cur + 0.5 * h * k1;
      Field k2 = rhs(t + 0.5 * h, half1);
      Field half2 = cur + 0.5 * h * k2;
      Field k3 = rhs(t + 0.5 * h, half2);
      Field full = cur + h * k3;
      Field k4 = rhs(t + h, full);
      Field incr = k1;
      incr += k4;
      k2 += k3;
      k2 *= 2.0;
      incr += k2;
      incr *= h / 6.0;
      cur += incr;
    }
    check_blowup(cur, tg.node(i + 1));
    u.slice(i + 1) = cur;
  }
  double sup = u.sup_l1();
  return SolveResult{std::move(u), sup, "rk4", tg.nt * substeps};
}

std::vector<SolveResult> picard_iterates(const CoefficientDecomposition& cd, const Multiplier& m,
                                         const SpaceTimeField& g, int n_max) {
  require_shared_grids(cd, m, g);
  if (n_max < 1) throw std::invalid_argument("picard_iterates: n_max must be >= 1");
  const TimeGrid& tg = g.time_grid();
  std::vector<SolveResult> out;
  SpaceTimeField prev(tg, g.grid());
  for (int n = 1; n <= n_max; ++n) {
    SpaceTimeField rhs(tg, g.grid());
    for (int i = 0; i <= tg.nt; ++i)
      rhs.slice(i) = pointwise_multiply(cd.a.slice(i), apply(m, prev.slice(i))) + g.slice(i);
    SpaceTimeField next = cumulative_integral(rhs);
    check_blowup(next.slice(tg.nt), 1.0);
    prev = next;
    double sup = next.sup_l1();
    out.push_back(SolveResult{std::move(next), sup, "picard", tg.nt});
  }
  return out;
}

SolveResult converged_picard(const CoefficientDecomposition& cd, const Multiplier& m, const SpaceTimeField& g,
                             double tol, int max_iter) {
  require_shared_grids(cd, m, g);
  const TimeGrid& tg = g.time_grid();
  SpaceTimeField cur(tg, g.grid());
  int steps = 0;
  for (int n = 1; n <= max_iter; ++n) {
    SpaceTimeField rhs(tg, g.grid());
    for (int i = 0; i <= tg.nt; ++i)
      rhs.slice(i) = pointwise_multiply(cd.a.slice(i), apply(m, cur.slice(i))) + g.slice(i);
    SpaceTimeField next = cumulative_integral(rhs);
    check_blowup(next.slice(tg.nt), 1.0);
    double delta = (next - cur).sup_l1();
    double scale = next.sup_l1();
    cur = std::move(next);
    steps = n;
    if (delta <= tol * std::max(scale, 1e-300)) break;
  }
  double sup = cur.sup_l1();
  return SolveResult{std::move(cur), sup, "picard-converged", steps};
}

SpaceTimeField dyson_term(const CoefficientDecomposition& cd, const Multiplier& m, const SpaceTimeField& g, int n) {
  return dyson_term_localized(cd, m, g, std::vector<int>(std::size_t(n), -1));
}

SpaceTimeField dyson_term_localized(const CoefficientDecomposition& cd, const Multiplier& m, const SpaceTimeField& g,
                                    const std::vector<int>& bands) {
  require_shared_grids(cd, m, g);
  const TimeGrid& tg = g.time_grid();
  for (int k : bands)
    if (k > g.grid().band_max()) throw std::invalid_argument("dyson_term_localized: band out of range");
  SpaceTimeField v = cumulative_integral(g);
  int n = int(bands.size());
  for (int level = 1; level <= n; ++level) {
    // bands[0] belongs to the outermost coefficient factor.
    int k = bands[std::size_t(n - level)];
    SpaceTimeField integrand(tg, g.grid());
    for (int i = 0; i <= tg.nt; ++i) {
      Field coeff = k < 0 ? cd.a.slice(i) : project_band(cd.a.slice(i), k);
      integrand.slice(i) = pointwise_multiply(coeff, apply(m, v.slice(i)));
    }
    v = cumulative_integral(integrand);
  }
  return v;
}

double simplex_integral(const std::vector<std::function<double(double)>>& profiles, int nodes) {
  if (profiles.empty()) throw std::invalid_argument("simplex_integral: need at least one profile");
  if (nodes < 2) throw std::invalid_argument("simplex_integral: need at least two intervals");
  TimeGrid tg{nodes};
  std::size_t count = std::size_t(tg.nodes());
  // Innermost variable first: G_m(s) = int_0^s f_m(t) G_{m+1}(t) dt.
  std::vector<double> inner(count, 1.0);
  for (int m = int(profiles.size()) - 1; m >= 0; --m) {
    std::vector<double> f(count);
    for (int i = 0; i <= tg.nt; ++i) f[std::size_t(i)] = profiles[std::size_t(m)](tg.node(i)) * inner[std::size_t(i)];
    std::vector<double> acc(count, 0.0);
    for (int i = 1; i <= tg.nt; ++i)
      acc[std::size_t(i)] = acc[std::size_t(i - 1)] + 0.5 * tg.dt() * (f[std::size_t(i - 1)] + f[std::size_t(i)]);
    inner = std::move(acc);
  }
  return inner.back();
}

}  // namespace lptx
