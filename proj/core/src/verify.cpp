#include "lptx/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "lptx/lp.hpp"
#include "lptx/norms.hpp"
#include "lptx/random.hpp"

namespace lptx {

namespace {

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::min(std::max(threads, 1), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Provenance make_provenance(const VerifyOptions& v, const std::string& notes = {}) {
  return Provenance{v.seed, v.grid_n, v.nt, v.operator_spec, notes};
}

double max_over(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  return m;
}

}  // namespace

double alpha_exponent(const std::vector<int>& l, const std::vector<int>& k) {
  if (l.size() != k.size()) throw std::invalid_argument("alpha_exponent: length mismatch");
  if (l.size() < 2) throw std::invalid_argument("alpha_exponent: need tuples of length >= 2");
  double s = 0.0;
  for (std::size_t m = 1; m < l.size(); ++m)
    s += std::min(std::abs(l[m] - l[m - 1]), std::abs(l[m] - k[m]));
  return 0.5 * s;
}

double mu_scale(const std::vector<int>& l, const std::vector<int>& k, double atom_h1_product) {
  return atom_h1_product * std::exp2(-alpha_exponent(l, k));
}

// --- spike fields -----------------------------------------------------------

namespace {

double spike_bump(double u) {
  constexpr double p = 0.35;
  u = std::abs(u);
  if (u <= p) return 1.0;
  if (u >= 1.0) return 0.0;
  double t = (1.0 - u) / (1.0 - p);
  double a = std::exp(-1.0 / t);
  return a / (a + std::exp(-1.0 / (1.0 - t)));
}

double spike_axis_sum(const Grid& g, double r, int center) {
  double acc = 0.0;
  for (int i = 0; i < g.n; ++i) acc += spike_bump(g.wrap((i - center) * g.spacing()) / r);
  return acc * g.spacing();
}

}  // namespace

double spike_feasible_lambda(const Grid& g) { return 0.98 / g.cell_area(); }

Field spike_field(const Grid& g, double lambda, std::uint64_t seed) {
  Rng rng = Rng(seed).fork(0x7366);
  int ci = int(rng.below(std::uint64_t(g.n)));
  int cj = int(rng.below(std::uint64_t(g.n)));
  return spike_field_at(g, lambda, ci, cj);
}

Field spike_field_at(const Grid& g, double lambda, int ci, int cj) {
  if (!(lambda >= 1.0)) throw std::invalid_argument("spike_field: lambda must be >= 1");
  if (lambda > spike_feasible_lambda(g))
    throw std::invalid_argument("spike_field: lambda " + std::to_string(lambda) +
                                " concentrates below one cell on this grid");
  ci = ((ci % g.n) + g.n) % g.n;
  cj = ((cj % g.n) + g.n) % g.n;
  double r_max = 0.42 * g.length;
  auto mass_at = [&](double r) { return lambda * spike_axis_sum(g, r, ci) * spike_axis_sum(g, r, cj); };
  if (mass_at(r_max) < 1.0)
    throw std::invalid_argument("spike_field: unit mass unreachable at lambda " + std::to_string(lambda));
  double lo = 0.0, hi = r_max, r = r_max;
  for (int it = 0; it < 200 && hi - lo > 1e-14 * r_max; ++it) {
    r = 0.5 * (lo + hi);
    (mass_at(r) >= 1.0 ? hi : lo) = r;
  }
  r = hi;
  double mass = mass_at(r);
  Field f(g);
  for (int i = 0; i < g.n; ++i) {
    double bx = spike_bump(g.wrap((i - ci) * g.spacing()) / r);
    if (bx == 0.0) continue;
    for (int j = 0; j < g.n; ++j)
      f.at(i, j) = lambda * bx * spike_bump(g.wrap((j - cj) * g.spacing()) / r);
  }
  f *= 1.0 / mass;
  return f;
}

// --- log-L1 (Lemma 2.1) -----------------------------------------------------

EstimateReport check_logl1(const VerifyOptions& v, const LogL1Options& o) {
  Grid grid = make_grid(v.grid_n);
  Multiplier m = make_multiplier(grid, v.operator_spec);
  if (m.window()) throw std::invalid_argument("check_logl1: operator must be unlocalized");
  CellPartition cells(grid);
  WeightProfile beta = make_weight_profile(grid);

  EstimateReport rep;
  rep.experiment = "log-l1";
  rep.param_names = {"rhs_kind", "family", "lambda", "index"};
  rep.provenance = make_provenance(v);

  struct Case {
    double family, lambda;
    int index;
    Field f;
  };
  std::vector<Case> bank;
  int amp_count = 0;
  for (int j = 0; j <= o.amp_pow_max; ++j) {
    double lam = std::exp2(j);
    if (lam > spike_feasible_lambda(grid)) break;
    bank.push_back({0.0, lam, j, spike_field(grid, lam, v.seed + std::uint64_t(j))});
    ++amp_count;
  }
  for (int j = 0; bank.size() < std::size_t(o.bank); ++j) {
    Field f = random_field(grid, v.seed + 1000 + std::uint64_t(j));
    double l1 = lp_norm(f, 1.0);
    if (l1 > 0.0) f *= 1.0 / l1;
    bank.push_back({1.0, 0.0, j, std::move(f)});
  }

  std::vector<double> lhs(bank.size()), n_mu(bank.size()), l1(bank.size());
  parallel_for(int(bank.size()), v.threads, [&](int i) {
    const Case& c = bank[std::size_t(i)];
    lhs[std::size_t(i)] = lp_norm(apply(m, c.f), 1.0);
    n_mu[std::size_t(i)] = n_mu_beta(c.f, o.mu, beta, cells);
    l1[std::size_t(i)] = lp_norm(c.f, 1.0);
  });

  double max_ratio = 0.0;
  std::vector<double> log_lam, log_plain;
  for (std::size_t i = 0; i < bank.size(); ++i) {
    const Case& c = bank[i];
    rep.add_row({0.0, c.family, c.lambda, double(c.index)}, lhs[i], n_mu[i]);
    rep.add_row({1.0, c.family, c.lambda, double(c.index)}, lhs[i], l1[i]);
    max_ratio = std::max(max_ratio, lhs[i] / n_mu[i]);
    if (c.family == 0.0) {
      log_lam.push_back(std::log2(c.lambda));
      log_plain.push_back(std::log2(lhs[i] / l1[i]));
    }
  }
  double growth = std::exp2(log_plain.back() - log_plain.front());
  LineFit plain_fit = fit_line(log_lam, log_plain);

  rep.add_fit("max_ratio", max_ratio);
  rep.add_fit("plain_ratio_growth", growth);
  rep.add_fit("plain_ratio_slope", plain_fit.slope);
  rep.add_fit("beta_l1", beta.l1);
  rep.add_fit("spike_amplitudes", double(amp_count));
  rep.add_threshold("max_ratio_max", 10.0);
  rep.add_threshold("plain_growth_min", 1.3);
  rep.add_check("ratio_bounded_by_n_mu_beta", max_ratio <= 10.0);
  rep.add_check("plain_l1_ratio_grows", growth >= 1.3);
  rep.finalize();
  return rep;
}

// --- commutator (Lemma 2.2) -------------------------------------------------

EstimateReport check_commutator(const VerifyOptions& v, const CommutatorOptions& o) {
  Grid grid = make_grid(v.grid_n);
  if (o.k_max > grid.band_max()) throw std::invalid_argument("check_commutator: k range beyond resolved bands");
  Multiplier base = make_multiplier(grid, v.operator_spec);

  EstimateReport rep;
  rep.experiment = "commutator";
  rep.param_names = {"n", "k"};
  rep.provenance = make_provenance(v);

  int nk = o.k_max - o.k_min + 1;
  int nn = o.n_max - o.n_min + 1;
  struct Row {
    double lhs, rhs;
  };
  std::vector<Row> rows(static_cast<std::size_t>(nk * nn));
  parallel_for(nk * nn, v.threads, [&](int idx) {
    int n = o.n_min + idx / nk;
    int k = o.k_min + idx % nk;
    Multiplier mn_high = localize(power(base, n), BandWindow::Kind::at_or_above, k);
    Rng rng = Rng(v.seed).fork(0xc0).fork(std::uint64_t(k));
    double best = 0.0;
    Row row{0.0, 1.0};
    for (int i = 0; i < o.bank; ++i) {
      Field a_k = random_band_atom(grid, k, rng.next_u64(), 1.0);
      Field f = i % 2 == 0 ? random_field(grid, rng.next_u64())
                           : random_band_atom(grid, 1 + int(rng.below(std::uint64_t(grid.band_max()))),
                                              rng.next_u64(), 1.0);
      double denom = lp_norm_inf(a_k) * lp_norm(f, 1.0);
      if (denom <= 0.0) continue;
      double num = lp_norm(commutator_apply(mn_high, a_k, f), 1.0);
      if (num / denom > best) {
        best = num / denom;
        row = {num, denom};
      }
    }
    rows[std::size_t(idx)] = row;
  });

  // ratio(n, k) tables for the fits; the same bank seeds are reused across n
  // so consecutive-n quotients are comparable.
  std::vector<std::vector<double>> ratio(static_cast<std::size_t>(nn), std::vector<double>(static_cast<std::size_t>(nk)));
  for (int idx = 0; idx < nk * nn; ++idx) {
    int in = idx / nk, ik = idx % nk;
    const Row& r = rows[std::size_t(idx)];
    rep.add_row({double(o.n_min + in), double(o.k_min + ik)}, r.lhs, r.rhs);
    ratio[std::size_t(in)][std::size_t(ik)] = r.lhs / r.rhs;
  }

  std::vector<double> ks(static_cast<std::size_t>(nk));
  for (int ik = 0; ik < nk; ++ik) ks[std::size_t(ik)] = double(o.k_min + ik);
  double worst_slope = -std::numeric_limits<double>::infinity();
  for (int in = 0; in < nn; ++in) {
    std::vector<double> logr(static_cast<std::size_t>(nk));
    for (int ik = 0; ik < nk; ++ik) logr[std::size_t(ik)] = std::log2(ratio[std::size_t(in)][std::size_t(ik)]);
    LineFit f = fit_line(ks, logr);
    rep.add_fit("slope_k_n" + std::to_string(o.n_min + in), f.slope);
    worst_slope = std::max(worst_slope, f.slope);
  }
  double growth = 0.0;
  for (int in = 0; in + 1 < nn; ++in)
    for (int ik = 0; ik < nk; ++ik)
      growth = std::max(growth, ratio[std::size_t(in + 1)][std::size_t(ik)] / ratio[std::size_t(in)][std::size_t(ik)]);

  rep.add_fit("max_slope_k", worst_slope);
  rep.add_fit("geometric_rate", growth);
  rep.add_threshold("slope_k_max", 0.15);
  rep.add_threshold("geometric_rate_max", 20.0);
  rep.add_check("ratio_uniform_in_k", worst_slope <= 0.15);
  rep.add_check("growth_geometric_in_n", nn < 2 || growth <= 20.0);
  rep.finalize();
  return rep;
}

// --- tri-frequency (Lemma 2.6 recursion step) --------------------------------

namespace {

// Closed support radius interval of a band on the lattice.
std::pair<double, double> band_support(int b) {
  return b == 0 ? std::make_pair(0.0, 2.0) : std::make_pair(std::exp2(b - 1), std::exp2(b + 1));
}

}  // namespace

bool trifrequency_vanishes(const FrequencyTriple& t) {
  auto [alo, ahi] = band_support(t.k);
  auto [hlo, hhi] = band_support(t.l);
  auto [wlo, whi] = band_support(t.l_prev);
  double plo = std::max(0.0, std::max(alo - hhi, hlo - ahi));
  double phi = ahi + hhi;
  return plo >= whi || phi <= wlo;
}

EstimateReport check_trifrequency(const VerifyOptions& v, const TrifrequencyOptions& o) {
  Grid grid = make_grid(v.grid_n);
  int kmax = grid.band_max();
  Multiplier m = make_multiplier(grid, v.operator_spec);

  std::vector<FrequencyTriple> triples = o.triples;
  if (triples.empty()) {
    int ks = std::min(5, kmax - 1);
    for (int l = 0; l <= ks; ++l) triples.push_back({ks, ks, l});              // case 3 sweep
    for (int l = 0; l <= std::min(ks + 1, kmax); ++l) triples.push_back({0, ks, l});  // case 1
    for (int l = 0; l <= std::min(ks + 1, kmax); ++l) triples.push_back({ks, 1, l});  // case 2
  }

  EstimateReport rep;
  rep.experiment = "trifrequency";
  rep.param_names = {"form", "l_prev", "k", "l", "separation", "vanish_expected"};
  rep.provenance = make_provenance(v);

  struct Out {
    double p_lhs, m_lhs, rhs;
  };
  std::vector<Out> results(triples.size());
  parallel_for(int(triples.size()), v.threads, [&](int ti) {
    const FrequencyTriple& t = triples[std::size_t(ti)];
    Multiplier m_lprev = localize(m, BandWindow::Kind::band, t.l_prev);
    Rng rng = Rng(v.seed).fork(0x7f).fork(std::uint64_t(t.k * 64 + t.l));

    // Candidate atoms: random plus the envelope-matched oscillation, whose
    // modulus tracks P_l of an aligned impulse (the near-extremal pair for
    // this separation).
    int ci = int(rng.below(std::uint64_t(grid.n)));
    int cj = int(rng.below(std::uint64_t(grid.n)));
    std::vector<Field> atoms;
    atoms.push_back(enveloped_band_atom(grid, t.k, std::min(t.l, t.k), ci, cj, 1.0));
    atoms.push_back(random_band_atom(grid, t.k, rng.next_u64(), 1.0));

    // Candidate h: aligned impulse, random fields, off-center impulses.
    std::vector<Field> bank;
    bank.push_back(delta_field(grid, ci, cj));
    for (int i = 2; i < o.bank; ++i)
      bank.push_back(i % 2 == 0 ? random_field(grid, rng.next_u64())
                                : delta_field(grid, int(rng.below(std::uint64_t(grid.n))),
                                              int(rng.below(std::uint64_t(grid.n)))));

    double best_p = 0.0, best_m = 0.0;
    for (const Field& a_k : atoms) {
      double a_h1 = sobolev_norm(a_k, 1.0);
      for (const Field& h : bank) {
        double h_l1 = lp_norm(h, 1.0);
        Field prod = pointwise_multiply(a_k, project_band(h, t.l));
        best_p = std::max(best_p, lp_norm(project_band(prod, t.l_prev), 1.0) / (a_h1 * h_l1));
        best_m = std::max(best_m, lp_norm(apply(m_lprev, prod), 1.0) / (a_h1 * h_l1));
      }
    }
    results[std::size_t(ti)] = {best_p, best_m, 1.0};
  });

  std::vector<double> sweep_sep, sweep_logratio;
  double vanish_worst = 0.0;
  for (std::size_t ti = 0; ti < triples.size(); ++ti) {
    const FrequencyTriple& t = triples[ti];
    double sep = std::min(std::abs(t.l - t.l_prev), std::abs(t.l - t.k));
    bool vanish = trifrequency_vanishes(t);
    const Out& r = results[ti];
    rep.add_row({0.0, double(t.l_prev), double(t.k), double(t.l), sep, vanish ? 1.0 : 0.0}, r.p_lhs, r.rhs);
    rep.add_row({1.0, double(t.l_prev), double(t.k), double(t.l), sep, vanish ? 1.0 : 0.0}, r.m_lhs, r.rhs);
    if (vanish) vanish_worst = std::max(vanish_worst, std::max(r.p_lhs, r.m_lhs) / r.rhs);
    if (t.l_prev == t.k && !vanish) {
      sweep_sep.push_back(sep);
      sweep_logratio.push_back(std::log2(r.p_lhs / r.rhs));
    }
  }
  LineFit decay = fit_line(sweep_sep, sweep_logratio);

  rep.add_fit("decay_slope", decay.slope);
  rep.add_fit("decay_intercept", decay.intercept);
  rep.add_fit("vanish_worst_ratio", vanish_worst);
  rep.add_threshold("vanish_tolerance", 1e-12);
  rep.add_threshold("decay_slope_max", -0.8);
  rep.add_check("vanishing_cases_exact", vanish_worst <= 1e-12);
  rep.add_check("decay_with_separation", decay.slope <= -0.8);
  rep.finalize();
  return rep;
}

// --- multilinear (Proposition 2.4 / Lemma 2.6) -------------------------------

EstimateReport check_multilinear(const VerifyOptions& v, const MultilinearOptions& o) {
  Grid grid = make_grid(v.grid_n);
  int band_cap = std::min(o.band_cap, grid.band_max());
  Multiplier m = make_multiplier(grid, v.operator_spec);

  EstimateReport rep;
  rep.experiment = "multilinear";
  rep.param_names = {"n", "tuple", "f_index"};
  rep.provenance = make_provenance(v, "f_index: 0 aligned impulse, 1 aligned spike, 2 random, 3 offset impulse");

  struct Job {
    int n, tuple, findex;
    int ci, cj;
    std::vector<int> bands;
  };
  std::vector<Job> jobs;
  Rng tuple_rng = Rng(v.seed).fork(0x3141);
  for (int n = 1; n <= o.n_max; ++n)
    for (int t = 0; t < o.tuples_per_n; ++t) {
      std::vector<int> bands(static_cast<std::size_t>(n));
      for (auto& b : bands) b = int(tuple_rng.below(std::uint64_t(band_cap + 1)));
      int ci = int(tuple_rng.below(std::uint64_t(grid.n)));
      int cj = int(tuple_rng.below(std::uint64_t(grid.n)));
      for (int fi = 0; fi < o.f_bank; ++fi) jobs.push_back({n, t, fi, ci, cj, bands});
    }

  std::vector<double> lhs(jobs.size()), rhs(jobs.size());
  parallel_for(int(jobs.size()), v.threads, [&](int ji) {
    const Job& job = jobs[std::size_t(ji)];
    // Co-located band packets: the estimate flows through one Bernstein step
    // per factor, and aligned packets saturate those steps uniformly in k.
    double h1_product = 1.0;
    std::vector<Field> atoms;
    for (int i = 0; i < job.n; ++i) {
      Field a = enveloped_band_atom(grid, job.bands[std::size_t(i)], job.bands[std::size_t(i)], job.ci, job.cj, 1.0);
      h1_product *= sobolev_norm(a, 1.0);
      atoms.push_back(std::move(a));
    }
    Rng rng = Rng(v.seed).fork(0x6d6c).fork(std::uint64_t(ji));
    Field f;
    switch (job.findex % 4) {
      case 0: f = delta_field(grid, job.ci, job.cj); break;
      case 1: f = spike_field_at(grid, std::min(64.0, spike_feasible_lambda(grid)), job.ci, job.cj); break;
      case 2: {
        f = random_field(grid, rng.next_u64());
        f *= 1.0 / lp_norm(f, 1.0);
        break;
      }
      default: f = delta_field(grid, int(rng.below(std::uint64_t(grid.n))), int(rng.below(std::uint64_t(grid.n))));
    }
    Field w = apply(m, f);
    for (int i = job.n - 1; i >= 0; --i) w = apply(m, pointwise_multiply(atoms[std::size_t(i)], w));
    lhs[std::size_t(ji)] = lp_norm(w, 1.0);
    rhs[std::size_t(ji)] = h1_product * n_of(f);
  });

  std::vector<std::vector<double>> per_n(static_cast<std::size_t>(o.n_max + 1));
  std::map<std::pair<int, int>, std::vector<double>> per_group;  // (n, f role) over tuples
  for (std::size_t ji = 0; ji < jobs.size(); ++ji) {
    const Job& job = jobs[ji];
    rep.add_row({double(job.n), double(job.tuple), double(job.findex)}, lhs[ji], rhs[ji]);
    per_n[std::size_t(job.n)].push_back(lhs[ji] / rhs[ji]);
    per_group[{job.n, job.findex % 4}].push_back(lhs[ji] / rhs[ji]);
  }

  std::vector<double> ns, log_medians;
  for (int n = 1; n <= o.n_max; ++n) {
    ns.push_back(double(n));
    log_medians.push_back(std::log2(median(per_n[std::size_t(n)])));
  }
  LineFit fit = fit_line(ns, log_medians);
  // Uniformity over the tuple sample within each (n, source) group; only the
  // aligned sources (roles 0, 1) isolate the k-dependence, the others vary
  // with the random source geometry and are recorded as plain rows.
  double worst_uniformity = 0.0;
  for (const auto& [key, ratios] : per_group)
    if (key.second <= 1) worst_uniformity = std::max(worst_uniformity, max_over(ratios) / median(ratios));

  rep.add_fit("fitted_B", std::exp2(fit.slope));
  rep.add_fit("fit_r2", fit.r2);
  rep.add_fit("max_over_median", worst_uniformity);
  rep.add_threshold("fit_r2_min", 0.8);
  rep.add_threshold("max_over_median_max", 10.0);
  rep.add_check("growth_exponential_not_factorial", fit.r2 >= 0.8);
  rep.add_check("ratio_uniform_over_tuples", worst_uniformity <= 10.0);
  rep.finalize();
  return rep;
}

// --- interpolation (Lemma 3.1) ------------------------------------------------

EstimateReport check_interpolation(const VerifyOptions& v, const CoefficientDecomposition& cd) {
  const TimeGrid& tg = cd.b.time_grid();
  const Grid& grid = cd.b.grid();
  int kmax = grid.band_max();

  EstimateReport rep;
  rep.experiment = "interpolation";
  rep.param_names = {"k", "norm_kind"};
  rep.provenance = make_provenance(v, "norm_kind 0 = L^inf, 1 = H^1");

  SpaceTimeField dbdt = cd.db_dt();
  struct BandData {
    double sup_inf = 0.0, sup_h1 = 0.0, norm2 = 0.0;
  };
  std::vector<BandData> bands(static_cast<std::size_t>(kmax + 1));
  for (int k = 0; k <= kmax; ++k) {
    std::vector<double> bh2(static_cast<std::size_t>(tg.nodes())), dbh1(bh2.size());
    BandData d;
    for (int i = 0; i <= tg.nt; ++i) {
      Field bk = project_band(cd.b.slice(i), k);
      Field dk = project_band(dbdt.slice(i), k);
      d.sup_inf = std::max(d.sup_inf, lp_norm_inf(bk));
      double h1 = sobolev_norm(bk, 1.0);
      d.sup_h1 = std::max(d.sup_h1, h1);
      double h2 = sobolev_norm(bk, 2.0);
      bh2[std::size_t(i)] = h2 * h2;
      double dh1 = sobolev_norm(dk, 1.0);
      dbh1[std::size_t(i)] = dh1 * dh1;
    }
    d.norm2 = std::sqrt(trapezoid(tg, bh2) + trapezoid(tg, dbh1));
    bands[std::size_t(k)] = d;
  }

  double top = 0.0;
  for (const auto& d : bands) top = std::max(top, d.norm2);
  if (top <= 0.0) throw std::invalid_argument("check_interpolation: b vanishes identically");

  std::vector<double> inf_ratios, h1_ratios;
  for (int k = 0; k <= kmax; ++k) {
    const BandData& d = bands[std::size_t(k)];
    if (d.norm2 <= 1e-8 * top) continue;  // empty band: row skipped
    double gain = std::exp2(0.5 * k);
    rep.add_row({double(k), 0.0}, d.sup_inf * gain, d.norm2);
    rep.add_row({double(k), 1.0}, d.sup_h1 * gain, d.norm2);
    inf_ratios.push_back(d.sup_inf * gain / d.norm2);
    h1_ratios.push_back(d.sup_h1 * gain / d.norm2);
  }
  if (inf_ratios.size() < 3)
    throw std::invalid_argument("check_interpolation: need b mass in at least 3 bands");

  double c_inf = max_over(inf_ratios), c_h1 = max_over(h1_ratios);
  double u_inf = c_inf / median(inf_ratios), u_h1 = c_h1 / median(h1_ratios);
  rep.add_fit("C_I_linf", c_inf);
  rep.add_fit("C_I_h1", c_h1);
  rep.add_fit("max_over_median_linf", u_inf);
  rep.add_fit("max_over_median_h1", u_h1);
  rep.add_threshold("max_over_median_max", 3.0);
  rep.add_check("uniform_linf", u_inf <= 3.0);
  rep.add_check("uniform_h1", u_h1 <= 3.0);
  rep.finalize();
  return rep;
}

// --- simplex combinatorics (Lemma 3.3) ---------------------------------------

EstimateReport check_simplex_combinatorics(const VerifyOptions& v, const SimplexOptions& o) {
  if (o.n_max > 12 || o.n_min < 1) throw std::invalid_argument("check_simplex_combinatorics: n range must be in [1, 12]");
  EstimateReport rep;
  rep.experiment = "simplex";
  rep.param_names = {"n", "m", "trial", "kind"};
  rep.provenance = make_provenance(v, "kind 0 = volume case, 1 = random profiles");

  TimeGrid tg{o.nodes};
  auto norm1 = [&](const std::function<double(double)>& f) {
    std::vector<double> s(static_cast<std::size_t>(tg.nodes()));
    for (int i = 0; i <= tg.nt; ++i) s[std::size_t(i)] = std::abs(f(tg.node(i)));
    return trapezoid(tg, s);
  };
  auto norm2 = [&](const std::function<double(double)>& f) {
    std::vector<double> s(static_cast<std::size_t>(tg.nodes()));
    for (int i = 0; i <= tg.nt; ++i) s[std::size_t(i)] = f(tg.node(i)) * f(tg.node(i));
    return std::sqrt(trapezoid(tg, s));
  };

  double factorial[16];
  factorial[0] = 1.0;
  for (int i = 1; i < 16; ++i) factorial[i] = factorial[i - 1] * i;

  double max_ratio = 0.0, volume_worst = 0.0;
  Rng rng = Rng(v.seed).fork(0x513);
  for (int n = o.n_min; n <= o.n_max; ++n) {
    // Pure-volume case: all profiles 1, every position in the L^1 role.
    std::vector<std::function<double(double)>> ones(static_cast<std::size_t>(n), [](double) { return 1.0; });
    double vol = simplex_integral(ones, o.nodes);
    rep.add_row({double(n), double(n), 0.0, 0.0}, vol, 1.0);
    volume_worst = std::max(volume_worst, std::abs(vol * factorial[n] - 1.0));
    max_ratio = std::max(max_ratio, vol);

    for (int mcount = 0; mcount <= n; ++mcount)
      for (int trial = 0; trial < o.trials; ++trial) {
        std::vector<std::function<double(double)>> profiles;
        std::vector<int> roles(static_cast<std::size_t>(n), 2);
        // Random positions for the m L^1-role slots.
        std::vector<int> idx(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) idx[std::size_t(i)] = i;
        for (int i = n - 1; i > 0; --i) std::swap(idx[std::size_t(i)], idx[rng.below(std::uint64_t(i + 1))]);
        for (int i = 0; i < mcount; ++i) roles[std::size_t(idx[std::size_t(i)])] = 1;

        double bound = std::pow(factorial[n - mcount], -0.5);
        for (int i = 0; i < n; ++i) {
          double a0 = rng.uniform(-1.0, 1.0), a1 = rng.uniform(-1.0, 1.0), a2 = rng.uniform(-1.0, 1.0);
          auto f = [a0, a1, a2](double t) {
            double q = a0 + a1 * std::cos(two_pi * t) + a2 * std::sin(two_pi * 2.0 * t);
            return q * q + 0.05;
          };
          bound *= roles[std::size_t(i)] == 1 ? norm1(f) : norm2(f);
          profiles.push_back(f);
        }
        double integral = simplex_integral(profiles, o.nodes);
        rep.add_row({double(n), double(mcount), double(trial + 1), 1.0}, integral, bound);
        max_ratio = std::max(max_ratio, integral / bound);
      }
  }

  rep.add_fit("max_ratio", max_ratio);
  rep.add_fit("volume_worst_relative_error", volume_worst);
  rep.add_threshold("max_ratio_max", 1.01);
  rep.add_threshold("volume_tolerance", 0.02);
  rep.add_check("ratio_bounded", max_ratio <= 1.01);
  rep.add_check("volume_within_2pct", volume_worst <= 0.02);
  rep.finalize();
  return rep;
}

// --- log-loss probe (Theorem 1.1) --------------------------------------------

EstimateReport probe_log_loss(const VerifyOptions& v, const CoefficientDecomposition& cd, const LogLossOptions& o) {
  Grid grid = make_grid(v.grid_n);
  if (!(cd.a.grid() == grid)) throw std::invalid_argument("probe_log_loss: coefficient grid mismatch");
  if (cd.delta0 > 0.2 + 1e-12) throw std::invalid_argument("probe_log_loss: delta0 must be <= 0.2");
  TimeGrid tg = cd.a.time_grid();
  Multiplier m = make_multiplier(grid, v.operator_spec);

  EstimateReport rep;
  rep.experiment = "log-loss";
  rep.param_names = {"lambda"};
  rep.provenance = make_provenance(v);

  // One seed for the whole sweep: the spike center and timing stay fixed and
  // only the amplitude/support pair moves along the family.
  std::vector<double> sup(o.lambdas.size()), ng(o.lambdas.size());
  parallel_for(int(o.lambdas.size()), v.threads, [&](int i) {
    SpaceTimeField g = g_family("spike-sweep", o.lambdas[std::size_t(i)], v.seed, grid, tg);
    SolveResult r = reference_solve(cd, m, g, o.substeps);
    sup[std::size_t(i)] = r.sup_l1;
    ng[std::size_t(i)] = n_of_g(g);
  });

  std::vector<double> loglam(o.lambdas.size());
  for (std::size_t i = 0; i < o.lambdas.size(); ++i) {
    loglam[i] = std::log(o.lambdas[i]);
    rep.add_row({o.lambdas[i]}, sup[i], ng[i]);
  }
  LineFit fit = fit_line(loglam, sup);
  double d2_mean = 0.0;
  if (sup.size() >= 3) {
    for (std::size_t i = 1; i + 1 < sup.size(); ++i) d2_mean += sup[i + 1] - 2.0 * sup[i] + sup[i - 1];
    d2_mean /= double(sup.size() - 2);
  }
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sup.size(); ++i) {
    rmax = std::max(rmax, sup[i] / ng[i]);
    rmin = std::min(rmin, sup[i] / ng[i]);
  }

  rep.add_fit("A", fit.slope);
  rep.add_fit("B", fit.intercept);
  rep.add_fit("r2", fit.r2);
  rep.add_fit("second_difference_mean", d2_mean);
  rep.add_fit("ratio_max_over_min", rmax / rmin);
  rep.add_threshold("r2_min", 0.9);
  rep.add_threshold("second_difference_mean_max", 0.0);
  rep.add_threshold("ratio_max_over_min_max", 3.0);
  rep.add_check("linear_in_log_lambda", fit.r2 >= 0.9);
  rep.add_check("no_convex_trend", d2_mean <= 0.0);
  rep.add_check("ratio_bounded", rmax / rmin <= 3.0);
  rep.finalize();
  return rep;
}

// --- delta0 sweep (series contraction) ----------------------------------------

EstimateReport sweep_delta0(const VerifyOptions& v, const CoeffSpec& base_spec, const SpaceTimeField& g,
                            const SweepDelta0Options& o) {
  Grid grid = g.grid();
  TimeGrid tg = g.time_grid();
  Multiplier m = make_multiplier(grid, v.operator_spec);
  if (o.deltas.size() < 2) throw std::invalid_argument("sweep_delta0: need at least two delta values");
  for (std::size_t i = 1; i < o.deltas.size(); ++i)
    if (!(o.deltas[i] > o.deltas[i - 1])) throw std::invalid_argument("sweep_delta0: deltas must increase");

  EstimateReport rep;
  rep.experiment = "delta0-sweep";
  rep.param_names = {"delta0", "n"};
  rep.provenance = make_provenance(v);
  double n_g = n_of_g(g);

  std::vector<std::vector<double>> y(o.deltas.size());
  parallel_for(int(o.deltas.size()), v.threads, [&](int di) {
    CoeffSpec spec = base_spec;
    spec.delta0 = o.deltas[std::size_t(di)];
    CoefficientDecomposition cd = synthesize(spec, grid, tg);
    std::vector<double> yn(static_cast<std::size_t>(o.n_max + 1));
    for (int n = 0; n <= o.n_max; ++n) yn[std::size_t(n)] = dyson_term(cd, m, g, n).sup_l1();
    y[std::size_t(di)] = std::move(yn);
  });

  std::vector<double> rhos;
  for (std::size_t di = 0; di < o.deltas.size(); ++di) {
    double delta = o.deltas[di];
    std::vector<double> ns, logy;
    for (int n = 0; n <= o.n_max; ++n) {
      double yn = y[di][std::size_t(n)];
      rep.add_row({delta, double(n)}, yn, n_g * std::pow(delta, n));
      if (n >= 1 && yn > 1e-280) {
        ns.push_back(double(n));
        logy.push_back(std::log2(yn));
      }
    }
    if (ns.size() < 2) throw std::runtime_error("sweep_delta0: series terms vanished; cannot fit a rate");
    LineFit fit = fit_line(ns, logy);
    double rho = std::exp2(fit.slope);
    rhos.push_back(rho);
    char key[48];
    std::snprintf(key, sizeof key, "rho_%.6g", delta);
    rep.add_fit(key, rho);
  }

  bool monotone = true;
  for (std::size_t i = 1; i < rhos.size(); ++i) monotone = monotone && rhos[i] > rhos[i - 1];
  double threshold_est = o.deltas.front() / rhos.front();

  rep.add_fit("empirical_threshold_delta0", threshold_est);
  rep.add_threshold("rho_min_delta_max", 1.0);
  rep.add_check("rho_monotone_in_delta0", monotone);
  rep.add_check("contracting_at_smallest_delta0", rhos.front() < 1.0);
  rep.finalize();
  return rep;
}

std::vector<ExperimentInfo> experiment_catalog() {
  return {
      {"log-l1", "Lemma 2.1", "L^1 bound of a multiplier against the lattice log functional N_mu_beta"},
      {"commutator", "Lemma 2.2", "L^1 uniformity of [(M^n)_{>=k}, a_k] over bands and powers"},
      {"trifrequency", "Lemma 2.6 recursion step", "decay of P_l' a_k P_l in the adjacent-frequency separation"},
      {"multilinear", "Proposition 2.4 / Lemma 2.6", "exponential (not factorial) growth of M a_k1 M ... a_kn M"},
      {"interpolation", "Lemma 3.1", "2^{-k/2} gain of sup-in-time band norms against the b-norm"},
      {"simplex", "Lemma 3.3", "mixed L^1/L^2 bound of ordered simplex integrals"},
      {"log-loss", "Theorem 1.1", "single-logarithm growth of sup_t ||u||_1 against N(g)"},
      {"delta0-sweep", "series term bound (eq. J_n)", "geometric contraction rate of ||J_n|| versus delta0"},
  };
}

}  // namespace lptx
