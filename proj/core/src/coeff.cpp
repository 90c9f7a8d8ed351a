#include "lptx/coeff.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "lptx/lp.hpp"
#include "lptx/norms.hpp"
#include "lptx/random.hpp"

namespace lptx {

namespace {

using nlohmann::json;

// Hermitian-symmetrizes a spectral table so the physical field is real,
// zeroing the non-mirrored Nyquist row/column and the DC mode.
void symmetrize_real(Field& spec) {
  const Grid& g = spec.grid();
  int n = g.n;
  Field orig = spec;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (g.mode(i) == -n / 2 || g.mode(j) == -n / 2) {
        spec.at(i, j) = 0.0;
        continue;
      }
      int im = (n - i) % n, jm = (n - j) % n;
      spec.at(i, j) = 0.5 * (orig.at(i, j) + std::conj(orig.at(im, jm)));
    }
  spec.at(0, 0) = 0.0;
}

Field normalize_h1(Field f, double target_h1, const char* who) {
  double h1 = sobolev_norm(f, 1.0);
  if (target_h1 == 0.0) {
    f *= 0.0;
    return f;
  }
  if (h1 <= 0.0) throw std::runtime_error(std::string(who) + ": degenerate atom");
  f *= target_h1 / h1;
  return f;
}

double fejer_value(int m, double t) {
  // (1/m) * [1 + 2 sum_{j<m} (1 - j/m) cos(2 pi j t)], peak m/m = 1 at t = 0.
  double s = 1.0;
  for (int j = 1; j < m; ++j) s += 2.0 * (1.0 - double(j) / m) * std::cos(two_pi * j * t);
  return s / m;
}

double fejer_derivative(int m, double t) {
  double s = 0.0;
  for (int j = 1; j < m; ++j) s += -2.0 * two_pi * j * (1.0 - double(j) / m) * std::sin(two_pi * j * t);
  return s / m;
}

std::pair<std::string, int> split_profile(const std::string& profile) {
  auto colon = profile.find(':');
  if (colon == std::string::npos) return {profile, 0};
  int m = std::stoi(profile.substr(colon + 1));
  if (m < 1) throw std::invalid_argument("profile frequency must be >= 1: " + profile);
  return {profile.substr(0, colon), m};
}

}  // namespace

double profile_value(const std::string& profile, double t) {
  auto [kind, m] = split_profile(profile);
  if (kind == "const") return 1.0;
  if (kind == "sin") return std::sin(two_pi * m * t);
  if (kind == "cos") return std::cos(two_pi * m * t);
  if (kind == "fejer") return fejer_value(m, t - 0.5);
  throw std::invalid_argument("unknown time profile: " + profile);
}

double profile_derivative(const std::string& profile, double t) {
  auto [kind, m] = split_profile(profile);
  if (kind == "const") return 0.0;
  if (kind == "sin") return two_pi * m * std::cos(two_pi * m * t);
  if (kind == "cos") return -two_pi * m * std::sin(two_pi * m * t);
  if (kind == "fejer") return fejer_derivative(m, t - 0.5);
  throw std::invalid_argument("unknown time profile: " + profile);
}

Field random_band_atom(const Grid& grid, int k, std::uint64_t seed, double target_h1) {
  if (k < 0 || k > grid.band_max()) throw std::invalid_argument("random_band_atom: unresolvable band");
  Rng rng = Rng(seed).fork(0x61746f6d).fork(std::uint64_t(k));
  Field spec(grid, true);
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j) {
      double re = rng.normal(), im = rng.normal();
      spec.at(i, j) = std::complex<double>(re, im) * band_symbol(k, grid.freq_norm(i, j));
    }
  symmetrize_real(spec);
  Field atom = real_part(inverse_transform(spec));
  return normalize_h1(std::move(atom), target_h1, "random_band_atom");
}

Field packet_band_atom(const Grid& grid, int k, std::uint64_t seed, double target_h1) {
  if (k < 0 || k > grid.band_max()) throw std::invalid_argument("packet_band_atom: unresolvable band");
  Rng rng = Rng(seed).fork(0x70636b74).fork(std::uint64_t(k));
  int oi = int(rng.below(std::uint64_t(grid.n)));
  int oj = int(rng.below(std::uint64_t(grid.n)));
  Field spec(grid, true);
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j) {
      double w = band_symbol(k, grid.freq_norm(i, j));
      // Coherent packet: all band modes in phase at the seeded center.
      double phase = -two_pi * (double(grid.mode(i)) * oi + double(grid.mode(j)) * oj) / grid.n;
      spec.at(i, j) = w * std::polar(1.0, phase);
    }
  symmetrize_real(spec);
  Field atom = real_part(inverse_transform(spec));
  return normalize_h1(std::move(atom), target_h1, "packet_band_atom");
}

Field enveloped_band_atom(const Grid& grid, int k, int env_scale, int ci, int cj, double target_h1) {
  if (k < 0 || k > grid.band_max()) throw std::invalid_argument("enveloped_band_atom: unresolvable band");
  if (env_scale > k) throw std::invalid_argument("enveloped_band_atom: envelope narrower than the carrier band");
  // Carrier at the band center so the envelope sidebands stay inside.
  int carrier = k == 0 ? 1 : 3 << (k - 1);
  double width = std::max(std::exp2(-env_scale) * grid.length / two_pi, 2.5 * grid.spacing());
  Field f(grid);
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j) {
      double dx = grid.wrap((i - ci) * grid.spacing());
      double dy = grid.wrap((j - cj) * grid.spacing());
      double env = std::exp(-0.5 * (dx * dx + dy * dy) / (width * width));
      f.at(i, j) = env * std::cos((two_pi / grid.length) * carrier * dx);
    }
  f = project_band(f, k);
  return normalize_h1(std::move(f), target_h1, "enveloped_band_atom");
}

Field delta_field(const Grid& grid, int ci, int cj) {
  Field f(grid);
  f.at(((ci % grid.n) + grid.n) % grid.n, ((cj % grid.n) + grid.n) % grid.n) = 1.0 / grid.cell_area();
  return f;
}

Field random_field(const Grid& grid, std::uint64_t seed) {
  Rng rng = Rng(seed).fork(0x66696c64);
  int cutoff = 1 << grid.band_max();
  Field spec(grid, true);
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j)
      if (grid.freq_norm(i, j) <= double(cutoff)) spec.at(i, j) = {rng.normal(), rng.normal()};
  symmetrize_real(spec);
  Field f = real_part(inverse_transform(spec));
  double l2 = lp_norm(f, 2.0);
  if (l2 > 0.0) f *= 1.0 / l2;
  return f;
}

CoeffSpec parse_coeff_spec(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw std::invalid_argument("coefficient spec: parse error at line " + std::to_string(line) + ": " + e.what());
  }
  auto parse_entries = [](const json& arr, const char* who) {
    std::vector<CoeffEntry> out;
    for (const auto& e : arr) {
      CoeffEntry entry;
      for (const auto& [key, value] : e.items()) {
        if (key == "band")
          entry.band = value.get<int>();
        else if (key == "profile")
          entry.profile = value.get<std::string>();
        else if (key == "amp")
          entry.amplitude = value.get<double>();
        else if (key == "atom")
          entry.atom = value.get<std::string>();
        else
          throw std::invalid_argument(std::string("coefficient spec: unknown key '") + key + "' in " + who);
      }
      if (entry.atom != "random" && entry.atom != "packet")
        throw std::invalid_argument("coefficient spec: atom must be 'random' or 'packet'");
      out.push_back(entry);
    }
    return out;
  };
  CoeffSpec spec;
  for (const auto& [key, value] : doc.items()) {
    if (key == "b")
      spec.b = parse_entries(value, "b");
    else if (key == "c")
      spec.c = parse_entries(value, "c");
    else if (key == "delta0")
      spec.delta0 = value.get<double>();
    else if (key == "seed")
      spec.seed = value.get<std::uint64_t>();
    else
      throw std::invalid_argument("coefficient spec: unknown key '" + key + "'");
  }
  if (spec.b.empty() && spec.c.empty()) throw std::invalid_argument("coefficient spec: empty entry lists");
  if (!(spec.delta0 > 0.0)) throw std::invalid_argument("coefficient spec: delta0 must be positive");
  return spec;
}

CoeffSpec load_coeff_spec(const std::filesystem::path& file) {
  std::ifstream is(file);
  if (!is) throw std::invalid_argument("coefficient spec: cannot open " + file.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_coeff_spec(ss.str());
}

CoeffSpec builtin_coeff_spec(const std::string& name) {
  CoeffSpec spec;
  if (name == "default-smooth") {
    spec.b = {{2, "sin:1", 1.0, "random"}, {3, "cos:2", 0.7, "random"}};
    spec.c = {{1, "const", 0.8, "random"}, {2, "sin:2", 0.5, "random"}, {3, "cos:1", 0.4, "random"}};
  } else if (name == "interpolation-family") {
    // Hyperbolic-critical family: band-k packets paired with time bumps of
    // width ~ 2^-k so the k-uniform interpolation ratio is saturated.
    for (int k = 1; k <= 6; ++k)
      spec.b.push_back({k, "fejer:" + std::to_string(2 << k), 1.0, "packet"});
    spec.c = {{1, "const", 0.2, "random"}};
  } else if (name == "time-constant") {
    spec.c = {{1, "const", 1.0, "random"}, {2, "const", 0.6, "random"}};
  } else if (name == "logloss-small") {
    // b-free and low-band: the H^2-weighted normalizer (b part) and the
    // 2^k-weighted coefficient norms (high bands) would otherwise scale the
    // pointwise coupling far below the log-loss signal.
    spec.c = {{0, "const", 1.0, "packet"}, {1, "sin:1", 0.3, "random"}};
  } else {
    throw std::invalid_argument("unknown builtin coefficient spec: " + name);
  }
  return spec;
}

CoefficientDecomposition synthesize(const CoeffSpec& spec, const Grid& grid, const TimeGrid& tg) {
  if (spec.b.empty() && spec.c.empty()) throw std::invalid_argument("synthesize: empty spec");
  int kmax = grid.band_max();
  for (const auto& e : spec.b)
    if (e.band > kmax) throw std::invalid_argument("synthesize: b entry band exceeds band_max");
  for (const auto& e : spec.c)
    if (e.band > kmax) throw std::invalid_argument("synthesize: c entry band exceeds band_max");

  auto make_atom = [&](const CoeffEntry& e, std::uint64_t salt) {
    return e.atom == "packet" ? packet_band_atom(grid, e.band, spec.seed + salt, 1.0)
                              : random_band_atom(grid, e.band, spec.seed + salt, 1.0);
  };

  SpaceTimeField b(tg, grid), c(tg, grid), dbdt(tg, grid);
  std::uint64_t salt = 1;
  for (const auto& e : spec.b) {
    Field atom = make_atom(e, salt++);
    for (int i = 0; i <= tg.nt; ++i) {
      double t = tg.node(i);
      Field scaled_b = atom;
      scaled_b *= e.amplitude * profile_value(e.profile, t);
      b.slice(i) += scaled_b;
      Field scaled_d = atom;
      scaled_d *= e.amplitude * profile_derivative(e.profile, t);
      dbdt.slice(i) += scaled_d;
    }
  }
  for (const auto& e : spec.c) {
    Field atom = make_atom(e, 1000 + salt++);
    for (int i = 0; i <= tg.nt; ++i) {
      Field scaled = atom;
      scaled *= e.amplitude * profile_value(e.profile, tg.node(i));
      c.slice(i) += scaled;
    }
  }

  CoefficientDecomposition cd{dbdt + c, std::move(b), std::move(c), spec.delta0};
  CoefficientNorms norms = coefficient_norms(cd);
  double worst = norms.max();
  if (worst <= 0.0) throw std::invalid_argument("synthesize: spec produced identically zero data");
  // One common factor keeps a = d_t b + c intact under normalization.
  double s = spec.delta0 / worst;
  cd.a *= s;
  cd.b *= s;
  cd.c *= s;
  return cd;
}

namespace {

// 1D plateau bump used by the g families; peak value exactly 1.
double g_bump(double u) {
  constexpr double p = 0.35;
  u = std::abs(u);
  if (u <= p) return 1.0;
  if (u >= 1.0) return 0.0;
  double t = (1.0 - u) / (1.0 - p);
  double a = std::exp(-1.0 / t);
  return a / (a + std::exp(-1.0 / (1.0 - t)));
}

struct SpikeShape {
  double width_t;
  double radius_x;
};

// Discrete space-time mass of the unit-peak separable spike.
double spike_mass(const Grid& g, const TimeGrid& tg, const SpikeShape& s, int t0, int xi, int xj) {
  std::vector<double> tprof(std::size_t(tg.nodes()));
  for (int i = 0; i <= tg.nt; ++i) tprof[std::size_t(i)] = g_bump((tg.node(i) - tg.node(t0)) / s.width_t);
  double tmass = trapezoid(tg, tprof);
  auto axis_sum = [&](int center) {
    double acc = 0.0;
    for (int i = 0; i < g.n; ++i) acc += g_bump(g.wrap((i - center) * g.spacing()) / s.radius_x);
    return acc * g.spacing();
  };
  return tmass * axis_sum(xi) * axis_sum(xj);
}

}  // namespace

SpaceTimeField g_family(const std::string& kind, double lambda, std::uint64_t seed, const Grid& grid,
                        const TimeGrid& tg) {
  if (kind == "constant") {
    SpaceTimeField g(tg, grid);
    double v = 1.0 / (grid.length * grid.length);
    for (int i = 0; i <= tg.nt; ++i)
      for (auto& z : g.slice(i).data()) z = v;
    return g;
  }
  if (kind == "band-limited") {
    Rng rng = Rng(seed).fork(0x67626c);
    Field atom1 = random_band_atom(grid, 1, rng.next_u64(), 1.0);
    Field atom2 = random_band_atom(grid, std::min(3, grid.band_max()), rng.next_u64(), 1.0);
    SpaceTimeField g(tg, grid);
    double phase = rng.uniform(0.0, 1.0);
    for (int i = 0; i <= tg.nt; ++i) {
      double t = tg.node(i);
      Field s1 = atom1;
      s1 *= std::cos(two_pi * (t + phase));
      Field s2 = atom2;
      s2 *= std::sin(two_pi * 2.0 * t);
      g.slice(i) = s1 + s2;
    }
    std::vector<double> l1(std::size_t(tg.nodes()));
    for (int i = 0; i <= tg.nt; ++i) l1[std::size_t(i)] = lp_norm(g.slice(i), 1.0);
    double mass = trapezoid(tg, l1);
    if (mass > 0.0) g *= 1.0 / mass;
    return g;
  }
  if (kind != "spike-sweep") throw std::invalid_argument("g_family: unknown kind " + kind);
  if (!(lambda >= 1.0)) throw std::invalid_argument("g_family: spike-sweep needs lambda >= 1");

  // Seeded center on grid nodes; translation leaves both norms unchanged.
  Rng rng = Rng(seed).fork(0x73706b);
  int xi = int(rng.below(std::uint64_t(grid.n)));
  int xj = int(rng.below(std::uint64_t(grid.n)));
  int lo = (3 * tg.nt) / 10, hi = (7 * tg.nt) / 10;
  int t0 = lo + int(rng.below(std::uint64_t(hi - lo + 1)));

  // Peak is pinned at exactly lambda on a node; the support scale is bisected
  // until the discrete mass lambda * T(w) * R(r)^2 equals 1.
  const double w_fix = 0.2, w_max = 0.45, r_max = 0.42 * grid.length;
  auto mass_at = [&](double w, double r) {
    return lambda * spike_mass(grid, tg, SpikeShape{w, r}, t0, xi, xj);
  };
  double w = w_fix, r = r_max;
  if (mass_at(w_fix, r_max) >= 1.0) {
    double alo = 0.0, ahi = r_max;
    for (int it = 0; it < 200; ++it) {
      r = 0.5 * (alo + ahi);
      (mass_at(w, r) >= 1.0 ? ahi : alo) = r;
      if (ahi - alo < 1e-14 * r_max) break;
    }
    r = ahi;
  } else if (mass_at(w_max, r_max) >= 1.0) {
    double alo = w_fix, ahi = w_max;
    for (int it = 0; it < 200; ++it) {
      w = 0.5 * (alo + ahi);
      (mass_at(w, r_max) >= 1.0 ? ahi : alo) = w;
      if (ahi - alo < 1e-15) break;
    }
    w = ahi;
  } else {
    throw std::invalid_argument("g_family: spike-sweep mass 1 unreachable at this grid/nt for lambda " +
                                std::to_string(lambda));
  }
  double mass = mass_at(w, r);

  SpaceTimeField g(tg, grid);
  for (int i = 0; i <= tg.nt; ++i) {
    double tv = g_bump((tg.node(i) - tg.node(t0)) / w);
    if (tv == 0.0) continue;
    Field& s = g.slice(i);
    for (int p = 0; p < grid.n; ++p) {
      double bx = g_bump(grid.wrap((p - xi) * grid.spacing()) / r);
      if (bx == 0.0) continue;
      for (int q = 0; q < grid.n; ++q) {
        double by = g_bump(grid.wrap((q - xj) * grid.spacing()) / r);
        s.at(p, q) = lambda * tv * bx * by;
      }
    }
  }
  // Residual bisection error is folded into the amplitude, keeping the mass
  // exactly 1 while moving the peak by O(1e-12) relative.
  g *= 1.0 / mass;
  return g;
}

}  // namespace lptx
