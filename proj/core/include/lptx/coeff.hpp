#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lptx/spacetime.hpp"

namespace lptx {

/// Real-valued field with spectral support in band k and a prescribed H^1
/// norm, deterministic in the seed.
Field random_band_atom(const Grid& grid, int k, std::uint64_t seed, double target_h1);

/// Coherent band-k wave packet (the band kernel, translated by a seeded grid
/// offset) with a prescribed H^1 norm. Saturates the Bernstein ratio.
Field packet_band_atom(const Grid& grid, int k, std::uint64_t seed, double target_h1);

/// Band-k oscillation under an envelope of width 2^-env_scale centered at the
/// given node. Near-extremal for the adjacent-frequency products measured by
/// the tri-frequency experiment. pre: env_scale <= k.
Field enveloped_band_atom(const Grid& grid, int k, int env_scale, int center_i, int center_j, double target_h1);

/// Unit-mass single-cell impulse at the given node.
Field delta_field(const Grid& grid, int center_i, int center_j);

/// Real-valued field with random spectrum over the resolved range
/// |xi| <= 2^band_max, zero mean, L^2 normalized.
Field random_field(const Grid& grid, std::uint64_t seed);

/// One synthesis entry: a spatial band atom times a smooth time profile.
/// Profiles are trigonometric polynomials so the time derivative used in
/// a = d_t b + c is exact: "const", "sin:m", "cos:m" (frequency 2*pi*m), or
/// "fejer:m" (normalized Fejer kernel centered at t = 1/2, peak value 1).
struct CoeffEntry {
  int band = 0;
  std::string profile = "const";
  double amplitude = 1.0;
  std::string atom = "random";  // "random" | "packet"
};

/// Declarative description of a coefficient decomposition.
struct CoeffSpec {
  std::vector<CoeffEntry> b;
  std::vector<CoeffEntry> c;
  double delta0 = 0.1;
  std::uint64_t seed = 1;
};

/// Loads a CoeffSpec from a JSON document; unknown keys are rejected.
CoeffSpec load_coeff_spec(const std::filesystem::path& file);
CoeffSpec parse_coeff_spec(const std::string& json_text);

/// Named built-in specs usable where a file path would go
/// ("builtin:<name>"): default-smooth, interpolation-family, time-constant,
/// logloss-small.
CoeffSpec builtin_coeff_spec(const std::string& name);

/// Assembles b and c from band atoms times time profiles, forms
/// a = d_t b + c with the analytic profile derivative, and rescales all
/// three by one common factor so max(||a||_1, ||b||_2, ||c||_3) = delta0.
CoefficientDecomposition synthesize(const CoeffSpec& spec, const Grid& grid, const TimeGrid& tg);

/// Families of source terms g. "spike-sweep" returns g >= 0 with
/// ||g||_{L^1([0,1] x T^2)} = 1 and max|g| = lambda (smooth time bump times
/// a spatial bump whose support shrinks with lambda); "constant" returns the
/// area-normalized constant; "band-limited" returns a random band-limited g
/// with unit space-time L^1 mass. Deterministic in the seed.
SpaceTimeField g_family(const std::string& kind, double lambda, std::uint64_t seed, const Grid& grid,
                        const TimeGrid& tg);

/// Profile evaluation helpers shared with the tests.
double profile_value(const std::string& profile, double t);
double profile_derivative(const std::string& profile, double t);

}  // namespace lptx
