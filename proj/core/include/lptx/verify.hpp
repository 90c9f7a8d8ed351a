#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lptx/coeff.hpp"
#include "lptx/multiplier.hpp"
#include "lptx/report.hpp"
#include "lptx/solver.hpp"

namespace lptx {

/// Exponent alpha([l]) = 1/2 sum_{m=2..n} min(|l_m - l_{m-1}|, |l_m - k_m|)
/// controlling the per-multi-index scale choice. pre: equal lengths >= 2.
double alpha_exponent(const std::vector<int>& l, const std::vector<int>& k);

/// mu([l]) = A 2^-alpha([l]) with A the product of atom H^1 norms.
double mu_scale(const std::vector<int>& l, const std::vector<int>& k, double atom_h1_product);

/// Shared experiment context: deterministic seed, grids, operator, workers.
struct VerifyOptions {
  std::uint64_t seed = 1;
  int grid_n = 256;
  int nt = 256;
  int threads = 1;
  std::string operator_spec = "riesz(1,1)";
};

/// Spatial spike test field: peak exactly lambda at a seeded node, Riemann
/// mass 1 (support scale solved on the discrete grid). pre: lambda >= 1.
Field spike_field(const Grid& grid, double lambda, std::uint64_t seed);
Field spike_field_at(const Grid& grid, double lambda, int center_i, int center_j);

/// Largest spike amplitude for which unit mass is reachable on this grid.
double spike_feasible_lambda(const Grid& grid);

// --- experiments -----------------------------------------------------------

struct LogL1Options {
  int bank = 50;
  double mu = 1.0;
  int amp_pow_max = 10;  // spike amplitudes 2^0 .. 2^amp_pow_max
};
EstimateReport check_logl1(const VerifyOptions& v, const LogL1Options& o = {});

struct CommutatorOptions {
  int n_min = 1, n_max = 3;
  int k_min = 1, k_max = 6;
  int bank = 50;
};
EstimateReport check_commutator(const VerifyOptions& v, const CommutatorOptions& o = {});

struct FrequencyTriple {
  int l_prev, k, l;
};
struct TrifrequencyOptions {
  int bank = 50;
  std::vector<FrequencyTriple> triples;  // empty: default case list
};
EstimateReport check_trifrequency(const VerifyOptions& v, const TrifrequencyOptions& o = {});

/// Exact lattice support arithmetic: true when P_{l_prev}(a_k P_l h) must
/// vanish identically for any band-supported inputs.
bool trifrequency_vanishes(const FrequencyTriple& t);

struct MultilinearOptions {
  int n_max = 4;
  int tuples_per_n = 8;
  int f_bank = 5;
  int band_cap = 4;
};
EstimateReport check_multilinear(const VerifyOptions& v, const MultilinearOptions& o = {});

EstimateReport check_interpolation(const VerifyOptions& v, const CoefficientDecomposition& cd);

struct SimplexOptions {
  int n_min = 2, n_max = 6;
  int trials = 3;
  int nodes = 512;
};
EstimateReport check_simplex_combinatorics(const VerifyOptions& v, const SimplexOptions& o = {});

struct LogLossOptions {
  std::vector<double> lambdas = {4, 8, 16, 32, 64, 128, 256, 512, 1024};
  int substeps = 2;
};
EstimateReport probe_log_loss(const VerifyOptions& v, const CoefficientDecomposition& cd,
                              const LogLossOptions& o = {});

struct SweepDelta0Options {
  std::vector<double> deltas = {0.05, 0.1, 0.2, 0.4};
  int n_max = 8;
};
EstimateReport sweep_delta0(const VerifyOptions& v, const CoeffSpec& base_spec, const SpaceTimeField& g,
                            const SweepDelta0Options& o = {});

// --- catalog ---------------------------------------------------------------

struct ExperimentInfo {
  std::string id;
  std::string anchor;
  std::string summary;
};

/// One entry per experiment, with the estimate each one measures.
std::vector<ExperimentInfo> experiment_catalog();

}  // namespace lptx
