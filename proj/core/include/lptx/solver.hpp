#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lptx/multiplier.hpp"
#include "lptx/spacetime.hpp"

namespace lptx {

/// Thrown when a solve leaves the contraction regime: some sample exceeded
/// the blow-up threshold. Carries the first bad time.
class blowup_error : public std::runtime_error {
 public:
  blowup_error(double t, double value)
      : std::runtime_error("solution blew up at t = " + std::to_string(t) + " (|u| = " + std::to_string(value) + ")"),
        time(t) {}
  double time;
};

struct SolveResult {
  SpaceTimeField u;
  double sup_l1 = 0.0;
  std::string method;
  int steps = 0;
};

/// Classical 4th-order one-step integration of d_t u = a (M u) + g with
/// u(0) = 0. Takes `substeps` internal steps per data interval; a and g are
/// interpolated cubically in t between nodes. Output sampled on the g grid.
SolveResult reference_solve(const CoefficientDecomposition& cd, const Multiplier& m, const SpaceTimeField& g,
                            int substeps);

/// Picard iterates u^(n+1)(t) = int_0^t [a M u^(n) + g] ds by trapezoid;
/// returns u^(1), ..., u^(n_max).
std::vector<SolveResult> picard_iterates(const CoefficientDecomposition& cd, const Multiplier& m,
                                         const SpaceTimeField& g, int n_max);

/// Trapezoid Picard fixed point, iterated until the sup-L^1 increment drops
/// below tol (relative) or max_iter is reached.
SolveResult converged_picard(const CoefficientDecomposition& cd, const Multiplier& m, const SpaceTimeField& g,
                             double tol = 1e-14, int max_iter = 64);

/// Time-ordered term J_n via iterated antiderivatives: v_0 = int g,
/// v_m(t) = int_0^t a M v_{m-1}; returns v_n.
SpaceTimeField dyson_term(const CoefficientDecomposition& cd, const Multiplier& m, const SpaceTimeField& g, int n);

/// J_{n,k}: as dyson_term with the i-th coefficient factor replaced by its
/// band projection P_{k_i} a. bands[0] is the outermost factor.
SpaceTimeField dyson_term_localized(const CoefficientDecomposition& cd, const Multiplier& m, const SpaceTimeField& g,
                                    const std::vector<int>& bands);

/// int over {1 >= t_1 >= ... >= t_n >= 0} of f_1(t_1) ... f_n(t_n) by nested
/// trapezoid on `nodes` uniform intervals.
double simplex_integral(const std::vector<std::function<double(double)>>& profiles, int nodes);

}  // namespace lptx
