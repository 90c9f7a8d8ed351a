#pragma once

#include <utility>
#include <vector>

#include "lptx/grid.hpp"

namespace lptx {

/// Smooth dyadic bump chi(r) supported exactly in [1/2, 2], built from the
/// exponential transition psi(t) = exp(-1/t), with the partition property
/// sum_k chi(2^-k r) = 1 for every r > 0.
double bump(double r);

/// Smooth low-pass theta(r): 1 for r <= 1, 0 for r >= 2, with
/// chi(r) = theta(r) - theta(2 r).
double lowpass(double r);

/// Symbol of the band-k cut-off at radius r: chi(2^-k r) for k >= 1 and the
/// complement theta(r) = 1 - sum_{k>=1} chi(2^-k r) for k = 0.
double band_symbol(int k, double r);

/// Symbol of P_{<k} = sum_{j<k} P_j at radius r (0 for k = 0).
double low_symbol(int k, double r);

/// Band-k cut-off P_k. pre: 0 <= k <= grid.band_max().
Field project_band(const Field& f, int k);

/// P_{<k} and P_{>=k} = 1 - P_{<k}. pre: 0 <= k <= band_max + 1.
Field project_low(const Field& f, int k);
Field project_high(const Field& f, int k);

/// All bands 0..band_max. Reconstructs fields whose spectrum lies in the
/// resolved range |xi| <= 2^band_max.
std::vector<std::pair<int, Field>> decompose(const Field& f);

/// Relative spectral L^2 mass of f outside band k (0 if f is band limited).
double band_leakage(const Field& f, int k);

}  // namespace lptx
