#pragma once

#include <cstddef>
#include <span>

#include "smw/pls.hpp"

namespace smw {

/// Recursive PLS state: the forgetting factor plus the loadings and inner
/// coefficients retained from the previous fit. Updates return a fresh state
/// (mutable-by-replacement); a state is safe to move between threads but not
/// to update concurrently.
struct RplsState {
    double lambda = 0.0;   // forgetting factor in [0, 1]
    Matrix p_old;          // prior X loadings, c x k
    Vector q_old;          // prior y loading directions, k
    Vector b_old;          // prior inner coefficients, k
    PlsModel model;        // current fitted model
    std::size_t k = 0;     // latent variables carried
};

/// First calibration window: a plain PLS fit with LOO-selected latent count
/// (fixed k = 1 when the window is too small to cross validate).
RplsState rpls_init(const Matrix& X, const Vector& y, double lambda);

/// Rebuilds the model from the forgetting-factor-weighted prior loadings
/// stacked over the new window. The new rows are centered by the new
/// window's own means, the latent count is re-selected by LOO on the new
/// window (the same cross validation a plain windowed fit uses), and the
/// stack is fit through the origin. With lambda = 0 the prior rows vanish
/// and the update reproduces a fresh PLS fit on the new data exactly; the
/// prior loading rows already live in a centered space and are stacked
/// as-is. A window with constant sensors raises DegenerateWindowError, as in
/// fit_pls.
RplsState rpls_update(const RplsState& state, const Matrix& X_new, const Vector& y_new);

double rpls_predict(const RplsState& state, std::span<const double> x);

} // namespace smw
