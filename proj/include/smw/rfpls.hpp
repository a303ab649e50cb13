#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "smw/ensemble.hpp"
#include "smw/pls.hpp"

namespace smw {

/// Configuration for the random forest / PLS ensemble. The inner PLS model
/// sees only the last inner_pls_window labeled rows of the outer window.
struct RfPlsConfig {
    std::size_t rf_window = 4;
    std::size_t inner_pls_window = 3;  // must satisfy 2 <= inner < rf_window
    std::size_t n_pseudo = 1;          // pseudo-sample copies; 0 disables the hybrid (plain windowed RF)
    ForestConfig forest;
    std::uint64_t seed = 0;
};

struct RfPlsResult {
    double prediction = 0.0;
    double pls_inner = 0.0;  // NaN when the inner model fell back
    bool inner_fallback = false;
};

/// Fits and predicts in one shot: an inner moving-window PLS model predicts
/// the unknown, that prediction is paired with the unknown's sensor vector
/// as one extra training row, and a bagged forest is fit on the labeled
/// window plus the pseudo-row. The unknown's true property value is never an
/// input. A degenerate inner window (constant sensors) falls back to the
/// plain windowed forest and flags the result.
RfPlsResult fit_predict_rfpls(const Matrix& window_X, const Vector& window_y, std::span<const double> x_unknown,
                              const RfPlsConfig& cfg);

} // namespace smw
