#pragma once

#include <cstddef>
#include <cstdint>

#include "smw/dataset.hpp"

namespace smw {

enum class SimRegime { monotonic, drifting };

/// Synthetic process generator configuration. The monotonic regime is a
/// fermentation-like batch whose property value follows a logistic growth
/// curve (never decreasing, noise enters the sensors only). The drifting
/// regime is a continuous process whose sensor-to-property relationship
/// slowly rotates, so window-local linear models decay as the window grows.
struct SimConfig {
    SimRegime regime = SimRegime::drifting;
    std::size_t n_samples = 2394;
    std::size_t n_variables = 7;
    double noise_sd = 0.002;
    std::uint64_t seed = 1;
    std::size_t drift_period = 60; // drifting regime: samples per quarter turn of the coefficient structure
};

/// Defaults echoing the two process regimes at their natural sizes.
SimConfig monotonic_defaults(std::uint64_t seed);
SimConfig drifting_defaults(std::uint64_t seed);

/// Deterministic given cfg (the same seed always yields the same dataset).
Dataset generate(const SimConfig& cfg);

} // namespace smw
