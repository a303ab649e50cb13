#include "smw/simulator.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace smw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ContractViolation(msg);
}

constexpr double two_pi = 2.0 * std::numbers::pi;

Dataset generate_monotonic(const SimConfig& cfg) {
    const std::size_t n = cfg.n_samples;
    const std::size_t c = cfg.n_variables;
    RngState rng(cfg.seed);

    // per-channel response to the latent growth state: affine + quadratic +
    // a gentle sinusoidal bend, all smooth in g
    Vector base(c), lin(c), quad(c), bend(c), phase(c);
    for (std::size_t j = 0; j < c; ++j) {
        base[j] = 2.0 * rng.next_double() - 1.0;
        lin[j] = (rng.next_double() < 0.5 ? -1.0 : 1.0) * (0.5 + 1.5 * rng.next_double());
        quad[j] = (rng.next_double() < 0.5 ? -1.0 : 1.0) * (0.3 + 0.7 * rng.next_double());
        bend[j] = (rng.next_double() < 0.5 ? -1.0 : 1.0) * (0.2 + 0.4 * rng.next_double());
        phase[j] = two_pi * rng.next_double();
    }

    const double steepness = 10.0 / static_cast<double>(n);
    const double y_max = 1.4;

    Dataset d;
    d.name = "monotonic";
    d.sample_interval_minutes = 66.0;
    d.y.resize(n);
    Matrix X(n, c);
    for (std::size_t t = 0; t < n; ++t) {
        const double s = (static_cast<double>(t) - 0.5 * static_cast<double>(n)) * steepness;
        const double g = 1.0 / (1.0 + std::exp(-s));
        d.y[t] = y_max * g; // property is noise-free, so monotonicity is exact
        for (std::size_t j = 0; j < c; ++j) {
            const double clean = base[j] + lin[j] * g + quad[j] * g * g + bend[j] * std::sin(2.2 * g + phase[j]);
            X(t, j) = clean + cfg.noise_sd * rng.next_normal();
        }
    }
    d.X = std::move(X);
    for (std::size_t j = 0; j < c; ++j) d.column_names.push_back("v" + std::to_string(j + 1));
    validate_dataset(d);
    return d;
}

Dataset generate_drifting(const SimConfig& cfg) {
    const std::size_t n = cfg.n_samples;
    const std::size_t c = cfg.n_variables;
    RngState rng(cfg.seed);

    // channel mixing of the two driving factors plus a per-channel distractor
    Vector mix1(c), mix2(c), distractor(c), dist_period(c), dist_phase(c);
    for (std::size_t j = 0; j < c; ++j) {
        mix1[j] = (rng.next_double() < 0.5 ? -1.0 : 1.0) * (0.4 + 0.8 * rng.next_double());
        mix2[j] = (rng.next_double() < 0.5 ? -1.0 : 1.0) * (0.4 + 0.8 * rng.next_double());
        distractor[j] = (rng.next_double() < 0.5 ? -1.0 : 1.0) * (0.2 + 0.3 * rng.next_double());
        dist_period[j] = 300.0 + 200.0 * rng.next_double();
        dist_phase[j] = two_pi * rng.next_double();
    }

    Dataset d;
    d.name = "drifting";
    d.sample_interval_minutes = 6.0;
    d.y.resize(n);
    Matrix X(n, c);
    for (std::size_t t = 0; t < n; ++t) {
        const double time = static_cast<double>(t);
        const double f1 = std::sin(two_pi * time / 200.0);
        const double f2 = std::sin(two_pi * time / 311.0 + 0.7);
        // the factor-to-property weights rotate a quarter turn per drift_period
        const double theta = 0.5 * std::numbers::pi * time / static_cast<double>(cfg.drift_period);
        d.y[t] = std::cos(theta) * f1 + std::sin(theta) * f2;
        for (std::size_t j = 0; j < c; ++j) {
            const double clean = mix1[j] * f1 + mix2[j] * f2 +
                                 distractor[j] * std::sin(two_pi * time / dist_period[j] + dist_phase[j]);
            X(t, j) = clean + cfg.noise_sd * rng.next_normal();
        }
    }
    d.X = std::move(X);
    for (std::size_t j = 0; j < c; ++j) d.column_names.push_back("v" + std::to_string(j + 1));
    validate_dataset(d);
    return d;
}

} // namespace

SimConfig monotonic_defaults(std::uint64_t seed) {
    SimConfig cfg;
    cfg.regime = SimRegime::monotonic;
    cfg.n_samples = 318;
    cfg.n_variables = 15;
    cfg.noise_sd = 0.002;
    cfg.seed = seed;
    return cfg;
}

SimConfig drifting_defaults(std::uint64_t seed) {
    SimConfig cfg;
    cfg.regime = SimRegime::drifting;
    cfg.n_samples = 2394;
    cfg.n_variables = 7;
    cfg.noise_sd = 0.002;
    cfg.seed = seed;
    return cfg;
}

Dataset generate(const SimConfig& cfg) {
    require(cfg.n_samples >= 50, "simulator: n_samples must be >= 50");
    require(cfg.n_variables >= 3, "simulator: n_variables must be >= 3");
    require(cfg.noise_sd >= 0.0, "simulator: noise_sd must be >= 0");
    require(cfg.drift_period >= 2, "simulator: drift_period must be >= 2");
    return cfg.regime == SimRegime::monotonic ? generate_monotonic(cfg) : generate_drifting(cfg);
}

} // namespace smw
