#include "smw/rpls.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace smw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ContractViolation(msg);
}

void require_lambda(double lambda) {
    require(lambda >= 0.0 && lambda <= 1.0, "rpls: lambda must lie in [0, 1]");
}

std::size_t pick_latent(const Matrix& X, const Vector& y) {
    if (X.rows() >= 3) return select_latent_loo(X, y).chosen_latent;
    return 1; // too small to cross validate; rank allows one component only
}

} // namespace

RplsState rpls_init(const Matrix& X, const Vector& y, double lambda) {
    require_lambda(lambda);
    const std::size_t k = pick_latent(X, y);
    PlsModel model = fit_pls(X, y, k);
    RplsState state;
    state.lambda = lambda;
    state.p_old = model.x_loadings;
    state.q_old = model.y_loadings;
    state.b_old = model.inner_coeffs;
    state.k = model.n_latent;
    state.model = std::move(model);
    return state;
}

RplsState rpls_update(const RplsState& state, const Matrix& X_new, const Vector& y_new) {
    require_lambda(state.lambda);
    const std::size_t c = state.model.coefficients.size();
    require(X_new.cols() == c, "rpls_update: X_new has " + std::to_string(X_new.cols()) + " columns, model has " +
                                   std::to_string(c));
    require(X_new.rows() >= 1 && X_new.rows() == y_new.size(), "rpls_update: X_new/y_new shape mismatch");

    const Vector x_means = column_mean(X_new);
    const double y_mean = mean_of(y_new);

    // the latent count is cross validated on the new window alone, exactly
    // as a plain moving-window PLS fit would pick it; together with the
    // centering above this makes lambda = 0 reproduce that fit identically
    const std::size_t k_new = pick_latent(X_new, y_new);

    const std::size_t k_old = state.k;
    const std::size_t n_new = X_new.rows();
    const std::size_t n_aug = k_old + n_new;

    Matrix X_aug(n_aug, c);
    Vector y_aug(n_aug, 0.0);
    for (std::size_t h = 0; h < k_old; ++h) {
        for (std::size_t j = 0; j < c; ++j) X_aug(h, j) = state.lambda * state.p_old(j, h);
        y_aug[h] = state.lambda * state.b_old[h] * state.q_old[h];
    }
    for (std::size_t i = 0; i < n_new; ++i) {
        for (std::size_t j = 0; j < c; ++j) X_aug(k_old + i, j) = X_new(i, j) - x_means[j];
        y_aug[k_old + i] = y_new[i] - y_mean;
    }

    PlsModel aug = fit_pls_origin(X_aug, y_aug, k_new);

    RplsState next;
    next.lambda = state.lambda;
    next.p_old = aug.x_loadings;
    next.q_old = aug.y_loadings;
    next.b_old = aug.inner_coeffs;
    next.k = aug.n_latent;
    aug.x_means = x_means;
    aug.y_mean = y_mean;
    next.model = std::move(aug);
    return next;
}

double rpls_predict(const RplsState& state, std::span<const double> x) { return state.model.predict(x); }

} // namespace smw
