#include "smw/rfpls.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace smw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ContractViolation(msg);
}

} // namespace

RfPlsResult fit_predict_rfpls(const Matrix& window_X, const Vector& window_y, std::span<const double> x_unknown,
                              const RfPlsConfig& cfg) {
    const std::size_t w = cfg.rf_window;
    require(w >= 2, "rfpls: rf_window must be >= 2");
    require(cfg.inner_pls_window >= 2 && cfg.inner_pls_window < w,
            "rfpls: inner_pls_window must satisfy 2 <= inner < rf_window");
    require(window_X.rows() == w, "rfpls: window has " + std::to_string(window_X.rows()) + " rows, expected " +
                                      std::to_string(w));
    require(window_y.size() == w, "rfpls: window_y length mismatch");
    require(x_unknown.size() == window_X.cols(), "rfpls: x_unknown length mismatch");

    RfPlsResult result;
    result.pls_inner = std::numeric_limits<double>::quiet_NaN();

    bool have_inner = false;
    if (cfg.n_pseudo > 0) {
        const std::size_t iw = cfg.inner_pls_window;
        const Matrix Xi = row_block(window_X, w - iw, iw);
        const Vector yi(window_y.end() - static_cast<std::ptrdiff_t>(iw), window_y.end());
        try {
            const std::size_t k = iw >= 3 ? select_latent_loo(Xi, yi).chosen_latent : 1;
            const PlsModel inner = fit_pls(Xi, yi, k);
            const double guess = inner.predict(x_unknown);
            if (std::isfinite(guess)) {
                result.pls_inner = guess;
                have_inner = true;
            } else {
                result.inner_fallback = true;
            }
        } catch (const DegenerateWindowError&) {
            result.inner_fallback = true;
        }
    }

    Matrix X_train = window_X;
    Vector y_train = window_y;
    if (have_inner) {
        const std::size_t rows = w + cfg.n_pseudo;
        Matrix aug(rows, window_X.cols());
        for (std::size_t i = 0; i < w; ++i)
            for (std::size_t j = 0; j < window_X.cols(); ++j) aug(i, j) = window_X(i, j);
        for (std::size_t p = 0; p < cfg.n_pseudo; ++p) {
            for (std::size_t j = 0; j < window_X.cols(); ++j) aug(w + p, j) = x_unknown[j];
            y_train.push_back(result.pls_inner);
        }
        X_train = std::move(aug);
    }

    const Forest forest = fit_forest(X_train, y_train, cfg.forest, cfg.seed);
    result.prediction = predict_forest(forest, x_unknown);
    return result;
}

} // namespace smw
