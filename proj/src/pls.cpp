#include "smw/pls.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace smw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ContractViolation(msg);
}

double max_abs(const Vector& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Core NIPALS extraction on pre-centered blocks. With a univariate y the
// inner u<->t sweep is stationary after its first pass (u stays proportional
// to the y residual), so each component is a single exact pass; the usual
// iteration tolerance never comes into play.
PlsModel extract_components(Matrix E, Vector f, std::size_t k_req) {
    const std::size_t n = E.rows();
    const std::size_t c = E.cols();

    PlsModel m;
    m.coefficients.assign(c, 0.0);
    m.x_means.assign(c, 0.0);

    const double x_scale = std::max(1.0, max_abs(E.values()));
    const double score_tol = 1e-13 * x_scale * std::sqrt(static_cast<double>(n));

    std::vector<Vector> w_cols, p_cols;
    Vector w(c), p(c), t(n);
    for (std::size_t h = 0; h < k_req; ++h) {
        // weight direction = X residual covariance with y residual
        for (std::size_t j = 0; j < c; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += E(i, j) * f[i];
            w[j] = s;
        }
        const double wn = norm2(w);
        if (wn <= 0.0) break;
        for (double& x : w) x /= wn;

        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < c; ++j) s += E(i, j) * w[j];
            t[i] = s;
        }
        const double tn = norm2(t);
        if (tn <= score_tol) break;
        for (double& x : t) x /= tn;

        for (std::size_t j = 0; j < c; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += E(i, j) * t[i];
            p[j] = s;
        }
        const double r = dot(f, t); // y loading times inner coefficient

        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < c; ++j) E(i, j) -= t[i] * p[j];
            f[i] -= r * t[i];
        }

        w_cols.push_back(w);
        p_cols.push_back(p);
        m.y_loadings.push_back(r < 0.0 ? -1.0 : 1.0);
        m.inner_coeffs.push_back(std::abs(r));
    }

    const std::size_t k = w_cols.size();
    m.n_latent = k;
    m.weights = Matrix(c, k);
    m.x_loadings = Matrix(c, k);
    for (std::size_t h = 0; h < k; ++h)
        for (std::size_t j = 0; j < c; ++j) {
            m.weights(j, h) = w_cols[h][j];
            m.x_loadings(j, h) = p_cols[h][j];
        }
    if (k == 0) return m;

    // collapse W(P'W)^{-1} diag(inner) q into a plain coefficient vector
    Matrix pw = mat_mul(transpose(m.x_loadings), m.weights);
    Vector rhs(k);
    for (std::size_t h = 0; h < k; ++h) rhs[h] = m.inner_coeffs[h] * m.y_loadings[h];
    Vector z = solve_linear(std::move(pw), std::move(rhs));
    for (std::size_t j = 0; j < c; ++j) {
        double s = 0.0;
        for (std::size_t h = 0; h < k; ++h) s += m.weights(j, h) * z[h];
        m.coefficients[j] = s;
    }
    return m;
}

PlsModel fit_common(const Matrix& X, const Vector& y, std::size_t n_latent, bool center) {
    require(X.rows() == y.size(), "fit_pls: X rows " + std::to_string(X.rows()) + " != y length " +
                                      std::to_string(y.size()));
    require(X.rows() >= 2, "fit_pls: needs at least 2 rows");
    require(X.cols() >= 1, "fit_pls: needs at least 1 column");
    const std::size_t rank_cap = center ? X.rows() - 1 : X.rows();
    require(n_latent >= 1 && n_latent <= std::min(rank_cap, X.cols()),
            "fit_pls: n_latent " + std::to_string(n_latent) + " outside [1, " +
                std::to_string(std::min(rank_cap, X.cols())) + "]");

    Matrix E = X;
    Vector f = y;
    Vector x_means(X.cols(), 0.0);
    double y_mean = 0.0;
    if (center) {
        x_means = column_mean(X);
        E = center_columns(X, x_means);
        y_mean = mean_of(y);
        for (double& v : f) v -= y_mean;

        const double orig_scale = std::max(1.0, max_abs(X.values()));
        if (max_abs(E.values()) <= 1e-12 * orig_scale)
            throw DegenerateWindowError("fit_pls: every sensor column is constant in this window");
    }

    PlsModel m = extract_components(std::move(E), std::move(f), n_latent);
    m.x_means = std::move(x_means);
    m.y_mean = y_mean;
    return m;
}

} // namespace

double PlsModel::predict(std::span<const double> x) const {
    require(x.size() == coefficients.size(), "predict_pls: x length " + std::to_string(x.size()) +
                                                 " != " + std::to_string(coefficients.size()));
    double s = y_mean;
    for (std::size_t j = 0; j < x.size(); ++j) s += (x[j] - x_means[j]) * coefficients[j];
    return s;
}

PlsModel fit_pls(const Matrix& X, const Vector& y, std::size_t n_latent) { return fit_common(X, y, n_latent, true); }

PlsModel fit_pls_origin(const Matrix& X, const Vector& y, std::size_t n_latent) {
    return fit_common(X, y, n_latent, false);
}

double predict_pls(const PlsModel& m, std::span<const double> x) { return m.predict(x); }

CvChoice select_latent_loo(const Matrix& X, const Vector& y) {
    require(X.rows() == y.size(), "select_latent_loo: X rows != y length");
    require(X.rows() >= 3, "select_latent_loo: needs at least 3 rows, got " + std::to_string(X.rows()));
    const std::size_t n = X.rows();
    const std::size_t k_max = std::min(n - 2, X.cols());

    CvChoice choice;
    double best = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> fold(n - 1);
    for (std::size_t k = 1; k <= k_max; ++k) {
        double sq_sum = 0.0;
        std::size_t count = 0;
        for (std::size_t held = 0; held < n; ++held) {
            std::size_t w = 0;
            for (std::size_t i = 0; i < n; ++i)
                if (i != held) fold[w++] = i;
            Matrix Xf = take_rows(X, fold);
            Vector yf(n - 1);
            for (std::size_t i = 0; i < n - 1; ++i) yf[i] = y[fold[i]];
            try {
                const PlsModel m = fit_pls(Xf, yf, k);
                const double err = m.predict(X.row(held)) - y[held];
                sq_sum += err * err;
                ++count;
            } catch (const DegenerateWindowError&) {
                // fold not fittable for this k; skip it
            }
        }
        if (count == 0) continue;
        const double rmsep = std::sqrt(sq_sum / static_cast<double>(count));
        choice.per_k_rmsep.emplace_back(k, rmsep);
        if (rmsep < best) {
            best = rmsep;
            choice.chosen_latent = k;
        }
    }
    if (choice.per_k_rmsep.empty())
        throw DegenerateWindowError("select_latent_loo: no latent count could be cross validated");
    return choice;
}

} // namespace smw
