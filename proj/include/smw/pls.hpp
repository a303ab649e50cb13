#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "smw/numeric.hpp"

namespace smw {

/// Partial least squares model for a single property. The bilinear
/// decomposition follows the convention that makes the model reusable in a
/// recursive update: X score vectors are normalized to unit length while the
/// weights and X loadings are stored unnormalized, and the y block keeps a
/// separate inner coefficient (u'·t) per latent variable.
struct PlsModel {
    std::size_t n_latent = 0;  // components actually extracted
    Matrix weights;            // W, c x k
    Matrix x_loadings;         // P, c x k
    Vector y_loadings;         // q, one +-1 direction per component
    Vector inner_coeffs;       // u'·t per component, >= 0
    Vector coefficients;       // regression coefficients, length c
    Vector x_means;            // length c
    double y_mean = 0.0;

    /// y_mean + (x - x_means)·coefficients, collapsed from W(P'W)^{-1}·diag(inner)·q.
    double predict(std::span<const double> x) const;
};

/// Mean-centers both blocks and extracts up to n_latent components by NIPALS.
/// Extraction stops early when the residual blocks carry no more variance
/// (for example a constant y), which yields fewer components and near-zero
/// coefficients rather than an error. A window whose centered X is entirely
/// zero is unusable and raises DegenerateWindowError.
PlsModel fit_pls(const Matrix& X, const Vector& y, std::size_t n_latent);

/// Through-origin variant: rows are taken to live in an already-centered
/// space, so no means are subtracted or stored. Used for the recursive
/// update's augmented blocks; never raises DegenerateWindowError (a content-
/// free block just yields zero components).
PlsModel fit_pls_origin(const Matrix& X, const Vector& y, std::size_t n_latent);

double predict_pls(const PlsModel& m, std::span<const double> x);

/// Outcome of leave-one-out selection of the latent-variable count.
struct CvChoice {
    std::size_t chosen_latent = 0;
    std::vector<std::pair<std::size_t, double>> per_k_rmsep;
};

/// Leave-one-out cross validation over k = 1..min(rows - 2, cols); ties go to
/// the smaller k. Folds that cannot be fit are skipped; if nothing can be
/// fit at all the window is degenerate.
CvChoice select_latent_loo(const Matrix& X, const Vector& y);

} // namespace smw
