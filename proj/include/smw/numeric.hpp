#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "smw/errors.hpp"

namespace smw {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. Constructors that take values reject
/// NaN/Inf; builders that start from the zero matrix are expected to keep
/// that invariant.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, Vector values);

    static Matrix from_rows(const std::vector<Vector>& rows);

    double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
    double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    std::span<const double> row(std::size_t r) const { return {values_.data() + r * cols_, cols_}; }
    const Vector& values() const { return values_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector values_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& m);

/// Arithmetic mean of each column; errors on an empty matrix.
Vector column_mean(const Matrix& m);

/// Subtracts means[j] from column j.
Matrix center_columns(const Matrix& m, const Vector& means);

/// Copies the selected rows (in the given order) into a new matrix.
Matrix take_rows(const Matrix& m, std::span<const std::size_t> idx);

/// Copies the contiguous row block [first, first + count).
Matrix row_block(const Matrix& m, std::size_t first, std::size_t count);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double mean_of(std::span<const double> v);

/// Solves the square system a·x = b by Gaussian elimination with partial
/// pivoting. Sized for the small (latent-count) systems PLS produces.
Vector solve_linear(Matrix a, Vector b);

bool all_finite(std::span<const double> v);

/// Deterministic 64-bit generator: xoshiro256** seeded through splitmix64.
/// The generator identity and the index reduction are part of the
/// reproducibility contract; golden streams in the tests change only if
/// either changes. Single-owner: parallel consumers derive independent
/// states as RngState(base_seed ^ task_index).
class RngState {
public:
    explicit RngState(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next_u64();

    /// Uniform index in [0, n): floor(next_u64() * n / 2^64), the
    /// rejection-free 128-bit multiply-shift reduction.
    std::size_t uniform_index(std::size_t n);

    /// Uniform in [0, 1) with 53 random bits.
    double next_double();

    /// Standard normal via Box-Muller; the paired draw is cached.
    double next_normal();

private:
    std::uint64_t seed_ = 0;
    std::array<std::uint64_t, 4> state_{};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace smw
