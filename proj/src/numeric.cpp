#include "smw/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace smw {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw ContractViolation(msg);
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), values_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, Vector values) : rows_(rows), cols_(cols), values_(std::move(values)) {
    require(values_.size() == rows * cols,
            "Matrix: got " + std::to_string(values_.size()) + " values for " + std::to_string(rows) + "x" +
                std::to_string(cols));
    require(all_finite(values_), "Matrix: non-finite value");
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    require(!rows.empty(), "Matrix::from_rows: no rows");
    const std::size_t c = rows.front().size();
    Vector flat;
    flat.reserve(rows.size() * c);
    for (const Vector& r : rows) {
        require(r.size() == c, "Matrix::from_rows: ragged rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    return Matrix(rows.size(), c, std::move(flat));
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    require(a.cols() == b.rows(), "mat_mul: inner dimensions " + std::to_string(a.cols()) + " vs " +
                                      std::to_string(b.rows()));
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
    return out;
}

Vector column_mean(const Matrix& m) {
    require(m.rows() >= 1, "column_mean: empty matrix");
    Vector out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j);
    for (double& v : out) v /= static_cast<double>(m.rows());
    return out;
}

Matrix center_columns(const Matrix& m, const Vector& means) {
    require(means.size() == m.cols(), "center_columns: means length " + std::to_string(means.size()) +
                                          " for " + std::to_string(m.cols()) + " columns");
    Matrix out = m;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) -= means[j];
    return out;
}

Matrix take_rows(const Matrix& m, std::span<const std::size_t> idx) {
    Matrix out(idx.size(), m.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        require(idx[i] < m.rows(), "take_rows: row index out of range");
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(idx[i], j);
    }
    return out;
}

Matrix row_block(const Matrix& m, std::size_t first, std::size_t count) {
    require(first + count <= m.rows(), "row_block: range out of bounds");
    Matrix out(count, m.cols());
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(first + i, j);
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    require(a.size() == b.size(), "dot: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double mean_of(std::span<const double> v) {
    require(!v.empty(), "mean_of: empty vector");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

Vector solve_linear(Matrix a, Vector b) {
    require(a.rows() == a.cols(), "solve_linear: matrix not square");
    require(b.size() == a.rows(), "solve_linear: rhs length mismatch");
    const std::size_t n = a.rows();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::abs(a(perm[col], col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double cand = std::abs(a(perm[r], col));
            if (cand > best) {
                best = cand;
                pivot = r;
            }
        }
        if (best == 0.0) throw ContractViolation("solve_linear: singular matrix");
        std::swap(perm[col], perm[pivot]);
        const double diag = a(perm[col], col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = a(perm[r], col) / diag;
            if (f == 0.0) continue;
            a(perm[r], col) = 0.0;
            for (std::size_t j = col + 1; j < n; ++j) a(perm[r], j) -= f * a(perm[col], j);
            b[perm[r]] -= f * b[perm[col]];
        }
    }
    Vector x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[perm[i]];
        for (std::size_t j = i + 1; j < n; ++j) s -= a(perm[i], j) * x[j];
        x[i] = s / a(perm[i], i);
    }
    return x;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

} // namespace

RngState::RngState(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
    if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0) state_[0] = 1;
}

std::uint64_t RngState::next_u64() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

std::size_t RngState::uniform_index(std::size_t n) {
    require(n >= 1, "uniform_index: n must be positive");
    const unsigned __int128 wide = static_cast<unsigned __int128>(next_u64()) * static_cast<unsigned __int128>(n);
    return static_cast<std::size_t>(wide >> 64);
}

double RngState::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngState::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

} // namespace smw
