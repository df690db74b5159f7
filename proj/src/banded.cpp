#include "splinediff/banded.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "splinediff/errors.hpp"

namespace splinediff {

namespace {
// Pivots at or below this are treated as structural rank loss rather than
// roundoff in an otherwise healthy factorization.
constexpr double kPivotFloor = 1e-300;
}  // namespace

BandedSymMatrix::BandedSymMatrix(int n, int bandwidth) : n_(n), bw_(bandwidth) {
    if (n < 1) throw std::invalid_argument("BandedSymMatrix: dimension must be >= 1");
    if (bandwidth < 0 || bandwidth >= n)
        throw std::invalid_argument("BandedSymMatrix: bandwidth must be in [0, n)");
    diags_.resize(static_cast<size_t>(bw_) + 1);
    for (int k = 0; k <= bw_; ++k)
        diags_[static_cast<size_t>(k)].assign(static_cast<size_t>(n_ - k), 0.0);
}

double BandedSymMatrix::at(int i, int j) const noexcept {
    const int k = std::abs(i - j);
    if (k > bw_) return 0.0;
    const int col = std::min(i, j);
    return diags_[static_cast<size_t>(k)][static_cast<size_t>(col)];
}

void BandedSymMatrix::set(int i, int j, double value) {
    const int k = std::abs(i - j);
    if (k > bw_) throw std::out_of_range("BandedSymMatrix::set outside band");
    diags_[static_cast<size_t>(k)][static_cast<size_t>(std::min(i, j))] = value;
}

void BandedSymMatrix::add(int i, int j, double value) {
    const int k = std::abs(i - j);
    if (k > bw_) throw std::out_of_range("BandedSymMatrix::add outside band");
    diags_[static_cast<size_t>(k)][static_cast<size_t>(std::min(i, j))] += value;
}

std::vector<double> BandedSymMatrix::multiply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != n_)
        throw std::invalid_argument("BandedSymMatrix::multiply: length mismatch");
    std::vector<double> y(static_cast<size_t>(n_), 0.0);
    for (int i = 0; i < n_; ++i) {
        const int lo = std::max(0, i - bw_);
        const int hi = std::min(n_ - 1, i + bw_);
        double acc = 0.0;
        for (int j = lo; j <= hi; ++j) acc += at(i, j) * x[static_cast<size_t>(j)];
        y[static_cast<size_t>(i)] = acc;
    }
    return y;
}

BandedSymMatrix BandedSymMatrix::scaled(double factor) const {
    BandedSymMatrix out(n_, bw_);
    for (int k = 0; k <= bw_; ++k) {
        const auto& src = diags_[static_cast<size_t>(k)];
        auto dst = out.diagonal(k);
        for (size_t i = 0; i < src.size(); ++i) dst[i] = src[i] * factor;
    }
    return out;
}

double BandedSymMatrix::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& diag : diags_)
        for (double v : diag) m = std::max(m, std::abs(v));
    return m;
}

BandedSymMatrix axpy_banded(const BandedSymMatrix& a, double alpha, const BandedSymMatrix& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("axpy_banded: dimension mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    const int bw = std::max(a.bandwidth(), b.bandwidth());
    BandedSymMatrix out(a.size(), bw);
    for (int k = 0; k <= bw; ++k) {
        auto dst = out.diagonal(k);
        if (k <= a.bandwidth()) {
            auto src = a.diagonal(k);
            for (size_t i = 0; i < src.size(); ++i) dst[i] = alpha * src[i];
        }
        if (k <= b.bandwidth()) {
            auto src = b.diagonal(k);
            for (size_t i = 0; i < src.size(); ++i) dst[i] += src[i];
        }
    }
    return out;
}

std::vector<double> cholesky_solve(const BandedSymMatrix& a, std::span<const double> rhs) {
    const int n = a.size();
    const int bw = a.bandwidth();
    if (static_cast<int>(rhs.size()) != n)
        throw std::invalid_argument("cholesky_solve: rhs length mismatch");

    // Lower-triangular factor in the same diagonal layout: low[k][j] = L(j+k, j).
    std::vector<std::vector<double>> low(static_cast<size_t>(bw) + 1);
    for (int k = 0; k <= bw; ++k) low[static_cast<size_t>(k)].assign(static_cast<size_t>(n - k), 0.0);

    for (int j = 0; j < n; ++j) {
        double piv = a.at(j, j);
        for (int k = std::max(0, j - bw); k < j; ++k) {
            const double l = low[static_cast<size_t>(j - k)][static_cast<size_t>(k)];
            piv -= l * l;
        }
        if (!(piv > kPivotFloor))
            throw NotPositiveDefinite("cholesky_solve: pivot " + std::to_string(piv) +
                                      " at column " + std::to_string(j));
        const double ljj = std::sqrt(piv);
        low[0][static_cast<size_t>(j)] = ljj;
        for (int i = j + 1; i <= std::min(n - 1, j + bw); ++i) {
            double s = a.at(i, j);
            for (int k = std::max(0, i - bw); k < j; ++k)
                s -= low[static_cast<size_t>(i - k)][static_cast<size_t>(k)] *
                     low[static_cast<size_t>(j - k)][static_cast<size_t>(k)];
            low[static_cast<size_t>(i - j)][static_cast<size_t>(j)] = s / ljj;
        }
    }

    // Forward substitution L y = rhs.
    std::vector<double> x(rhs.begin(), rhs.end());
    for (int i = 0; i < n; ++i) {
        double s = x[static_cast<size_t>(i)];
        for (int k = std::max(0, i - bw); k < i; ++k)
            s -= low[static_cast<size_t>(i - k)][static_cast<size_t>(k)] * x[static_cast<size_t>(k)];
        x[static_cast<size_t>(i)] = s / low[0][static_cast<size_t>(i)];
    }
    // Back substitution L^T x = y.
    for (int i = n - 1; i >= 0; --i) {
        double s = x[static_cast<size_t>(i)];
        for (int k = i + 1; k <= std::min(n - 1, i + bw); ++k)
            s -= low[static_cast<size_t>(k - i)][static_cast<size_t>(i)] * x[static_cast<size_t>(k)];
        x[static_cast<size_t>(i)] = s / low[0][static_cast<size_t>(i)];
    }
    return x;
}

}  // namespace splinediff
