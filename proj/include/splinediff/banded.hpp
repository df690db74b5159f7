#ifndef SPLINEDIFF_BANDED_HPP
#define SPLINEDIFF_BANDED_HPP

#include <span>
#include <vector>

namespace splinediff {

/// Symmetric banded matrix stored as its main diagonal plus the lower
/// sub-diagonals, one contiguous vector per diagonal. Entry (i, j) with
/// |i - j| > bandwidth() is identically zero and cannot be assigned.
class BandedSymMatrix {
public:
    BandedSymMatrix(int n, int bandwidth);

    int size() const noexcept { return n_; }
    int bandwidth() const noexcept { return bw_; }

    /// Logical entry (i, j); symmetric lookups, zero outside the band.
    double at(int i, int j) const noexcept;
    void set(int i, int j, double value);
    void add(int i, int j, double value);

    /// k-th lower diagonal, k = 0..bandwidth(); diagonal k has size() - k entries.
    std::span<const double> diagonal(int k) const { return diags_[static_cast<size_t>(k)]; }
    std::span<double> diagonal(int k) { return diags_[static_cast<size_t>(k)]; }

    std::vector<double> multiply(std::span<const double> x) const;

    BandedSymMatrix scaled(double factor) const;

    /// max_ij |a_ij|, used for relative residual checks.
    double max_abs() const noexcept;

private:
    int n_;
    int bw_;
    std::vector<std::vector<double>> diags_;
};

/// alpha * a + b, entrywise; the result carries the wider band of the two.
BandedSymMatrix axpy_banded(const BandedSymMatrix& a, double alpha, const BandedSymMatrix& b);

/// Solves a * x = rhs by banded Cholesky (no pivoting). The matrix must be
/// symmetric positive definite; a pivot at or below the underflow guard
/// throws NotPositiveDefinite. Cost O(n * bandwidth^2).
std::vector<double> cholesky_solve(const BandedSymMatrix& a, std::span<const double> rhs);

}  // namespace splinediff

#endif
