#ifndef SPLINEDIFF_VERIFICATION_HPP
#define SPLINEDIFF_VERIFICATION_HPP

#include <functional>
#include <span>
#include <vector>

#include "splinediff/bspline.hpp"
#include "splinediff/estimator.hpp"

namespace splinediff {

/// Composite Gauss-Legendre rule (5 nodes per cell, exact through degree 9,
/// so squares of cubic splines integrate to roundoff).
class QuadratureGrid {
public:
    /// Uniform cells over [a, b].
    static QuadratureGrid composite(double a, double b, int cells);
    /// Cells aligned to the basis knots inside (a, b), each split into
    /// `subdivisions` pieces, so spline kinks never cross a cell.
    static QuadratureGrid knot_aligned(const SplineBasis& basis, double a, double b,
                                       int subdivisions = 4);

    double integrate(const std::function<double(double)>& f) const;
    size_t node_count() const noexcept { return points_.size(); }

private:
    QuadratureGrid() = default;
    void append_cell(double lo, double hi);
    std::vector<double> points_;
    std::vector<double> weights_;
};

double l2_norm(const std::function<double(double)>& f, const QuadratureGrid& grid);
double l2_norm(const std::function<double(double)>& f, double a, double b, int cells = 256);

/// Minimal dense matrix for the oracle paths: row-major storage plus a
/// partially pivoted Gaussian solve, deliberately independent of the banded
/// code it is used to check.
class DenseMatrix {
public:
    explicit DenseMatrix(int n) : n_(n), data_(static_cast<size_t>(n) * static_cast<size_t>(n), 0.0) {}

    int size() const noexcept { return n_; }
    double& operator()(int i, int j) { return data_[static_cast<size_t>(i) * n_ + static_cast<size_t>(j)]; }
    double operator()(int i, int j) const { return data_[static_cast<size_t>(i) * n_ + static_cast<size_t>(j)]; }

private:
    int n_;
    std::vector<double> data_;
};

std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b);

/// The curvature Gram matrix assembled densely by per-cell Gauss quadrature,
/// bypassing the banded assembly path entirely.
DenseMatrix dense_penalty_by_quadrature(const SplineBasis& basis, int subdivisions = 1);

/// Natural cubic spline through the M+1 knot values (second derivative zero
/// at both endpoints), expressed in the same basis as every other fit.
SplineFit natural_spline_interpolate(const SplineBasis& basis, std::span<const double> knot_values);

/// Reference solve of the regularized least-squares problem by explicit dense
/// assembly. Desk scale only: throws ScaleGuardExceeded past N = 10^4 or
/// M = 60.
std::vector<double> dense_fit_oracle(std::span<const Sample> samples, const SplineBasis& basis,
                                     double alpha);

}  // namespace splinediff

#endif
