#ifndef SPLINEDIFF_BSPLINE_HPP
#define SPLINEDIFF_BSPLINE_HPP

#include <array>
#include <span>

#include "splinediff/banded.hpp"

namespace splinediff {

/// The compactly supported C^2 cubic B-spline on [-2, 2]. Zero outside.
double phi3(double t) noexcept;
/// First derivative of phi3 (piecewise quadratic, C^1, zero for |t| >= 2).
double phi3_d1(double t) noexcept;
/// Second derivative of phi3 (continuous piecewise linear, zero for |t| >= 2).
double phi3_d2(double t) noexcept;

/// Cubic spline space on [0, 1] over the equidistant knots j/M. The basis
/// consists of the M+3 scaled translates of phi3 centered at knots
/// -1/M, 0, ..., 1, (M+1)/M; storage index s holds the function centered at
/// knot (s-1)/M.
class SplineBasis {
public:
    explicit SplineBasis(int cells);

    /// Number of mesh cells M.
    int cells() const noexcept { return cells_; }
    /// Mesh size d = 1/M.
    double mesh() const noexcept { return mesh_; }
    /// Basis dimension M + 3.
    int dimension() const noexcept { return cells_ + 3; }
    /// Knot position for storage index s (center of basis function s).
    double knot_of_index(int s) const noexcept { return (s - 1) * mesh_; }

private:
    int cells_;
    double mesh_;
};

/// The at-most-4 contiguous nonzero basis (or basis-derivative) values at one
/// point. `start` is the storage index of the first slot; slots past the end
/// of the window hold exact zeros.
struct DesignRow {
    int start = 0;
    std::array<double, 4> values{};

    double dot(std::span<const double> coeffs) const noexcept {
        double acc = 0.0;
        for (int k = 0; k < 4; ++k) acc += values[static_cast<size_t>(k)] * coeffs[static_cast<size_t>(start + k)];
        return acc;
    }
};

/// Basis values at x in [0, 1]. The window sums to 1 (partition of unity).
DesignRow design_row(const SplineBasis& basis, double x);

/// Basis first derivatives at x in [0, 1]. The window sums to 0.
DesignRow derivative_row(const SplineBasis& basis, double x);

/// Gram matrix of basis second derivatives over [0, 1], bandwidth 3.
/// Assembled cell by cell with 2-point Gauss-Legendre quadrature, which is
/// exact here: the integrands are piecewise quadratic on each cell.
BandedSymMatrix penalty_matrix(const SplineBasis& basis);

}  // namespace splinediff

#endif
