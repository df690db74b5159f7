#include "splinediff/bspline.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace splinediff {

namespace {

inline double cube(double v) noexcept { return v * v * v; }

void require_unit_interval(double x, const char* who) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string(who) + ": x=" + std::to_string(x) + " outside [0, 1]");
}

// Cell index k such that x lies in [k*d, (k+1)*d]; x = 1 maps to the last cell.
inline int cell_of(const SplineBasis& basis, double x) noexcept {
    int k = static_cast<int>(x * basis.cells());
    if (k >= basis.cells()) k = basis.cells() - 1;
    if (k < 0) k = 0;
    return k;
}

}  // namespace

double phi3(double t) noexcept {
    if (t >= -2.0 && t <= -1.0) return cube(t + 2.0) / 6.0;
    if (t > -1.0 && t <= 0.0) return (cube(t + 2.0) - 4.0 * cube(t + 1.0)) / 6.0;
    if (t > 0.0 && t <= 1.0) return (cube(2.0 - t) - 4.0 * cube(1.0 - t)) / 6.0;
    if (t > 1.0 && t <= 2.0) return cube(2.0 - t) / 6.0;
    return 0.0;
}

double phi3_d1(double t) noexcept {
    if (t >= -2.0 && t <= -1.0) return 0.5 * (t + 2.0) * (t + 2.0);
    if (t > -1.0 && t <= 0.0) return 0.5 * (t + 2.0) * (t + 2.0) - 2.0 * (t + 1.0) * (t + 1.0);
    if (t > 0.0 && t <= 1.0) return -0.5 * (2.0 - t) * (2.0 - t) + 2.0 * (1.0 - t) * (1.0 - t);
    if (t > 1.0 && t <= 2.0) return -0.5 * (2.0 - t) * (2.0 - t);
    return 0.0;
}

double phi3_d2(double t) noexcept {
    if (t >= -2.0 && t <= -1.0) return t + 2.0;
    if (t > -1.0 && t <= 0.0) return -3.0 * t - 2.0;
    if (t > 0.0 && t <= 1.0) return 3.0 * t - 2.0;
    if (t > 1.0 && t <= 2.0) return 2.0 - t;
    return 0.0;
}

SplineBasis::SplineBasis(int cells) : cells_(cells), mesh_(0.0) {
    if (cells < 1) throw std::invalid_argument("SplineBasis: cell count must be >= 1");
    mesh_ = 1.0 / cells;
}

DesignRow design_row(const SplineBasis& basis, double x) {
    require_unit_interval(x, "design_row");
    const int k = cell_of(basis, x);
    const double d = basis.mesh();
    DesignRow row;
    row.start = k;  // storage index of basis function centered at knot k-1
    for (int off = 0; off < 4; ++off) {
        const double center = (k - 1 + off) * d;
        row.values[static_cast<size_t>(off)] = phi3((x - center) / d);
    }
    return row;
}

DesignRow derivative_row(const SplineBasis& basis, double x) {
    require_unit_interval(x, "derivative_row");
    const int k = cell_of(basis, x);
    const double d = basis.mesh();
    DesignRow row;
    row.start = k;
    for (int off = 0; off < 4; ++off) {
        const double center = (k - 1 + off) * d;
        row.values[static_cast<size_t>(off)] = phi3_d1((x - center) / d) / d;
    }
    return row;
}

BandedSymMatrix penalty_matrix(const SplineBasis& basis) {
    const int m = basis.cells();
    const double d = basis.mesh();
    const double inv_d2 = 1.0 / (d * d);
    BandedSymMatrix p(basis.dimension(), 3);

    // 2-point Gauss-Legendre nodes on [0, 1].
    const double shift = 0.5 / std::sqrt(3.0);
    const double nodes[2] = {0.5 - shift, 0.5 + shift};
    const double weight = 0.5 * d;

    for (int cell = 0; cell < m; ++cell) {
        for (double node : nodes) {
            const double x = (cell + node) * d;
            double second[4];
            for (int off = 0; off < 4; ++off) {
                const double center = (cell - 1 + off) * d;
                second[off] = phi3_d2((x - center) / d) * inv_d2;
            }
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b <= a; ++b)
                    p.add(cell + a, cell + b, weight * second[a] * second[b]);
        }
    }
    return p;
}

}  // namespace splinediff
