#include "splinediff/verification.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "splinediff/errors.hpp"

namespace splinediff {

namespace {

struct GaussRule5 {
    double nodes[5];
    double weights[5];
};

// 5-point Gauss-Legendre rule on [-1, 1].
const GaussRule5& gauss5() {
    static const GaussRule5 rule = [] {
        GaussRule5 r{};
        const double a = std::sqrt(5.0 - 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
        const double b = std::sqrt(5.0 + 2.0 * std::sqrt(10.0 / 7.0)) / 3.0;
        const double wa = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
        const double wb = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
        r.nodes[0] = -b;
        r.nodes[1] = -a;
        r.nodes[2] = 0.0;
        r.nodes[3] = a;
        r.nodes[4] = b;
        r.weights[0] = wb;
        r.weights[1] = wa;
        r.weights[2] = 128.0 / 225.0;
        r.weights[3] = wa;
        r.weights[4] = wb;
        return r;
    }();
    return rule;
}

void require_interval(double a, double b) {
    if (!(a < b) || !(a >= 0.0) || !(b <= 1.0))
        throw std::invalid_argument("quadrature interval must satisfy 0 <= a < b <= 1");
}

}  // namespace

void QuadratureGrid::append_cell(double lo, double hi) {
    const GaussRule5& rule = gauss5();
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    for (int g = 0; g < 5; ++g) {
        points_.push_back(mid + half * rule.nodes[g]);
        weights_.push_back(half * rule.weights[g]);
    }
}

QuadratureGrid QuadratureGrid::composite(double a, double b, int cells) {
    require_interval(a, b);
    if (cells < 1) throw std::invalid_argument("QuadratureGrid: cells must be >= 1");
    QuadratureGrid grid;
    const double h = (b - a) / cells;
    for (int c = 0; c < cells; ++c) grid.append_cell(a + c * h, c + 1 == cells ? b : a + (c + 1) * h);
    return grid;
}

QuadratureGrid QuadratureGrid::knot_aligned(const SplineBasis& basis, double a, double b,
                                            int subdivisions) {
    require_interval(a, b);
    if (subdivisions < 1) throw std::invalid_argument("QuadratureGrid: subdivisions must be >= 1");
    const double d = basis.mesh();
    std::vector<double> edges{a};
    for (int j = 1; j < basis.cells(); ++j) {
        const double knot = j * d;
        if (knot > a && knot < b) edges.push_back(knot);
    }
    edges.push_back(b);
    QuadratureGrid grid;
    for (size_t e = 0; e + 1 < edges.size(); ++e) {
        const double lo = edges[e];
        const double hi = edges[e + 1];
        const double h = (hi - lo) / subdivisions;
        for (int s = 0; s < subdivisions; ++s)
            grid.append_cell(lo + s * h, s + 1 == subdivisions ? hi : lo + (s + 1) * h);
    }
    return grid;
}

double QuadratureGrid::integrate(const std::function<double(double)>& f) const {
    double acc = 0.0;
    for (size_t i = 0; i < points_.size(); ++i) acc += weights_[i] * f(points_[i]);
    return acc;
}

double l2_norm(const std::function<double(double)>& f, const QuadratureGrid& grid) {
    const double sq = grid.integrate([&](double x) {
        const double v = f(x);
        return v * v;
    });
    return std::sqrt(std::max(0.0, sq));
}

double l2_norm(const std::function<double(double)>& f, double a, double b, int cells) {
    return l2_norm(f, QuadratureGrid::composite(a, b, cells));
}

std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b) {
    const int n = a.size();
    if (static_cast<int>(b.size()) != n) throw std::invalid_argument("dense_solve: rhs length mismatch");
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
        if (a(pivot, col) == 0.0) throw std::runtime_error("dense_solve: singular matrix");
        if (pivot != col) {
            for (int c = col; c < n; ++c) std::swap(a(pivot, c), a(col, c));
            std::swap(b[static_cast<size_t>(pivot)], b[static_cast<size_t>(col)]);
        }
        const double inv = 1.0 / a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const double factor = a(r, col) * inv;
            if (factor == 0.0) continue;
            for (int c = col; c < n; ++c) a(r, c) -= factor * a(col, c);
            b[static_cast<size_t>(r)] -= factor * b[static_cast<size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double s = b[static_cast<size_t>(r)];
        for (int c = r + 1; c < n; ++c) s -= a(r, c) * x[static_cast<size_t>(c)];
        x[static_cast<size_t>(r)] = s / a(r, r);
    }
    return x;
}

DenseMatrix dense_penalty_by_quadrature(const SplineBasis& basis, int subdivisions) {
    const int dim = basis.dimension();
    const double d = basis.mesh();
    DenseMatrix p(dim);
    const GaussRule5& rule = gauss5();
    for (int cell = 0; cell < basis.cells(); ++cell) {
        const double h = d / subdivisions;
        for (int s = 0; s < subdivisions; ++s) {
            const double lo = cell * d + s * h;
            const double half = 0.5 * h;
            const double mid = lo + half;
            for (int g = 0; g < 5; ++g) {
                const double x = mid + half * rule.nodes[g];
                const double w = half * rule.weights[g];
                for (int i = 0; i < dim; ++i) {
                    const double si = phi3_d2((x - basis.knot_of_index(i)) / d) / (d * d);
                    if (si == 0.0) continue;
                    for (int j = 0; j < dim; ++j) {
                        const double sj = phi3_d2((x - basis.knot_of_index(j)) / d) / (d * d);
                        p(i, j) += w * si * sj;
                    }
                }
            }
        }
    }
    return p;
}

SplineFit natural_spline_interpolate(const SplineBasis& basis, std::span<const double> knot_values) {
    const int m = basis.cells();
    if (m < 2) throw std::invalid_argument("natural_spline_interpolate: need at least 2 cells");
    if (static_cast<int>(knot_values.size()) != m + 1)
        throw std::invalid_argument("natural_spline_interpolate: expected M+1 knot values");
    for (double v : knot_values)
        if (!std::isfinite(v)) throw std::invalid_argument("natural_spline_interpolate: non-finite value");

    const int dim = basis.dimension();
    DenseMatrix a(dim);
    std::vector<double> rhs(static_cast<size_t>(dim), 0.0);

    // Row 0: s''(0) = 0, i.e. lambda_{-1} - 2 lambda_0 + lambda_1 = 0.
    a(0, 0) = 1.0;
    a(0, 1) = -2.0;
    a(0, 2) = 1.0;
    // Rows 1..M+1: interpolation at knot k, (lambda_{k-1} + 4 lambda_k + lambda_{k+1}) / 6 = f_k.
    for (int k = 0; k <= m; ++k) {
        a(k + 1, k) = 1.0 / 6.0;
        a(k + 1, k + 1) = 4.0 / 6.0;
        a(k + 1, k + 2) = 1.0 / 6.0;
        rhs[static_cast<size_t>(k + 1)] = knot_values[static_cast<size_t>(k)];
    }
    // Last row: s''(1) = 0.
    a(dim - 1, dim - 3) = 1.0;
    a(dim - 1, dim - 2) = -2.0;
    a(dim - 1, dim - 1) = 1.0;

    std::vector<double> coeffs = dense_solve(std::move(a), std::move(rhs));
    return SplineFit(basis, std::move(coeffs), 0.0, static_cast<std::uint64_t>(m + 1));
}

std::vector<double> dense_fit_oracle(std::span<const Sample> samples, const SplineBasis& basis,
                                     double alpha) {
    if (samples.size() > 10000)
        throw ScaleGuardExceeded("dense_fit_oracle: N=" + std::to_string(samples.size()) + " > 10000");
    if (basis.cells() > 60)
        throw ScaleGuardExceeded("dense_fit_oracle: M=" + std::to_string(basis.cells()) + " > 60");
    if (samples.size() < 2) throw DegenerateDesign("dense_fit_oracle: need at least 2 samples");
    if (!(alpha > 0.0)) throw std::invalid_argument("dense_fit_oracle: alpha must be > 0");

    const int dim = basis.dimension();
    const double inv_n = 1.0 / static_cast<double>(samples.size());

    DenseMatrix system = dense_penalty_by_quadrature(basis);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) system(i, j) *= alpha;

    std::vector<double> rhs(static_cast<size_t>(dim), 0.0);
    for (const Sample& s : samples) {
        const DesignRow row = design_row(basis, s.x);
        for (int a = 0; a < 4; ++a) {
            const double va = row.values[static_cast<size_t>(a)] * inv_n;
            for (int b = 0; b < 4; ++b)
                system(row.start + a, row.start + b) += va * row.values[static_cast<size_t>(b)];
            rhs[static_cast<size_t>(row.start + a)] += va * s.y;
        }
    }
    return dense_solve(std::move(system), std::move(rhs));
}

}  // namespace splinediff
