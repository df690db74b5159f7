#ifndef SPLINEDIFF_ESTIMATOR_HPP
#define SPLINEDIFF_ESTIMATOR_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "splinediff/banded.hpp"
#include "splinediff/bspline.hpp"
#include "splinediff/indicator.hpp"

namespace splinediff {

struct Sample {
    double x;
    double y;
};

struct Evaluation {
    double value;
    double derivative;
};

/// A fitted spline: coefficient vector over a basis, evaluable together with
/// its derivative. Immutable once constructed.
class SplineFit {
public:
    SplineFit(SplineBasis basis, std::vector<double> coeffs, double alpha, std::uint64_t n_fit);

    const SplineBasis& basis() const noexcept { return basis_; }
    const std::vector<double>& coefficients() const noexcept { return coeffs_; }
    double alpha() const noexcept { return alpha_; }
    std::uint64_t sample_count() const noexcept { return n_fit_; }

    double value(double x) const;
    double derivative(double x) const;
    Evaluation evaluate(double x) const;

private:
    SplineBasis basis_;
    std::vector<double> coeffs_;
    double alpha_;
    std::uint64_t n_fit_;
};

/// Streaming state of the regularized least-squares fit: per-sample updates
/// cost O(1) in the knot count (each sample touches a 4x4 block of the
/// normal-equation statistics and 4 right-hand-side entries), total storage
/// is O(M), and raw samples are never retained.
///
/// Single-writer: ingest() must be externally serialized; fits and reads take
/// a consistent snapshot of the statistics.
class EstimatorState {
public:
    /// Builds an empty state over M mesh cells with known noise variance.
    /// The curvature penalty matrix is assembled once and cached.
    EstimatorState(int cells, double sigma2);

    /// Accumulates one observation. Throws std::domain_error for x outside
    /// [0, 1] and std::invalid_argument for non-finite y; the state is
    /// unchanged on rejection.
    void ingest(double x, double y);

    std::uint64_t sample_count() const noexcept { return n_; }
    double sigma2() const noexcept { return sigma2_; }
    const SplineBasis& basis() const noexcept { return basis_; }
    const HistogramIndicator& histogram() const noexcept { return hist_; }
    const BandedSymMatrix& penalty() const noexcept { return penalty_; }

    /// Averaged normal-equation statistics (1/N) sum H^T H and (1/N) sum H^T y.
    BandedSymMatrix design_average() const;
    std::vector<double> rhs_average() const;

    /// The balance rule M * sigma2 / N + d^4. Throws EmptyState before the
    /// first sample.
    double prior_alpha() const;

    /// True once M * sigma2 / N has dropped below d^4: more data cannot help
    /// and the mesh should be refined (replaying the source with larger M).
    bool needs_refinement() const;

    /// Solves (alpha * P + A_N) lambda = b_N. Default alpha is the prior
    /// rule. Throws DegenerateDesign unless at least two distinct x have been
    /// ingested.
    SplineFit fit(std::optional<double> alpha = std::nullopt) const;

    /// Value of the regularized objective at an arbitrary coefficient vector,
    /// computed from the sufficient statistics alone.
    double objective(std::span<const double> coeffs, double alpha) const;

    /// Versioned, checksummed binary snapshot; restore() reproduces the state
    /// bit-exactly.
    std::vector<std::uint8_t> checkpoint() const;
    static EstimatorState restore(std::span<const std::uint8_t> bytes);

private:
    SplineBasis basis_;
    double sigma2_;
    std::uint64_t n_ = 0;
    BandedSymMatrix design_sum_;    // sum of H_x^T H_x over ingested samples
    std::vector<double> rhs_sum_;   // sum of H_x^T y
    double yy_sum_ = 0.0;           // sum of y^2 (completes the objective)
    double min_x_;
    double max_x_;
    HistogramIndicator hist_;
    BandedSymMatrix penalty_;
};

}  // namespace splinediff

#endif
