#ifndef SPLINEDIFF_EXPERIMENTS_HPP
#define SPLINEDIFF_EXPERIMENTS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "splinediff/estimator.hpp"

namespace splinediff {

/// Counter-based generator (SplitMix64 output function over seed + counter).
/// One (seed, stream) pair always yields the same sequence, independent of
/// platform and of any other stream.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double next_uniform();
    /// Standard normal via Box-Muller.
    double next_normal();

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
};

enum class PointDistribution {
    Uniform,           ///< uniform on [0, 1]
    LeftConcentrated,  ///< 0.95 mass uniform on [0, 1/2), 0.05 on [1/2, 1]
    BothEnds,          ///< 0.475 / 0.05 / 0.475 on [0, 1/5), [1/5, 4/5], (4/5, 1]
};

double sample_point(PointDistribution kind, CounterRng& rng);

/// The benchmark truth (x^2 + 3x + sin 4 pi x + 2 exp(-8 (x - 2/5)^2)) / 100
/// and its derivative.
double truth_f(double x);
double truth_fprime(double x);

struct ExperimentConfig {
    PointDistribution distribution = PointDistribution::Uniform;
    int cells = 40;              // M
    std::uint64_t samples = 600;  // N
    double sigma2 = 5e-5;
    int repetitions = 1;
    std::uint64_t seed = 0;
};

/// N scattered observations of truth_f under the configured distribution and
/// Gaussian noise of variance sigma2. Deterministic under a fixed seed.
std::vector<Sample> generate(const ExperimentConfig& config);

struct ReconstructionErrors {
    double e_l2;       ///< L2 norm of f_N - f over the interval
    double eprime_l2;  ///< L2 norm of f_N' - f' over the interval
};

/// L2 errors against an analytic truth, by knot-aligned quadrature.
ReconstructionErrors reconstruction_errors(const SplineFit& fit, double (*f)(double),
                                           double (*fprime)(double), double a = 0.0, double b = 1.0);

/// Knot-count rule M ~ N^(1/5), floored at 3.
int choose_m(std::uint64_t n, double scale = 1.0);

/// Sample count paired with a knot count in the convergence schedule,
/// N = M^5 / 10^4 rounded to nearest.
std::uint64_t schedule_n(int m);

struct ConvergenceRepRow {
    int cells;
    std::uint64_t samples;
    int rep;
    double e_l2;
    double eprime_l2;
};

struct ConvergenceRow {
    int cells;
    std::uint64_t samples;
    double mean_e_l2;
    double mean_eprime_l2;
};

struct ConvergenceResult {
    std::vector<ConvergenceRepRow> reps;
    std::vector<ConvergenceRow> rows;
    std::optional<double> slope_f;       ///< log-log slope of mean e vs N
    std::optional<double> slope_fprime;  ///< log-log slope of mean e' vs N
};

inline constexpr std::uint64_t kDefaultSampleCap = 100'000'000;

/// Default benchmark sweep M = 50, 60, ..., 110 (the larger rows of the
/// schedule are reachable by passing an explicit list and a bigger cap).
std::vector<int> default_sweep();

/// Runs the convergence benchmark: for every M, N = schedule_n(M) uniform
/// points with sigma2 noise, `repetitions` independently seeded runs, errors
/// over (0, 1), then least-squares slopes of log mean error against log N
/// (present only with at least two distinct M). Throws ResourceCapExceeded
/// before generating anything if the total sample budget is blown.
ConvergenceResult convergence_study(std::span<const int> m_values, int repetitions,
                                    std::uint64_t seed, double sigma2 = 1e-4,
                                    std::uint64_t sample_cap = kDefaultSampleCap);

/// CSV rows M,N,rep,e_l2,eprime_l2.
void write_convergence_csv(const ConvergenceResult& result, std::ostream& out);
/// JSON summary: per-M mean errors plus fitted slopes when present.
void write_convergence_json(const ConvergenceResult& result, std::ostream& out);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

}  // namespace splinediff

#endif
