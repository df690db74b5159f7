#include "splinediff/experiments.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>

#include "splinediff/errors.hpp"
#include "splinediff/verification.hpp"

#include "json.hpp"

namespace splinediff {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : base_(splitmix(seed) ^ splitmix(stream * kGolden + 0x5851F42D4C957F2DULL)) {}

std::uint64_t CounterRng::next_u64() { return splitmix(base_ + (++counter_) * kGolden); }

double CounterRng::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_normal() {
    // Box-Muller; u1 shifted into (0, 1] so the log stays finite.
    const double u1 = static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    const double u2 = next_uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_point(PointDistribution kind, CounterRng& rng) {
    switch (kind) {
        case PointDistribution::Uniform:
            return rng.next_uniform();
        case PointDistribution::LeftConcentrated: {
            const double pick = rng.next_uniform();
            const double u = rng.next_uniform();
            return pick < 0.95 ? 0.5 * u : 0.5 + 0.5 * u;
        }
        case PointDistribution::BothEnds: {
            const double pick = rng.next_uniform();
            const double u = rng.next_uniform();
            if (pick < 0.475) return 0.2 * u;
            if (pick < 0.525) return 0.2 + 0.6 * u;
            return 0.8 + 0.2 * u;
        }
    }
    throw std::invalid_argument("sample_point: unknown distribution");
}

double truth_f(double x) {
    const double u = x - 0.4;
    return 0.01 * (x * x + 3.0 * x + std::sin(4.0 * std::numbers::pi * x) +
                   2.0 * std::exp(-8.0 * u * u));
}

double truth_fprime(double x) {
    const double u = x - 0.4;
    return 0.01 * (2.0 * x + 3.0 +
                   4.0 * std::numbers::pi * std::cos(4.0 * std::numbers::pi * x) -
                   32.0 * u * std::exp(-8.0 * u * u));
}

std::vector<Sample> generate(const ExperimentConfig& config) {
    if (!(config.sigma2 > 0.0)) throw std::invalid_argument("generate: sigma2 must be > 0");
    CounterRng rng(config.seed);
    const double sigma = std::sqrt(config.sigma2);
    std::vector<Sample> out;
    out.reserve(config.samples);
    for (std::uint64_t i = 0; i < config.samples; ++i) {
        const double x = sample_point(config.distribution, rng);
        out.push_back({x, truth_f(x) + sigma * rng.next_normal()});
    }
    return out;
}

ReconstructionErrors reconstruction_errors(const SplineFit& fit, double (*f)(double),
                                           double (*fprime)(double), double a, double b) {
    const QuadratureGrid grid = QuadratureGrid::knot_aligned(fit.basis(), a, b);
    const double e = l2_norm([&](double x) { return fit.value(x) - f(x); }, grid);
    const double ep = l2_norm([&](double x) { return fit.derivative(x) - fprime(x); }, grid);
    return {e, ep};
}

int choose_m(std::uint64_t n, double scale) {
    if (n < 1) throw std::invalid_argument("choose_m: n must be >= 1");
    const long m = std::lround(scale * std::pow(static_cast<double>(n), 0.2));
    return static_cast<int>(std::max(3L, m));
}

std::uint64_t schedule_n(int m) {
    if (m < 3) throw std::invalid_argument("schedule_n: m must be >= 3");
    const std::uint64_t m5 = static_cast<std::uint64_t>(m) * m * m * m * m;
    return (m5 + 5000) / 10000;
}

std::vector<int> default_sweep() { return {50, 60, 70, 80, 90, 100, 110}; }

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("loglog_slope: need matching series of length >= 2");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceResult convergence_study(std::span<const int> m_values, int repetitions,
                                    std::uint64_t seed, double sigma2,
                                    std::uint64_t sample_cap) {
    if (m_values.empty()) throw std::invalid_argument("convergence_study: empty M list");
    if (repetitions < 1) throw std::invalid_argument("convergence_study: repetitions must be >= 1");

    std::uint64_t budget = 0;
    for (int m : m_values) {
        const std::uint64_t n = schedule_n(m);
        if (n < static_cast<std::uint64_t>(m))
            throw std::invalid_argument("convergence_study: schedule gives N < M for M=" +
                                        std::to_string(m));
        budget += n * static_cast<std::uint64_t>(repetitions);
    }
    if (budget > sample_cap)
        throw ResourceCapExceeded("convergence_study: " + std::to_string(budget) +
                                  " samples exceed cap " + std::to_string(sample_cap));

    ConvergenceResult result;
    const double sigma = std::sqrt(sigma2);
    for (int m : m_values) {
        const std::uint64_t n = schedule_n(m);
        double sum_e = 0.0;
        double sum_ep = 0.0;
        for (int rep = 0; rep < repetitions; ++rep) {
            CounterRng rng(seed, (static_cast<std::uint64_t>(m) << 20) + static_cast<std::uint64_t>(rep));
            EstimatorState state(m, sigma2);
            for (std::uint64_t i = 0; i < n; ++i) {
                const double x = rng.next_uniform();
                state.ingest(x, truth_f(x) + sigma * rng.next_normal());
            }
            const SplineFit fit = state.fit();
            const ReconstructionErrors err = reconstruction_errors(fit, truth_f, truth_fprime);
            result.reps.push_back({m, n, rep, err.e_l2, err.eprime_l2});
            sum_e += err.e_l2;
            sum_ep += err.eprime_l2;
        }
        result.rows.push_back({m, n, sum_e / repetitions, sum_ep / repetitions});
    }

    if (result.rows.size() >= 2) {
        std::vector<double> ns, es, eps;
        for (const ConvergenceRow& row : result.rows) {
            ns.push_back(static_cast<double>(row.samples));
            es.push_back(row.mean_e_l2);
            eps.push_back(row.mean_eprime_l2);
        }
        result.slope_f = loglog_slope(ns, es);
        result.slope_fprime = loglog_slope(ns, eps);
    }
    return result;
}

void write_convergence_csv(const ConvergenceResult& result, std::ostream& out) {
    out << "M,N,rep,e_l2,eprime_l2\n";
    char line[160];
    for (const ConvergenceRepRow& r : result.reps) {
        std::snprintf(line, sizeof(line), "%d,%llu,%d,%.17g,%.17g\n", r.cells,
                      static_cast<unsigned long long>(r.samples), r.rep, r.e_l2, r.eprime_l2);
        out << line;
    }
}

void write_convergence_json(const ConvergenceResult& result, std::ostream& out) {
    nlohmann::json doc;
    doc["rows"] = nlohmann::json::array();
    for (const ConvergenceRow& row : result.rows) {
        doc["rows"].push_back({{"M", row.cells},
                               {"N", row.samples},
                               {"mean_e_l2", row.mean_e_l2},
                               {"mean_eprime_l2", row.mean_eprime_l2}});
    }
    if (result.slope_f) doc["slope_f"] = *result.slope_f;
    if (result.slope_fprime) doc["slope_fprime"] = *result.slope_fprime;
    out << doc.dump(2) << '\n';
}

}  // namespace splinediff
