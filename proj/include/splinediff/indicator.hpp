#ifndef SPLINEDIFF_INDICATOR_HPP
#define SPLINEDIFF_INDICATOR_HPP

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace splinediff {

/// Sobolev interpolation constant for intervals; reliable regions must span
/// at least ceil(2 * sqrt(kSobolevConstant)) = 12 bins to carry a guarantee.
inline constexpr double kSobolevConstant = 32.0;
inline constexpr int kMinRegionBins = 12;

/// Bin index in 1..M for x in [0, 1]: bin 1 is the closed interval [0, d],
/// bin j > 1 is the half-open (jd - d, jd].
int bin_index(int cells, double x);

/// Normalized histogram of observation points over M equal bins of [0, 1].
/// The indicator value on bin j is count_j / (N * d), so it integrates to 1.
class HistogramIndicator {
public:
    explicit HistogramIndicator(int cells);
    /// Rebuilds a histogram from previously exported counts.
    HistogramIndicator(int cells, std::vector<std::uint64_t> counts);

    /// Counts x into its bin. Throws std::domain_error outside [0, 1].
    void record(double x);

    int cells() const noexcept { return cells_; }
    std::uint64_t total() const noexcept { return total_; }
    /// Count of bin j, j in 1..M.
    std::uint64_t count(int j) const;
    const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

    /// Indicator value on bin j (0 while the histogram is empty).
    double rho_bin(int j) const;
    /// Piecewise-constant indicator value at x; 0 outside [0, 1].
    double rho(double x) const noexcept;

private:
    int cells_;
    std::uint64_t total_ = 0;
    std::vector<std::uint64_t> counts_;
};

/// A run of bins (pd, qd] on which the indicator stays at or above some
/// positive level and whose width satisfies the region guarantee.
struct ReliableRegion {
    int p = 0;
    int q = 0;
    double gamma = 0.0;  ///< min indicator value attained over the run

    double left(int cells) const noexcept { return static_cast<double>(p) / cells; }
    double right(int cells) const noexcept { return static_cast<double>(q) / cells; }
};

/// All maximal runs of consecutive bins with indicator >= gamma that span at
/// least kMinRegionBins bins, disjoint and sorted left to right. Shorter runs
/// carry no guarantee and are dropped.
std::vector<ReliableRegion> reliable_regions(const HistogramIndicator& hist, double gamma);

/// CSV dump: bin_index,left_edge,right_edge,count,rho.
void write_histogram_csv(const HistogramIndicator& hist, std::ostream& out);

}  // namespace splinediff

#endif
