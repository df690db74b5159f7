#include "splinediff/indicator.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace splinediff {

int bin_index(int cells, double x) {
    if (cells < 1) throw std::invalid_argument("bin_index: cell count must be >= 1");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("bin_index: x=" + std::to_string(x) + " outside [0, 1]");
    const double d = 1.0 / cells;
    if (x <= d) return 1;
    int j = static_cast<int>(std::ceil(x / d));
    if (j < 1) j = 1;
    if (j > cells) j = cells;
    return j;
}

HistogramIndicator::HistogramIndicator(int cells) : cells_(cells) {
    if (cells < 1) throw std::invalid_argument("HistogramIndicator: cell count must be >= 1");
    counts_.assign(static_cast<size_t>(cells), 0);
}

HistogramIndicator::HistogramIndicator(int cells, std::vector<std::uint64_t> counts)
    : cells_(cells), counts_(std::move(counts)) {
    if (cells < 1) throw std::invalid_argument("HistogramIndicator: cell count must be >= 1");
    if (static_cast<int>(counts_.size()) != cells)
        throw std::invalid_argument("HistogramIndicator: counts length must equal cell count");
    for (std::uint64_t c : counts_) total_ += c;
}

void HistogramIndicator::record(double x) {
    const int j = bin_index(cells_, x);
    ++counts_[static_cast<size_t>(j - 1)];
    ++total_;
}

std::uint64_t HistogramIndicator::count(int j) const {
    if (j < 1 || j > cells_) throw std::out_of_range("HistogramIndicator::count: bin out of range");
    return counts_[static_cast<size_t>(j - 1)];
}

double HistogramIndicator::rho_bin(int j) const {
    if (j < 1 || j > cells_) throw std::out_of_range("HistogramIndicator::rho_bin: bin out of range");
    if (total_ == 0) return 0.0;
    const double d = 1.0 / cells_;
    return static_cast<double>(counts_[static_cast<size_t>(j - 1)]) / (static_cast<double>(total_) * d);
}

double HistogramIndicator::rho(double x) const noexcept {
    if (!(x >= 0.0 && x <= 1.0)) return 0.0;
    if (total_ == 0) return 0.0;
    return rho_bin(bin_index(cells_, x));
}

std::vector<ReliableRegion> reliable_regions(const HistogramIndicator& hist, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("reliable_regions: gamma must be > 0");
    std::vector<ReliableRegion> regions;
    const int m = hist.cells();
    int run_start = 0;  // 1-based first bin of the current run, 0 = no run
    double run_min = 0.0;
    auto flush = [&](int last_bin) {
        if (run_start == 0) return;
        const int p = run_start - 1;
        const int q = last_bin;
        if (q - p >= kMinRegionBins) regions.push_back({p, q, run_min});
        run_start = 0;
    };
    for (int j = 1; j <= m; ++j) {
        const double r = hist.rho_bin(j);
        if (r >= gamma) {
            if (run_start == 0) {
                run_start = j;
                run_min = r;
            } else {
                run_min = std::min(run_min, r);
            }
        } else {
            flush(j - 1);
        }
    }
    flush(m);
    return regions;
}

void write_histogram_csv(const HistogramIndicator& hist, std::ostream& out) {
    const double d = 1.0 / hist.cells();
    out << "bin_index,left_edge,right_edge,count,rho\n";
    char line[160];
    for (int j = 1; j <= hist.cells(); ++j) {
        std::snprintf(line, sizeof(line), "%d,%.17g,%.17g,%llu,%.17g\n", j, (j - 1) * d, j * d,
                      static_cast<unsigned long long>(hist.count(j)), hist.rho_bin(j));
        out << line;
    }
}

}  // namespace splinediff
