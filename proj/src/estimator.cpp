#include "splinediff/estimator.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <string>

#include "splinediff/errors.hpp"

namespace splinediff {

// ---------------------------------------------------------------------------
// SplineFit
// ---------------------------------------------------------------------------

SplineFit::SplineFit(SplineBasis basis, std::vector<double> coeffs, double alpha, std::uint64_t n_fit)
    : basis_(basis), coeffs_(std::move(coeffs)), alpha_(alpha), n_fit_(n_fit) {
    if (static_cast<int>(coeffs_.size()) != basis_.dimension())
        throw std::invalid_argument("SplineFit: coefficient length must equal basis dimension");
}

double SplineFit::value(double x) const { return design_row(basis_, x).dot(coeffs_); }

double SplineFit::derivative(double x) const { return derivative_row(basis_, x).dot(coeffs_); }

Evaluation SplineFit::evaluate(double x) const { return {value(x), derivative(x)}; }

// ---------------------------------------------------------------------------
// EstimatorState
// ---------------------------------------------------------------------------

EstimatorState::EstimatorState(int cells, double sigma2)
    : basis_(cells),
      sigma2_(sigma2),
      design_sum_(basis_.dimension(), 3),
      rhs_sum_(static_cast<size_t>(basis_.dimension()), 0.0),
      min_x_(std::numeric_limits<double>::infinity()),
      max_x_(-std::numeric_limits<double>::infinity()),
      hist_(cells),
      penalty_(penalty_matrix(basis_)) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("EstimatorState: sigma2 must be > 0");
}

void EstimatorState::ingest(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("ingest: x=" + std::to_string(x) + " outside [0, 1]");
    if (!std::isfinite(y)) throw std::invalid_argument("ingest: y is not finite");

    const DesignRow row = design_row(basis_, x);
    for (int a = 0; a < 4; ++a) {
        const double va = row.values[static_cast<size_t>(a)];
        for (int b = 0; b <= a; ++b)
            design_sum_.add(row.start + a, row.start + b, va * row.values[static_cast<size_t>(b)]);
        rhs_sum_[static_cast<size_t>(row.start + a)] += va * y;
    }
    yy_sum_ += y * y;
    hist_.record(x);
    if (x < min_x_) min_x_ = x;
    if (x > max_x_) max_x_ = x;
    ++n_;
}

BandedSymMatrix EstimatorState::design_average() const {
    if (n_ == 0) throw EmptyState("design_average: no samples ingested");
    return design_sum_.scaled(1.0 / static_cast<double>(n_));
}

std::vector<double> EstimatorState::rhs_average() const {
    if (n_ == 0) throw EmptyState("rhs_average: no samples ingested");
    std::vector<double> b(rhs_sum_);
    const double inv = 1.0 / static_cast<double>(n_);
    for (double& v : b) v *= inv;
    return b;
}

double EstimatorState::prior_alpha() const {
    if (n_ == 0) throw EmptyState("prior_alpha: no samples ingested");
    const double d = basis_.mesh();
    return basis_.cells() * sigma2_ / static_cast<double>(n_) + d * d * d * d;
}

bool EstimatorState::needs_refinement() const {
    if (n_ == 0) throw EmptyState("needs_refinement: no samples ingested");
    const double d = basis_.mesh();
    return basis_.cells() * sigma2_ / static_cast<double>(n_) < d * d * d * d;
}

SplineFit EstimatorState::fit(std::optional<double> alpha) const {
    if (n_ < 2) throw DegenerateDesign("fit: need at least 2 samples");
    if (!(max_x_ - min_x_ > 0.0))
        throw DegenerateDesign("fit: all observation points are identical");
    const double a = alpha.value_or(prior_alpha());
    if (!(a > 0.0)) throw std::invalid_argument("fit: alpha must be > 0");

    const BandedSymMatrix system = axpy_banded(penalty_, a, design_average());
    std::vector<double> coeffs = cholesky_solve(system, rhs_average());
    return SplineFit(basis_, std::move(coeffs), a, n_);
}

double EstimatorState::objective(std::span<const double> coeffs, double alpha) const {
    if (n_ == 0) throw EmptyState("objective: no samples ingested");
    if (static_cast<int>(coeffs.size()) != basis_.dimension())
        throw std::invalid_argument("objective: coefficient length mismatch");
    // (1/N) |H l - y|^2 + alpha l^T P l  =  l^T (A_N + alpha P) l - 2 b_N^T l + (1/N) sum y^2
    const BandedSymMatrix quad = axpy_banded(penalty_, alpha, design_average());
    const std::vector<double> qv = quad.multiply(coeffs);
    const std::vector<double> b = rhs_average();
    double acc = yy_sum_ / static_cast<double>(n_);
    for (size_t i = 0; i < coeffs.size(); ++i) acc += coeffs[i] * qv[i] - 2.0 * b[i] * coeffs[i];
    return acc;
}

// ---------------------------------------------------------------------------
// Checkpointing
//
// Layout: magic "SPLNDIFF", u32 version, payload of little-endian 64-bit
// fields (M, n_seen, sigma2, min_x, max_x, yy_sum, the four diagonals of the
// design sum, rhs sum, bin counts), then a CRC-32 of the payload.
// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::uint8_t, 8> kMagic = {'S', 'P', 'L', 'N', 'D', 'I', 'F', 'F'};
constexpr std::uint32_t kVersion = 1;

std::uint32_t crc32(std::span<const std::uint8_t> bytes) {
    static const auto table = [] {
        std::array<std::uint32_t, 256> t{};
        for (std::uint32_t i = 0; i < 256; ++i) {
            std::uint32_t c = i;
            for (int k = 0; k < 8; ++k) c = (c & 1u) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
            t[i] = c;
        }
        return t;
    }();
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::uint8_t b : bytes) crc = table[(crc ^ b) & 0xFFu] ^ (crc >> 8);
    return crc ^ 0xFFFFFFFFu;
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int k = 0; k < 4; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

void put_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int k = 0; k < 8; ++k) out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
}

void put_f64(std::vector<std::uint8_t>& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(bytes_[pos_ + static_cast<size_t>(k)]) << (8 * k);
        pos_ += 4;
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(bytes_[pos_ + static_cast<size_t>(k)]) << (8 * k);
        pos_ += 8;
        return v;
    }
    double f64() { return std::bit_cast<double>(u64()); }
    size_t pos() const noexcept { return pos_; }
    size_t remaining() const noexcept { return bytes_.size() - pos_; }

private:
    void need(size_t n) const {
        if (bytes_.size() - pos_ < n) throw CorruptPayload("checkpoint truncated");
    }
    std::span<const std::uint8_t> bytes_;
    size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> EstimatorState::checkpoint() const {
    std::vector<std::uint8_t> out;
    const int n = basis_.dimension();
    const int m = basis_.cells();
    out.reserve(16 + 8 * (6 + 4 * static_cast<size_t>(n) + static_cast<size_t>(n) + static_cast<size_t>(m)));

    out.insert(out.end(), kMagic.begin(), kMagic.end());
    put_u32(out, kVersion);
    const size_t payload_begin = out.size();

    put_u64(out, static_cast<std::uint64_t>(m));
    put_u64(out, n_);
    put_f64(out, sigma2_);
    put_f64(out, min_x_);
    put_f64(out, max_x_);
    put_f64(out, yy_sum_);
    for (int k = 0; k <= 3; ++k)
        for (double v : design_sum_.diagonal(k)) put_f64(out, v);
    for (double v : rhs_sum_) put_f64(out, v);
    for (std::uint64_t c : hist_.counts()) put_u64(out, c);

    const std::uint32_t crc =
        crc32(std::span<const std::uint8_t>(out.data() + payload_begin, out.size() - payload_begin));
    put_u32(out, crc);
    return out;
}

EstimatorState EstimatorState::restore(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kMagic.size() + 8 || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin()))
        throw CorruptPayload("checkpoint magic mismatch");
    Reader header(bytes.subspan(kMagic.size()));
    const std::uint32_t version = header.u32();
    if (version != kVersion)
        throw VersionMismatch("checkpoint version " + std::to_string(version) + ", expected " +
                              std::to_string(kVersion));

    const size_t payload_begin = kMagic.size() + 4;
    if (bytes.size() < payload_begin + 4) throw CorruptPayload("checkpoint truncated");
    const auto payload = bytes.subspan(payload_begin, bytes.size() - payload_begin - 4);
    Reader tail(bytes.subspan(bytes.size() - 4));
    if (crc32(payload) != tail.u32()) throw CorruptPayload("checkpoint checksum failure");

    Reader in(payload);
    const std::uint64_t m64 = in.u64();
    if (m64 == 0 || m64 > 1u << 24) throw CorruptPayload("checkpoint cell count out of range");
    const int m = static_cast<int>(m64);
    const std::uint64_t n_seen = in.u64();
    const double sigma2 = in.f64();
    if (!(sigma2 > 0.0)) throw CorruptPayload("checkpoint sigma2 out of range");

    EstimatorState state(m, sigma2);
    state.n_ = n_seen;
    state.min_x_ = in.f64();
    state.max_x_ = in.f64();
    state.yy_sum_ = in.f64();
    const size_t expect = 4 * static_cast<size_t>(state.basis_.dimension()) - 6 +
                          static_cast<size_t>(state.basis_.dimension()) + static_cast<size_t>(m);
    if (in.remaining() != expect * 8) throw CorruptPayload("checkpoint payload size mismatch");
    for (int k = 0; k <= 3; ++k)
        for (double& v : state.design_sum_.diagonal(k)) v = in.f64();
    for (double& v : state.rhs_sum_) v = in.f64();
    std::vector<std::uint64_t> counts(static_cast<size_t>(m));
    std::uint64_t total = 0;
    for (std::uint64_t& c : counts) {
        c = in.u64();
        total += c;
    }
    if (total != n_seen) throw CorruptPayload("checkpoint bin counts disagree with sample count");
    state.hist_ = HistogramIndicator(m, std::move(counts));
    return state;
}

}  // namespace splinediff
