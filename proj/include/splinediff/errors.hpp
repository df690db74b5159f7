#ifndef SPLINEDIFF_ERRORS_HPP
#define SPLINEDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace splinediff {

/// The linear system is not symmetric positive definite (a Cholesky pivot
/// collapsed). Typically means the data was degenerate and alpha was zero.
class NotPositiveDefinite : public std::runtime_error {
public:
    explicit NotPositiveDefinite(const std::string& what) : std::runtime_error(what) {}
};

/// The ingested samples cannot determine a fit (fewer than two samples, or
/// all observation points identical).
class DegenerateDesign : public std::runtime_error {
public:
    explicit DegenerateDesign(const std::string& what) : std::runtime_error(what) {}
};

/// An operation that needs at least one sample was called on an empty state.
class EmptyState : public std::runtime_error {
public:
    explicit EmptyState(const std::string& what) : std::runtime_error(what) {}
};

/// Checkpoint payload carries an unsupported format version.
class VersionMismatch : public std::runtime_error {
public:
    explicit VersionMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Checkpoint payload is truncated, mislabeled, or fails its checksum.
class CorruptPayload : public std::runtime_error {
public:
    explicit CorruptPayload(const std::string& what) : std::runtime_error(what) {}
};

/// A desk-scale-only oracle was asked to run beyond its guarded size.
class ScaleGuardExceeded : public std::runtime_error {
public:
    explicit ScaleGuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A study would exceed its configured total-sample budget.
class ResourceCapExceeded : public std::runtime_error {
public:
    explicit ResourceCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace splinediff

#endif
