#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vdtp/rng.hpp"

namespace vdtp {

/// Raised for invalid parameters detected at construction/validation time.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A candidate VDTP configuration, searched as three reals.
struct VdtpConfig {
    double chunk_size = 0.0;           // bytes
    double total_attempts = 0.0;       // transmissions per request
    double retransmission_time = 0.0;  // seconds

    static constexpr std::size_t kDims = 3;

    std::array<double, kDims> as_array() const {
        return {chunk_size, total_attempts, retransmission_time};
    }
    static VdtpConfig from(std::span<const double> x);

    friend bool operator==(const VdtpConfig&, const VdtpConfig&) = default;
};

/// Axis-aligned box. Dimension-generic so the optimizers can run on the
/// analytic benchmark functions too; the VDTP box is `Bounds::vdtp()`.
class Bounds {
public:
    /// Throws ConfigError unless lower[i] < upper[i] for every i.
    Bounds(std::vector<double> lower, std::vector<double> upper);

    /// chunk_size [128, 524288] B, total_attempts [1, 250], retransmission_time [1, 10] s.
    static Bounds vdtp();
    /// [lo, hi]^dims
    static Bounds cube(std::size_t dims, double lo, double hi);

    std::size_t dims() const { return lower_.size(); }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    double width(std::size_t i) const { return upper_[i] - lower_[i]; }

    bool contains(std::span<const double> x) const;
    std::vector<double> clamp(std::span<const double> x) const;

    /// Affine maps between physical coordinates and the unit cube.
    std::vector<double> to_unit(std::span<const double> x) const;
    std::vector<double> from_unit(std::span<const double> u) const;

    friend bool operator==(const Bounds&, const Bounds&) = default;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
};

/// Uniform sample inside a 3-D box.
VdtpConfig sample_uniform(const Bounds& bounds, Rng& rng);

/// Coordinate-wise min(upper, max(lower, value)).
VdtpConfig clamp(const VdtpConfig& config, const Bounds& bounds);

/// Human-readable descriptions of each violated bound; empty when in bounds.
std::vector<std::string> bound_violations(const VdtpConfig& config, const Bounds& bounds);

/// The integer-valued view the protocol consumes.
struct ProtocolConfig {
    std::int64_t chunk_bytes = 0;
    int attempts = 0;
    double timeout_s = 0.0;

    friend bool operator==(const ProtocolConfig&, const ProtocolConfig&) = default;
};

/// Round-half-up of chunk size and attempts; timeout passes through.
ProtocolConfig quantize_for_protocol(const VdtpConfig& config);

}  // namespace vdtp
