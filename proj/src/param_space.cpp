#include "vdtp/param_space.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace vdtp {

namespace {

constexpr std::array<const char*, VdtpConfig::kDims> kNames = {
    "chunk_size", "total_attempts", "retransmission_time"};

}  // namespace

VdtpConfig VdtpConfig::from(std::span<const double> x) {
    if (x.size() != kDims)
        throw ConfigError(fmt::format("VdtpConfig needs {} coordinates, got {}", kDims, x.size()));
    return {x[0], x[1], x[2]};
}

Bounds::Bounds(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (lower_.empty() || lower_.size() != upper_.size())
        throw ConfigError("bounds need matching, non-empty lower and upper vectors");
    for (std::size_t i = 0; i < lower_.size(); ++i) {
        if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i]) || !(lower_[i] < upper_[i]))
            throw ConfigError(fmt::format("bounds dimension {}: lower ({}) must be < upper ({})", i,
                                          lower_[i], upper_[i]));
    }
}

Bounds Bounds::vdtp() { return Bounds({128.0, 1.0, 1.0}, {524288.0, 250.0, 10.0}); }

Bounds Bounds::cube(std::size_t dims, double lo, double hi) {
    return Bounds(std::vector<double>(dims, lo), std::vector<double>(dims, hi));
}

bool Bounds::contains(std::span<const double> x) const {
    if (x.size() != dims()) return false;
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] >= lower_[i] && x[i] <= upper_[i])) return false;
    return true;
}

std::vector<double> Bounds::clamp(std::span<const double> x) const {
    std::vector<double> out(x.begin(), x.end());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(upper_[i], std::max(lower_[i], out[i]));
    return out;
}

std::vector<double> Bounds::to_unit(std::span<const double> x) const {
    std::vector<double> u(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) u[i] = (x[i] - lower_[i]) / width(i);
    return u;
}

std::vector<double> Bounds::from_unit(std::span<const double> u) const {
    std::vector<double> x(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        // Pin the endpoints so unit 0/1 map exactly onto the bounds.
        if (u[i] <= 0.0)
            x[i] = lower_[i];
        else if (u[i] >= 1.0)
            x[i] = upper_[i];
        else
            x[i] = std::min(upper_[i], lower_[i] + u[i] * width(i));
    }
    return x;
}

VdtpConfig sample_uniform(const Bounds& bounds, Rng& rng) {
    if (bounds.dims() != VdtpConfig::kDims) throw ConfigError("sample_uniform needs 3-D bounds");
    std::array<double, VdtpConfig::kDims> x{};
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(bounds.lower()[i], bounds.upper()[i]);
    return VdtpConfig::from(x);
}

VdtpConfig clamp(const VdtpConfig& config, const Bounds& bounds) {
    const auto x = config.as_array();
    return VdtpConfig::from(bounds.clamp(x));
}

std::vector<std::string> bound_violations(const VdtpConfig& config, const Bounds& bounds) {
    std::vector<std::string> out;
    const auto x = config.as_array();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] >= bounds.lower()[i]) || !(x[i] <= bounds.upper()[i]))
            out.push_back(fmt::format("{} = {} outside [{}, {}]", kNames[i], x[i], bounds.lower()[i],
                                      bounds.upper()[i]));
    }
    return out;
}

ProtocolConfig quantize_for_protocol(const VdtpConfig& config) {
    auto round_half_up = [](double v) { return std::floor(v + 0.5); };
    ProtocolConfig p;
    p.chunk_bytes = std::max<std::int64_t>(1, static_cast<std::int64_t>(round_half_up(config.chunk_size)));
    p.attempts = std::max(1, static_cast<int>(round_half_up(config.total_attempts)));
    p.timeout_s = config.retransmission_time;
    return p;
}

}  // namespace vdtp
