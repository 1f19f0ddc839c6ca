#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "vdtp/param_space.hpp"

namespace vdtp {

/// Channel and traffic model standing in for a VANET instance.
///
/// The link alternates between up and down states with exponentially
/// distributed dwell times; while up, each packet is independently lost with
/// probability effective_loss(). density_scale raises both the loss rate and
/// the mean outage length for the enlarged urban instances.
struct Scenario {
    std::string name;
    double bandwidth_bps = 5.5e6;
    int header_bytes = 64;
    double propagation_delay_s = 0.01;
    double base_loss_prob = 0.0;
    double link_up_mean_s = std::numeric_limits<double>::infinity();  // infinity: never goes down
    double link_down_mean_s = 1.0;
    int sessions = 20;
    std::int64_t file_size_bytes = 1048576;
    double density_scale = 0.0;
    /// Configuration used by the field engineers for this instance, if known.
    std::optional<VdtpConfig> reference_config;

    /// Throws ConfigError when an invariant is violated.
    void validate() const;

    /// base_loss_prob * (1 + density_scale), with the density increase capped
    /// at 0.95. A base probability of 1 still means total loss.
    double effective_loss() const;
    double effective_down_mean_s() const { return link_down_mean_s * (1.0 + density_scale); }
    bool always_up() const;

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Names accepted by preset(): Urban (alias UrbanA1), Highway, UrbanA2, UrbanA3.
std::vector<std::string> preset_names();

/// Committed calibrated presets. Throws ConfigError for unknown names.
Scenario preset(std::string_view name);

/// Parses the `key = value` scenario format (see scenarios/*.cfg).
Scenario parse_scenario(std::istream& in, std::string_view source = "<stream>");
Scenario load_scenario_file(const std::filesystem::path& path);

/// Serializes in the format parse_scenario() reads.
std::string format_scenario(const Scenario& scenario);

/// A preset name or a path to a .cfg file.
Scenario resolve_scenario(std::string_view name_or_path);

}  // namespace vdtp
