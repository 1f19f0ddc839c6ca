#include "vdtp/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "vdtp/kv_text.hpp"

namespace vdtp {

void Scenario::validate() const {
    if (!(bandwidth_bps > 0.0)) throw ConfigError(fmt::format("scenario {}: bandwidth must be > 0", name));
    if (header_bytes < 0) throw ConfigError(fmt::format("scenario {}: header_bytes must be >= 0", name));
    if (!(propagation_delay_s >= 0.0))
        throw ConfigError(fmt::format("scenario {}: propagation_delay_s must be >= 0", name));
    if (!(base_loss_prob >= 0.0 && base_loss_prob <= 1.0))
        throw ConfigError(fmt::format("scenario {}: base_loss_prob must lie in [0,1]", name));
    if (!(link_up_mean_s > 0.0) || !(link_down_mean_s > 0.0))
        throw ConfigError(fmt::format("scenario {}: link dwell means must be > 0", name));
    if (sessions < 1) throw ConfigError(fmt::format("scenario {}: sessions must be >= 1", name));
    if (file_size_bytes < 1) throw ConfigError(fmt::format("scenario {}: file_size_bytes must be >= 1", name));
    if (!(density_scale >= 0.0)) throw ConfigError(fmt::format("scenario {}: density_scale must be >= 0", name));
}

double Scenario::effective_loss() const {
    return std::min(std::max(0.95, base_loss_prob), base_loss_prob * (1.0 + density_scale));
}

bool Scenario::always_up() const { return std::isinf(link_up_mean_s); }

namespace {

// Calibrated so the reference configurations move 1 MiB in about 4 s in
// town and about 33 s on the highway.
Scenario urban_base() {
    Scenario s;
    s.name = "Urban";
    s.bandwidth_bps = 5.5e6;
    s.header_bytes = 64;
    s.propagation_delay_s = 0.012;
    s.base_loss_prob = 0.004;
    s.link_up_mean_s = 120.0;
    s.link_down_mean_s = 0.8;
    s.sessions = 20;
    s.file_size_bytes = 1048576;
    s.density_scale = 0.0;
    s.reference_config = VdtpConfig{25600.0, 8.0, 8.0};
    return s;
}

Scenario highway() {
    Scenario s = urban_base();
    s.name = "Highway";
    s.base_loss_prob = 0.02;
    s.link_up_mean_s = 15.0;
    s.link_down_mean_s = 3.0;
    s.reference_config = VdtpConfig{25600.0, 10.0, 10.0};
    return s;
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace

std::vector<std::string> preset_names() { return {"Urban", "Highway", "UrbanA2", "UrbanA3"}; }

Scenario preset(std::string_view name) {
    const std::string n = lower(name);
    if (n == "urban" || n == "urbana1") return urban_base();
    if (n == "highway") return highway();
    if (n == "urbana2") {
        Scenario s = urban_base();
        s.name = "UrbanA2";
        s.density_scale = 0.5;
        return s;
    }
    if (n == "urbana3") {
        Scenario s = urban_base();
        s.name = "UrbanA3";
        s.density_scale = 1.0;
        return s;
    }
    throw ConfigError(fmt::format("unknown scenario '{}' (expected Urban, Highway, UrbanA2 or UrbanA3)", name));
}

Scenario parse_scenario(std::istream& in, std::string_view source) {
    Scenario s;
    for (const KvEntry& e : parse_kv_text(in, source)) {
        if (!e.section.empty() && lower(e.section) != "scenario")
            throw ParseError(source, e.line, fmt::format("unexpected section [{}]", e.section));
        const std::string k = lower(e.key);
        if (k == "name") s.name = e.value;
        else if (k == "bandwidth_bps") s.bandwidth_bps = parse_double_at(e.value, source, e.line);
        else if (k == "header_bytes") s.header_bytes = static_cast<int>(parse_int_at(e.value, source, e.line));
        else if (k == "propagation_delay_s") s.propagation_delay_s = parse_double_at(e.value, source, e.line);
        else if (k == "base_loss_prob") s.base_loss_prob = parse_double_at(e.value, source, e.line);
        else if (k == "link_up_mean_s") s.link_up_mean_s = parse_double_at(e.value, source, e.line);
        else if (k == "link_down_mean_s") s.link_down_mean_s = parse_double_at(e.value, source, e.line);
        else if (k == "sessions") s.sessions = static_cast<int>(parse_int_at(e.value, source, e.line));
        else if (k == "file_size_bytes") s.file_size_bytes = parse_int_at(e.value, source, e.line);
        else if (k == "density_scale") s.density_scale = parse_double_at(e.value, source, e.line);
        else if (k == "reference_config") {
            const auto f = split_fields(e.value, ',');
            if (f.size() != 3)
                throw ParseError(source, e.line, "reference_config needs chunk_size, total_attempts, retransmission_time");
            s.reference_config = VdtpConfig{parse_double_at(f[0], source, e.line), parse_double_at(f[1], source, e.line),
                                            parse_double_at(f[2], source, e.line)};
        } else {
            throw ParseError(source, e.line, fmt::format("unknown scenario key '{}'", e.key));
        }
    }
    if (s.name.empty()) s.name = std::string(source);
    s.validate();
    return s;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open scenario file '{}'", path.string()));
    return parse_scenario(in, path.string());
}

std::string format_scenario(const Scenario& s) {
    std::string out;
    out += fmt::format("name = {}\n", s.name);
    out += fmt::format("bandwidth_bps = {}\n", format_double(s.bandwidth_bps));
    out += fmt::format("header_bytes = {}\n", s.header_bytes);
    out += fmt::format("propagation_delay_s = {}\n", format_double(s.propagation_delay_s));
    out += fmt::format("base_loss_prob = {}\n", format_double(s.base_loss_prob));
    out += fmt::format("link_up_mean_s = {}\n", format_double(s.link_up_mean_s));
    out += fmt::format("link_down_mean_s = {}\n", format_double(s.link_down_mean_s));
    out += fmt::format("sessions = {}\n", s.sessions);
    out += fmt::format("file_size_bytes = {}\n", s.file_size_bytes);
    out += fmt::format("density_scale = {}\n", format_double(s.density_scale));
    if (s.reference_config)
        out += fmt::format("reference_config = {}, {}, {}\n", format_double(s.reference_config->chunk_size),
                           format_double(s.reference_config->total_attempts),
                           format_double(s.reference_config->retransmission_time));
    return out;
}

Scenario resolve_scenario(std::string_view name_or_path) {
    const std::filesystem::path p(name_or_path);
    if (p.has_extension() || name_or_path.find('/') != std::string_view::npos) return load_scenario_file(p);
    return preset(name_or_path);
}

}  // namespace vdtp
