#include "vdtp/harness/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "vdtp/kv_text.hpp"
#include "vdtp/scenario.hpp"

namespace vdtp::harness {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

constexpr std::array<const char*, 3> kBoundKeys = {"chunk_size", "total_attempts", "retransmission_time"};

}  // namespace

std::vector<OptimizerParams> ExperimentConfig::resolved_algorithms() const {
    if (!algorithms.empty()) return algorithms;
    std::vector<OptimizerParams> out;
    for (Algorithm a : kAllAlgorithms) out.push_back(OptimizerParams::defaults(a));
    return out;
}

void ExperimentConfig::validate() const {
    if (runs < 1) throw ConfigError("runs must be >= 1");
    if (replications < 1) throw ConfigError("replications must be >= 1");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (bounds.dims() != VdtpConfig::kDims) throw ConfigError("bounds must be 3-dimensional");
    resolve_scenario(scenario);
    for (const OptimizerParams& p : resolved_algorithms()) p.validate(max_evaluations);
}

ExperimentConfig parse_experiment_config(std::istream& in, std::string_view source) {
    ExperimentConfig cfg;
    std::vector<double> lo = cfg.bounds.lower(), hi = cfg.bounds.upper();
    std::vector<Algorithm> order;
    std::vector<std::pair<Algorithm, KvEntry>> overrides;

    for (const KvEntry& e : parse_kv_text(in, source)) {
        const std::string section = lower(e.section);
        const std::string key = lower(e.key);
        if (section.empty() || section == "experiment") {
            if (key == "scenario") cfg.scenario = e.value;
            else if (key == "runs") cfg.runs = static_cast<int>(parse_int_at(e.value, source, e.line));
            else if (key == "max_evaluations" || key == "budget") {
                const long long b = parse_int_at(e.value, source, e.line);
                if (b < 1) throw ParseError(source, e.line, "max_evaluations must be >= 1");
                cfg.max_evaluations = static_cast<std::size_t>(b);
            } else if (key == "replications") cfg.replications = static_cast<int>(parse_int_at(e.value, source, e.line));
            else if (key == "master_seed" || key == "seed")
                cfg.master_seed = static_cast<std::uint64_t>(parse_int_at(e.value, source, e.line));
            else if (key == "output" || key == "output_dir") cfg.output_dir = e.value;
            else if (key == "workers") cfg.workers = static_cast<int>(parse_int_at(e.value, source, e.line));
            else if (key == "algorithms") {
                order.clear();
                for (const std::string& name : split_fields(e.value, ',')) {
                    try {
                        order.push_back(parse_algorithm(name));
                    } catch (const ConfigError& err) {
                        throw ParseError(source, e.line, err.what());
                    }
                }
            } else {
                throw ParseError(source, e.line, fmt::format("unknown experiment key '{}'", e.key));
            }
        } else if (section == "bounds") {
            const auto it = std::find(kBoundKeys.begin(), kBoundKeys.end(), key);
            if (it == kBoundKeys.end()) throw ParseError(source, e.line, fmt::format("unknown bound '{}'", e.key));
            const auto f = split_fields(e.value, ',');
            if (f.size() != 2) throw ParseError(source, e.line, "bounds are written as 'lower, upper'");
            const auto i = static_cast<std::size_t>(it - kBoundKeys.begin());
            lo[i] = parse_double_at(f[0], source, e.line);
            hi[i] = parse_double_at(f[1], source, e.line);
        } else {
            Algorithm a;
            try {
                a = parse_algorithm(e.section);
            } catch (const ConfigError&) {
                throw ParseError(source, e.line, fmt::format("unknown section [{}]", e.section));
            }
            overrides.emplace_back(a, e);
        }
    }

    try {
        cfg.bounds = Bounds(lo, hi);
    } catch (const ConfigError& err) {
        throw ConfigError(fmt::format("{}: {}", source, err.what()));
    }

    // Algorithms with their own section but missing from the list are appended.
    for (const auto& [a, e] : overrides)
        if (!order.empty() && std::find(order.begin(), order.end(), a) == order.end()) order.push_back(a);
    if (!order.empty() || !overrides.empty()) {
        if (order.empty()) order.assign(kAllAlgorithms.begin(), kAllAlgorithms.end());
        for (Algorithm a : order) {
            OptimizerParams p = OptimizerParams::defaults(a);
            for (const auto& [oa, e] : overrides) {
                if (oa != a) continue;
                try {
                    p.set(e.key, e.value);
                } catch (const ConfigError& err) {
                    throw ParseError(source, e.line, err.what());
                }
            }
            cfg.algorithms.push_back(p);
        }
    }
    return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path.string()));
    return parse_experiment_config(in, path.string());
}

std::string format_experiment_config(const ExperimentConfig& cfg) {
    std::string out = "[experiment]\n";
    out += fmt::format("scenario = {}\n", cfg.scenario);
    out += fmt::format("runs = {}\n", cfg.runs);
    out += fmt::format("max_evaluations = {}\n", cfg.max_evaluations);
    out += fmt::format("replications = {}\n", cfg.replications);
    out += fmt::format("master_seed = {}\n", cfg.master_seed);
    out += fmt::format("output = {}\n", cfg.output_dir.string());
    out += fmt::format("workers = {}\n", cfg.workers);
    const auto algs = cfg.resolved_algorithms();
    std::vector<std::string> names;
    for (const auto& p : algs) names.emplace_back(to_string(p.algorithm));
    out += fmt::format("algorithms = {}\n", fmt::join(names, ", "));
    out += "\n[bounds]\n";
    for (std::size_t i = 0; i < kBoundKeys.size(); ++i)
        out += fmt::format("{} = {}, {}\n", kBoundKeys[i], format_double(cfg.bounds.lower()[i]),
                           format_double(cfg.bounds.upper()[i]));
    for (const auto& p : algs) {
        out += fmt::format("\n[{}]\n", to_string(p.algorithm));
        for (const auto& [k, v] : p.describe()) out += fmt::format("{} = {}\n", k, v);
    }
    return out;
}

std::vector<GridCombination> parse_grid(std::istream& in, const OptimizerParams& base, std::size_t max_evaluations,
                                        std::string_view source) {
    std::vector<GridCombination> out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view view(raw);
        const auto hash = view.find('#');
        if (hash != std::string_view::npos) view = view.substr(0, hash);
        std::string text = trim(view);
        if (text.empty()) continue;
        std::replace(text.begin(), text.end(), ',', ' ');
        std::istringstream tokens(text);
        GridCombination combo;
        combo.line = line;
        std::string tok;
        while (tokens >> tok) {
            const auto eq = tok.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == tok.size())
                throw ParseError(source, line, fmt::format("expected key=value, got '{}'", tok));
            combo.assignments.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
        }
        std::vector<std::string> parts;
        for (const auto& [k, v] : combo.assignments) parts.push_back(k + "=" + v);
        combo.label = fmt::format("{}", fmt::join(parts, " "));
        try {
            apply_combination(base, combo).validate(max_evaluations);
        } catch (const ParseError&) {
            throw;
        } catch (const ConfigError& err) {
            throw ParseError(source, line, err.what());
        }
        out.push_back(std::move(combo));
    }
    if (out.empty()) throw ConfigError(fmt::format("{}: grid lists no parameter combination", source));
    return out;
}

OptimizerParams apply_combination(const OptimizerParams& base, const GridCombination& combo) {
    OptimizerParams p = base;
    for (const auto& [k, v] : combo.assignments) p.set(k, v);
    return p;
}

}  // namespace vdtp::harness
