#include "vdtp/harness/records.hpp"

#include <json.hpp>

#include "vdtp/kv_text.hpp"

namespace vdtp::harness {

namespace {

using nlohmann::json;

std::string num(double v) { return format_double(v); }

double to_num(const json& j) { return parse_double_at(j.get<std::string>(), "checkpoint", 0); }

}  // namespace

std::string run_record_to_json(const RunRecord& r, const std::string& fingerprint) {
    json j;
    j["fingerprint"] = fingerprint;
    j["algorithm"] = std::string(to_string(r.algorithm));
    json pos = json::array();
    for (double v : r.best_position) pos.push_back(num(v));
    j["best_position"] = pos;
    j["best_fitness"] = num(r.best_fitness);
    j["best_evaluation_index"] = r.best_evaluation_index;
    j["evaluations_used"] = r.evaluations_used;
    j["generations_completed"] = r.generations_completed;
    j["wall_time_s"] = num(r.wall_time_s);
    j["time_to_best_s"] = num(r.time_to_best_s);
    j["seed"] = r.seed;
    json trace = json::array();
    for (const auto& t : r.trace) trace.push_back(json::array({t.evaluation_index, num(t.best_fitness)}));
    j["trace"] = trace;
    return j.dump(1) + "\n";
}

bool run_record_from_json(const std::string& text, const std::string& fingerprint, RunRecord& out) {
    try {
        const json j = json::parse(text);
        if (j.at("fingerprint").get<std::string>() != fingerprint) return false;
        RunRecord r;
        r.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
        for (const auto& v : j.at("best_position")) r.best_position.push_back(to_num(v));
        r.best_fitness = to_num(j.at("best_fitness"));
        r.best_evaluation_index = j.at("best_evaluation_index").get<std::size_t>();
        r.evaluations_used = j.at("evaluations_used").get<std::size_t>();
        r.generations_completed = j.at("generations_completed").get<int>();
        r.wall_time_s = to_num(j.at("wall_time_s"));
        r.time_to_best_s = to_num(j.at("time_to_best_s"));
        r.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& t : j.at("trace")) r.trace.push_back({t.at(0).get<std::size_t>(), to_num(t.at(1))});
        out = std::move(r);
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

std::string best_config_json(const RunRecord& record, const FitnessReport& report) {
    json j;
    const VdtpConfig c = record.best_config();
    const ProtocolConfig p = quantize_for_protocol(c);
    j["algorithm"] = std::string(to_string(record.algorithm));
    j["seed"] = record.seed;
    j["best_evaluation_index"] = record.best_evaluation_index;
    j["config"] = {{"chunk_size", c.chunk_size},
                   {"total_attempts", c.total_attempts},
                   {"retransmission_time", c.retransmission_time}};
    j["protocol"] = {{"chunk_bytes", p.chunk_bytes}, {"attempts", p.attempts}, {"timeout_s", p.timeout_s}};
    j["fitness"] = report.fitness;
    j["replications_n"] = report.n;
    j["c_constant"] = report.c_constant;
    json reps = json::array();
    for (const auto& o : report.replications)
        reps.push_back({{"transmission_time_s", o.transmission_time_s},
                        {"lost_packets", o.lost_packets},
                        {"data_kbytes", o.data_transferred_kbytes},
                        {"completed_sessions", o.completed_sessions},
                        {"refused_sessions", o.refused_sessions}});
    j["replications"] = reps;
    return j.dump(2) + "\n";
}

}  // namespace vdtp::harness
