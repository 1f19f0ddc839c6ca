#include "vdtp/harness/csv.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include <fmt/format.h>

#include "vdtp/kv_text.hpp"

namespace vdtp::harness {

namespace {

constexpr const char* kTraceHeader = "evaluation_index,best_fitness";
constexpr const char* kSummaryHeader = "algorithm,mean,std_dev,minimum,median,maximum";
constexpr const char* kTestsHeader = "reference,algorithm,statistic,p_value,n_effective,exact,marker";
constexpr const char* kRanksHeader = "algorithm,mean_rank,blocks,statistic,p_value";
constexpr const char* kQosHeader =
    "algorithm,chunk_size,retransmission_time,total_attempts,transmission_time_s,lost_packets,data_kbytes,"
    "throughput_kbps,fitness";

std::string num(double v) { return format_double(v); }

/// Splits a CSV body into rows of `columns` fields after checking the header.
std::vector<std::pair<int, std::vector<std::string>>> read_rows(std::istream& in, const char* header,
                                                                std::size_t columns, const char* source) {
    std::string line;
    int n = 0;
    if (!std::getline(in, line) || trim(line) != header)
        throw ParseError(source, 1, fmt::format("expected header '{}'", header));
    ++n;
    std::vector<std::pair<int, std::vector<std::string>>> rows;
    while (std::getline(in, line)) {
        ++n;
        if (trim(line).empty()) continue;
        auto fields = split_fields(line, ',');
        if (fields.size() != columns)
            throw ParseError(source, n, fmt::format("expected {} fields, got {}", columns, fields.size()));
        rows.emplace_back(n, std::move(fields));
    }
    return rows;
}

}  // namespace

std::vector<SummaryRow> summary_rows(const CampaignResult& result) {
    std::vector<SummaryRow> rows;
    for (const auto& a : result.algorithms) rows.push_back({std::string(to_string(a.params.algorithm)), a.summary});
    return rows;
}

std::vector<TestRow> test_rows(const CampaignResult& result) {
    std::vector<TestRow> rows;
    const std::size_t r = result.reference;
    const std::string ref(to_string(result.algorithms[r].params.algorithm));
    for (std::size_t j = 0; j < result.algorithms.size(); ++j) {
        if (j == r) continue;
        const auto& t = result.pairwise[r][j];
        rows.push_back({ref, std::string(to_string(result.algorithms[j].params.algorithm)), t.statistic, t.p_value,
                        t.n_effective, t.exact, std::string(to_string(marker_for(t)))});
    }
    return rows;
}

std::vector<RankRow> rank_rows(const CampaignResult& result) {
    std::vector<RankRow> rows;
    for (std::size_t j = 0; j < result.algorithms.size(); ++j)
        rows.push_back({std::string(to_string(result.algorithms[j].params.algorithm)), result.friedman.mean_ranks[j],
                        result.friedman.blocks, result.friedman.statistic, result.friedman.p_value});
    std::stable_sort(rows.begin(), rows.end(), [](const RankRow& a, const RankRow& b) { return a.mean_rank < b.mean_rank; });
    return rows;
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
    out << kTraceHeader << '\n';
    for (const auto& t : trace) out << t.evaluation_index << ',' << num(t.best_fitness) << '\n';
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
    out << kSummaryHeader << '\n';
    for (const auto& r : rows)
        out << r.algorithm << ',' << num(r.summary.mean) << ',' << num(r.summary.std_dev) << ','
            << num(r.summary.minimum) << ',' << num(r.summary.median) << ',' << num(r.summary.maximum) << '\n';
}

void write_tests_csv(std::ostream& out, const std::vector<TestRow>& rows) {
    out << kTestsHeader << '\n';
    for (const auto& r : rows)
        out << r.reference << ',' << r.algorithm << ',' << num(r.statistic) << ',' << num(r.p_value) << ','
            << r.n_effective << ',' << (r.exact ? "exact" : "normal") << ',' << r.marker << '\n';
}

void write_ranks_csv(std::ostream& out, const std::vector<RankRow>& rows) {
    out << kRanksHeader << '\n';
    for (const auto& r : rows)
        out << r.algorithm << ',' << num(r.mean_rank) << ',' << r.blocks << ',' << num(r.statistic) << ','
            << num(r.p_value) << '\n';
}

void write_qos_csv(std::ostream& out, const std::vector<QosRow>& rows) {
    out << kQosHeader << '\n';
    for (const auto& r : rows)
        out << r.label << ',' << num(r.config.chunk_size) << ',' << num(r.config.retransmission_time) << ','
            << num(r.config.total_attempts) << ',' << num(r.transmission_time_s) << ',' << num(r.lost_packets) << ','
            << num(r.data_kbytes) << ',' << num(r.throughput_kbps) << ',' << num(r.fitness) << '\n';
}

std::vector<TracePoint> read_trace_csv(std::istream& in) {
    std::vector<TracePoint> out;
    for (const auto& [line, f] : read_rows(in, kTraceHeader, 2, "trace.csv"))
        out.push_back({static_cast<std::size_t>(parse_int_at(f[0], "trace.csv", line)),
                       parse_double_at(f[1], "trace.csv", line)});
    return out;
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
    std::vector<SummaryRow> out;
    const char* src = "summary.csv";
    for (const auto& [line, f] : read_rows(in, kSummaryHeader, 6, src))
        out.push_back({f[0],
                       {parse_double_at(f[1], src, line), parse_double_at(f[2], src, line),
                        parse_double_at(f[3], src, line), parse_double_at(f[4], src, line),
                        parse_double_at(f[5], src, line)}});
    return out;
}

std::vector<TestRow> read_tests_csv(std::istream& in) {
    std::vector<TestRow> out;
    const char* src = "tests.csv";
    for (const auto& [line, f] : read_rows(in, kTestsHeader, 7, src)) {
        if (f[5] != "exact" && f[5] != "normal") throw ParseError(src, line, "exact column must be exact|normal");
        out.push_back({f[0], f[1], parse_double_at(f[2], src, line), parse_double_at(f[3], src, line),
                       static_cast<int>(parse_int_at(f[4], src, line)), f[5] == "exact", f[6]});
    }
    return out;
}

std::vector<RankRow> read_ranks_csv(std::istream& in) {
    std::vector<RankRow> out;
    const char* src = "ranks.csv";
    for (const auto& [line, f] : read_rows(in, kRanksHeader, 5, src))
        out.push_back({f[0], parse_double_at(f[1], src, line), static_cast<int>(parse_int_at(f[2], src, line)),
                       parse_double_at(f[3], src, line), parse_double_at(f[4], src, line)});
    return out;
}

std::vector<QosRow> read_qos_csv(std::istream& in) {
    std::vector<QosRow> out;
    const char* src = "qos.csv";
    for (const auto& [line, f] : read_rows(in, kQosHeader, 9, src)) {
        QosRow r;
        r.label = f[0];
        r.config = {parse_double_at(f[1], src, line), parse_double_at(f[3], src, line), parse_double_at(f[2], src, line)};
        r.transmission_time_s = parse_double_at(f[4], src, line);
        r.lost_packets = parse_double_at(f[5], src, line);
        r.data_kbytes = parse_double_at(f[6], src, line);
        r.throughput_kbps = parse_double_at(f[7], src, line);
        r.fitness = parse_double_at(f[8], src, line);
        out.push_back(std::move(r));
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
    out << content;
    if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

}  // namespace vdtp::harness
