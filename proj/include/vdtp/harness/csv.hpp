#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "vdtp/harness/campaign.hpp"
#include "vdtp/optimizer.hpp"
#include "vdtp/stats.hpp"

namespace vdtp::harness {

// Every table is written with a header row and shortest round-trip decimal
// formatting, so reading a file back reproduces the values exactly.

struct SummaryRow {
    std::string algorithm;
    stats::SampleSummary summary;
    friend bool operator==(const SummaryRow&, const SummaryRow&) = default;
};

struct TestRow {
    std::string reference;
    std::string algorithm;
    double statistic = 0.0;
    double p_value = 1.0;
    int n_effective = 0;
    bool exact = false;
    std::string marker;
    friend bool operator==(const TestRow&, const TestRow&) = default;
};

struct RankRow {
    std::string algorithm;
    double mean_rank = 0.0;
    int blocks = 0;
    double statistic = 0.0;
    double p_value = 1.0;
    friend bool operator==(const RankRow&, const RankRow&) = default;
};

std::vector<SummaryRow> summary_rows(const CampaignResult& result);
std::vector<TestRow> test_rows(const CampaignResult& result);
/// Sorted by mean rank, best first.
std::vector<RankRow> rank_rows(const CampaignResult& result);

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
void write_tests_csv(std::ostream& out, const std::vector<TestRow>& rows);
void write_ranks_csv(std::ostream& out, const std::vector<RankRow>& rows);
void write_qos_csv(std::ostream& out, const std::vector<QosRow>& rows);

/// Readers throw ParseError naming the offending line.
std::vector<TracePoint> read_trace_csv(std::istream& in);
std::vector<SummaryRow> read_summary_csv(std::istream& in);
std::vector<TestRow> read_tests_csv(std::istream& in);
std::vector<RankRow> read_ranks_csv(std::istream& in);
std::vector<QosRow> read_qos_csv(std::istream& in);

/// Writes `content` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace vdtp::harness
