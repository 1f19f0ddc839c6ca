#include "vdtp/harness/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <fmt/format.h>

#include "vdtp/harness/config.hpp"
#include "vdtp/harness/csv.hpp"
#include "vdtp/harness/records.hpp"
#include "vdtp/kv_text.hpp"

namespace vdtp::harness {

namespace {

std::string fingerprint(const CampaignPlan& plan, const OptimizerParams& p, int run) {
    std::string s = fmt::format("{}|run={}|seed={}|budget={}|ctx={}", to_string(p.algorithm), run, plan.master_seed,
                                plan.max_evaluations, plan.fingerprint_context);
    for (const auto& [k, v] : p.describe()) s += fmt::format("|{}={}", k, v);
    for (std::size_t i = 0; i < plan.bounds.dims(); ++i)
        s += fmt::format("|b{}={},{}", i, format_double(plan.bounds.lower()[i]), format_double(plan.bounds.upper()[i]));
    return s;
}

std::filesystem::path checkpoint_path(const std::filesystem::path& dir, Algorithm a, int run) {
    return dir / fmt::format("{}_{}.json", to_string(a), run);
}

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::vector<double> AlgorithmResult::best_fitnesses() const {
    std::vector<double> out;
    out.reserve(runs.size());
    for (const auto& r : runs) out.push_back(r.best_fitness);
    return out;
}

std::size_t AlgorithmResult::median_run() const {
    std::vector<std::size_t> idx(runs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return runs[a].best_fitness < runs[b].best_fitness; });
    return idx[(idx.size() - 1) / 2];
}

CampaignResult run_campaign(const CampaignPlan& plan, const ObjectiveFactory& factory) {
    if (plan.algorithms.empty()) throw ConfigError("campaign needs at least one algorithm");
    if (plan.runs < 1) throw ConfigError("runs must be >= 1");
    if (plan.workers < 1) throw ConfigError("workers must be >= 1");
    for (const auto& p : plan.algorithms) p.validate(plan.max_evaluations);
    if (plan.checkpoint_dir) std::filesystem::create_directories(*plan.checkpoint_dir);

    const std::size_t n_alg = plan.algorithms.size();
    const auto runs = static_cast<std::size_t>(plan.runs);
    std::vector<std::vector<RunRecord>> records(n_alg, std::vector<RunRecord>(runs));

    const std::size_t tasks = n_alg * runs;
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= tasks) return;
            {
                std::lock_guard lock(failure_mutex);
                if (failure) return;
            }
            // Run-major order keeps all algorithms progressing together.
            const std::size_t a = t % n_alg;
            const int run = static_cast<int>(t / n_alg) + 1;
            const OptimizerParams& params = plan.algorithms[a];
            try {
                const std::string fp = fingerprint(plan, params, run);
                std::optional<std::filesystem::path> ck;
                if (plan.checkpoint_dir) {
                    ck = checkpoint_path(*plan.checkpoint_dir, params.algorithm, run);
                    RunRecord cached;
                    if (std::filesystem::exists(*ck) && run_record_from_json(slurp(*ck), fp, cached)) {
                        records[a][static_cast<std::size_t>(run - 1)] = std::move(cached);
                        continue;
                    }
                }
                const std::uint64_t seed = run_seed(plan.master_seed, run);
                RunRecord rec = vdtp::run(params, factory(seed), plan.bounds, seed, plan.max_evaluations);
                if (ck) {
                    const auto tmp = std::filesystem::path(ck->string() + ".tmp");
                    write_text_file(tmp, run_record_to_json(rec, fp));
                    std::filesystem::rename(tmp, *ck);
                }
                records[a][static_cast<std::size_t>(run - 1)] = std::move(rec);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };

    const int n_threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(plan.workers), tasks));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    CampaignResult result;
    for (std::size_t a = 0; a < n_alg; ++a) {
        AlgorithmResult ar;
        ar.params = plan.algorithms[a];
        ar.runs = std::move(records[a]);
        const auto best = ar.best_fitnesses();
        ar.summary = stats::summarize(best);
        for (const auto& r : ar.runs) {
            ar.mean_time_to_best_s += r.time_to_best_s;
            ar.mean_wall_time_s += r.wall_time_s;
        }
        ar.mean_time_to_best_s /= static_cast<double>(runs);
        ar.mean_wall_time_s /= static_cast<double>(runs);
        result.algorithms.push_back(std::move(ar));
    }

    result.pairwise.assign(n_alg, std::vector<stats::PairedTestResult>(n_alg));
    if (runs >= 2) {
        for (std::size_t i = 0; i < n_alg; ++i)
            for (std::size_t j = 0; j < n_alg; ++j)
                result.pairwise[i][j] = stats::wilcoxon_signed_rank(result.algorithms[i].best_fitnesses(),
                                                                    result.algorithms[j].best_fitnesses());
    }

    std::vector<std::vector<double>> blocks(runs, std::vector<double>(n_alg));
    for (std::size_t r = 0; r < runs; ++r)
        for (std::size_t a = 0; a < n_alg; ++a) blocks[r][a] = result.algorithms[a].runs[r].best_fitness;
    if (runs >= 2 && n_alg >= 2) {
        result.friedman = stats::friedman_ranks(blocks);
    } else {
        result.friedman.blocks = static_cast<int>(runs);
        result.friedman.mean_ranks.assign(n_alg, 0.0);
        for (const auto& b : blocks) {
            const auto ranks = stats::average_ranks(b);
            for (std::size_t a = 0; a < n_alg; ++a) result.friedman.mean_ranks[a] += ranks[a] / static_cast<double>(runs);
        }
    }

    for (std::size_t a = 0; a < n_alg; ++a)
        if (plan.algorithms[a].algorithm == Algorithm::PSO) {
            result.reference = a;
            break;
        }
    return result;
}

std::string_view to_string(Marker m) {
    switch (m) {
        case Marker::BetterSignificant: return "better*";
        case Marker::Better: return "better";
        case Marker::Equal: return "equal";
        case Marker::Worse: return "worse";
        case Marker::WorseSignificant: return "worse*";
    }
    return "equal";
}

Marker marker_for(const stats::PairedTestResult& t) {
    if (t.n_effective == 0) return Marker::Equal;
    const double expected = t.n_effective * (t.n_effective + 1) / 4.0;
    if (t.statistic == expected) return Marker::Equal;
    // W+ sums ranks of positive (reference - other) differences; lower fitness wins.
    const bool better = t.statistic < expected;
    if (better) return t.significant_at_05 ? Marker::BetterSignificant : Marker::Better;
    return t.significant_at_05 ? Marker::WorseSignificant : Marker::Worse;
}

QosRow qos_row(std::string label, const VdtpConfig& config, const Scenario& scenario, int n, std::uint64_t seed) {
    const FitnessReport report = evaluate(config, scenario, n, seed);
    QosRow row;
    row.label = std::move(label);
    row.config = config;
    row.fitness = report.fitness;
    for (const auto& o : report.replications) {
        row.transmission_time_s += o.transmission_time_s;
        row.lost_packets += o.lost_packets;
        row.data_kbytes += o.data_per_session_kbytes();
        row.throughput_kbps += effective_throughput(o);
    }
    const double k = static_cast<double>(report.replications.size());
    row.transmission_time_s /= k;
    row.lost_packets /= k;
    row.data_kbytes /= k;
    row.throughput_kbps /= k;
    return row;
}

std::vector<QosRow> qos_table(const CampaignResult& result, const Scenario& scenario, int n, std::uint64_t seed) {
    std::vector<QosRow> rows;
    for (const auto& a : result.algorithms) {
        const RunRecord& med = a.runs[a.median_run()];
        rows.push_back(qos_row(std::string(to_string(a.params.algorithm)), med.best_config(), scenario, n, seed));
    }
    if (scenario.reference_config) rows.push_back(qos_row("Reference", *scenario.reference_config, scenario, n, seed));
    return rows;
}

void write_campaign_outputs(const CampaignResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& a : result.algorithms)
        for (std::size_t r = 0; r < a.runs.size(); ++r) {
            std::ostringstream ss;
            write_trace_csv(ss, a.runs[r].trace);
            write_text_file(dir / fmt::format("trace_{}_{}.csv", to_string(a.params.algorithm), r + 1), ss.str());
        }
    {
        std::ostringstream ss;
        write_summary_csv(ss, summary_rows(result));
        write_text_file(dir / "summary.csv", ss.str());
    }
    {
        std::ostringstream ss;
        write_tests_csv(ss, test_rows(result));
        write_text_file(dir / "tests.csv", ss.str());
    }
    {
        std::ostringstream ss;
        write_ranks_csv(ss, rank_rows(result));
        write_text_file(dir / "ranks.csv", ss.str());
    }
    {
        std::ostringstream ss;
        ss << "algorithm,mean_time_to_best_s,mean_wall_time_s\n";
        for (const auto& a : result.algorithms)
            ss << to_string(a.params.algorithm) << ',' << format_double(a.mean_time_to_best_s) << ','
               << format_double(a.mean_wall_time_s) << '\n';
        write_text_file(dir / "timing.csv", ss.str());
    }
}

std::string render_report(const CampaignResult& result, const std::vector<QosRow>& qos) {
    std::string out;
    out += "Best fitness over runs\n";
    out += fmt::format("{:<6} {:>14} {:>14} {:>14} {:>14} {:>14}\n", "alg", "mean", "std_dev", "min", "median", "max");
    for (const auto& row : summary_rows(result))
        out += fmt::format("{:<6} {:>14.6g} {:>14.6g} {:>14.6g} {:>14.6g} {:>14.6g}\n", row.algorithm,
                           row.summary.mean, row.summary.std_dev, row.summary.minimum, row.summary.median,
                           row.summary.maximum);

    const auto tests = test_rows(result);
    if (!tests.empty()) {
        out += fmt::format("\nSigned-rank tests, {} against the rest (* = p < 0.05)\n",
                           to_string(result.algorithms[result.reference].params.algorithm));
        out += fmt::format("{:<6} {:>10} {:>12} {:>6} {:>8}  {}\n", "alg", "W+", "p_value", "n", "method", "marker");
        for (const auto& t : tests)
            out += fmt::format("{:<6} {:>10.4g} {:>12.6g} {:>6} {:>8}  {}\n", t.algorithm, t.statistic, t.p_value,
                               t.n_effective, t.exact ? "exact" : "normal", t.marker);
    }

    out += fmt::format("\nFriedman ranking over {} runs (chi2 = {:.6g}, p = {:.6g})\n", result.friedman.blocks,
                       result.friedman.statistic, result.friedman.p_value);
    out += fmt::format("{:<6} {:>10}\n", "alg", "mean_rank");
    for (const auto& r : rank_rows(result)) out += fmt::format("{:<6} {:>10.4f}\n", r.algorithm, r.mean_rank);

    out += "\nMean time per run (s)\n";
    out += fmt::format("{:<6} {:>12} {:>12}\n", "alg", "T_best", "T_run");
    for (const auto& a : result.algorithms)
        out += fmt::format("{:<6} {:>12.4f} {:>12.4f}\n", to_string(a.params.algorithm), a.mean_time_to_best_s,
                           a.mean_wall_time_s);

    if (!qos.empty()) {
        out += "\nQoS of median-run best configurations\n";
        out += fmt::format("{:<10} {:>10} {:>8} {:>9} {:>10} {:>10} {:>10} {:>12} {:>10}\n", "config", "chunk",
                           "timeout", "attempts", "time_s", "lost", "data_kB", "thr_kB/s", "fitness");
        for (const auto& q : qos)
            out += fmt::format("{:<10} {:>10.0f} {:>8.3f} {:>9.0f} {:>10.4f} {:>10.4f} {:>10.2f} {:>12.2f} {:>10.5f}\n",
                               q.label, q.config.chunk_size, q.config.retransmission_time, q.config.total_attempts,
                               q.transmission_time_s, q.lost_packets, q.data_kbytes, q.throughput_kbps, q.fitness);
    }
    return out;
}

}  // namespace vdtp::harness
