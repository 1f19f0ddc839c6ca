#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "vdtp/fitness.hpp"
#include "vdtp/harness/benchmarks.hpp"
#include "vdtp/harness/commands.hpp"
#include "vdtp/optimizer.hpp"
#include "vdtp/scenario.hpp"
#include "vdtp/simulator.hpp"
#include "vdtp/stats.hpp"

namespace py = pybind11;
using namespace vdtp;

namespace {

Objective wrap_objective(py::function f) {
    return [f = std::move(f)](std::span<const double> x, std::size_t) {
        py::gil_scoped_acquire gil;
        return f(std::vector<double>(x.begin(), x.end())).cast<double>();
    };
}

harness::ExperimentConfig experiment(const std::string& scenario, std::uint64_t seed, std::size_t budget, int runs,
                                     int replications, const std::string& out) {
    harness::GlobalOptions g;
    g.scenario = scenario;
    g.seed = seed;
    g.budget = budget;
    g.runs = runs;
    g.replications = replications;
    g.out = out;
    return harness::resolve_options(g);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "VDTP parameter tuning: simulator, metaheuristics and statistics";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::enum_<Algorithm>(m, "Algorithm")
        .value("PSO", Algorithm::PSO)
        .value("DE", Algorithm::DE)
        .value("GA", Algorithm::GA)
        .value("ES", Algorithm::ES)
        .value("SA", Algorithm::SA);
    m.def("parse_algorithm", &parse_algorithm);

    py::class_<VdtpConfig>(m, "VdtpConfig")
        .def(py::init([](double chunk, double attempts, double timeout) { return VdtpConfig{chunk, attempts, timeout}; }),
             py::arg("chunk_size"), py::arg("total_attempts"), py::arg("retransmission_time"))
        .def_readwrite("chunk_size", &VdtpConfig::chunk_size)
        .def_readwrite("total_attempts", &VdtpConfig::total_attempts)
        .def_readwrite("retransmission_time", &VdtpConfig::retransmission_time)
        .def("__repr__", [](const VdtpConfig& c) {
            return "VdtpConfig(" + std::to_string(c.chunk_size) + ", " + std::to_string(c.total_attempts) + ", " +
                   std::to_string(c.retransmission_time) + ")";
        });

    py::class_<Bounds>(m, "Bounds")
        .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("lower"), py::arg("upper"))
        .def_static("vdtp", &Bounds::vdtp)
        .def_static("cube", &Bounds::cube, py::arg("dims"), py::arg("lower"), py::arg("upper"))
        .def_property_readonly("lower", &Bounds::lower)
        .def_property_readonly("upper", &Bounds::upper)
        .def_property_readonly("dims", &Bounds::dims);
    m.def("bound_violations", &bound_violations);

    py::class_<OptimizerParams>(m, "OptimizerParams")
        .def_static("defaults", &OptimizerParams::defaults)
        .def_readwrite("algorithm", &OptimizerParams::algorithm)
        .def_readwrite("population_size", &OptimizerParams::population_size)
        .def_readwrite("generations", &OptimizerParams::generations)
        .def("set", [](OptimizerParams& p, const std::string& k, const std::string& v) { p.set(k, v); })
        .def("validate", &OptimizerParams::validate)
        .def("describe", &OptimizerParams::describe);

    py::class_<TracePoint>(m, "TracePoint")
        .def_readonly("evaluation_index", &TracePoint::evaluation_index)
        .def_readonly("best_fitness", &TracePoint::best_fitness);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("algorithm", &RunRecord::algorithm)
        .def_readonly("best_position", &RunRecord::best_position)
        .def_readonly("best_fitness", &RunRecord::best_fitness)
        .def_readonly("best_evaluation_index", &RunRecord::best_evaluation_index)
        .def_readonly("trace", &RunRecord::trace)
        .def_readonly("evaluations_used", &RunRecord::evaluations_used)
        .def_readonly("generations_completed", &RunRecord::generations_completed)
        .def_readonly("seed", &RunRecord::seed)
        .def("best_config", &RunRecord::best_config);

    m.def(
        "run",
        [](const OptimizerParams& p, py::function objective, const Bounds& bounds, std::uint64_t seed,
           std::size_t max_evaluations) { return run(p, wrap_objective(std::move(objective)), bounds, seed, max_evaluations); },
        py::arg("params"), py::arg("objective"), py::arg("bounds"), py::arg("seed"), py::arg("max_evaluations") = 1000,
        "Minimize a Python callable taking a list of coordinates.");
    m.def(
        "run_benchmark",
        [](const OptimizerParams& p, const std::string& function, int dims, std::uint64_t seed,
           std::size_t max_evaluations) {
            return run(p, harness::benchmark_objective(function),
                       Bounds::cube(static_cast<std::size_t>(dims), -5.0, 5.0), seed, max_evaluations);
        },
        py::arg("params"), py::arg("function"), py::arg("dims"), py::arg("seed"), py::arg("max_evaluations") = 1000);
    m.def("sphere", [](const std::vector<double>& x) { return harness::sphere(x); });
    m.def("rosenbrock", [](const std::vector<double>& x) { return harness::rosenbrock(x); });
    m.def("rastrigin", [](const std::vector<double>& x) { return harness::rastrigin(x); });

    py::class_<Scenario>(m, "Scenario")
        .def_readwrite("name", &Scenario::name)
        .def_readwrite("bandwidth_bps", &Scenario::bandwidth_bps)
        .def_readwrite("header_bytes", &Scenario::header_bytes)
        .def_readwrite("propagation_delay_s", &Scenario::propagation_delay_s)
        .def_readwrite("base_loss_prob", &Scenario::base_loss_prob)
        .def_readwrite("link_up_mean_s", &Scenario::link_up_mean_s)
        .def_readwrite("link_down_mean_s", &Scenario::link_down_mean_s)
        .def_readwrite("sessions", &Scenario::sessions)
        .def_readwrite("file_size_bytes", &Scenario::file_size_bytes)
        .def_readwrite("density_scale", &Scenario::density_scale)
        .def_readwrite("reference_config", &Scenario::reference_config)
        .def("__str__", &format_scenario);
    m.def("scenario", &resolve_scenario, py::arg("name_or_path"));
    m.def("preset_names", &preset_names);

    py::class_<TransferOutcome>(m, "TransferOutcome")
        .def_readonly("transmission_time_s", &TransferOutcome::transmission_time_s)
        .def_readonly("lost_packets", &TransferOutcome::lost_packets)
        .def_readonly("data_transferred_kbytes", &TransferOutcome::data_transferred_kbytes)
        .def_readonly("completed_sessions", &TransferOutcome::completed_sessions)
        .def_readonly("refused_sessions", &TransferOutcome::refused_sessions)
        .def("data_per_session_kbytes", &TransferOutcome::data_per_session_kbytes);

    py::class_<FitnessReport>(m, "FitnessReport")
        .def_readonly("fitness", &FitnessReport::fitness)
        .def_readonly("replications", &FitnessReport::replications)
        .def_readonly("config", &FitnessReport::config)
        .def_readonly("n", &FitnessReport::n);

    m.def("fitness_term", &fitness_term, py::arg("transmission_time_s"), py::arg("lost_packets"),
          py::arg("data_kbytes"));
    m.def("evaluate", &evaluate, py::arg("config"), py::arg("scenario"), py::arg("n") = kDefaultReplications,
          py::arg("seed") = 1);
    m.def("n_chunks", &n_chunks);
    m.def("lossless_session_time_s", [](const VdtpConfig& c, const Scenario& s) {
        return lossless_session_time_s(quantize_for_protocol(c), s);
    });

    py::module_ st = m.def_submodule("stats", "Summary statistics and nonparametric tests");
    py::class_<stats::SampleSummary>(st, "SampleSummary")
        .def_readonly("mean", &stats::SampleSummary::mean)
        .def_readonly("std_dev", &stats::SampleSummary::std_dev)
        .def_readonly("minimum", &stats::SampleSummary::minimum)
        .def_readonly("median", &stats::SampleSummary::median)
        .def_readonly("maximum", &stats::SampleSummary::maximum);
    py::class_<stats::PairedTestResult>(st, "PairedTestResult")
        .def_readonly("statistic", &stats::PairedTestResult::statistic)
        .def_readonly("p_value", &stats::PairedTestResult::p_value)
        .def_readonly("n_effective", &stats::PairedTestResult::n_effective)
        .def_readonly("significant_at_05", &stats::PairedTestResult::significant_at_05)
        .def_readonly("exact", &stats::PairedTestResult::exact);
    py::class_<stats::FriedmanTable>(st, "FriedmanTable")
        .def_readonly("mean_ranks", &stats::FriedmanTable::mean_ranks)
        .def_readonly("blocks", &stats::FriedmanTable::blocks)
        .def_readonly("statistic", &stats::FriedmanTable::statistic)
        .def_readonly("p_value", &stats::FriedmanTable::p_value);
    st.def("summarize", [](const std::vector<double>& x) { return stats::summarize(x); });
    st.def("wilcoxon_signed_rank",
           [](const std::vector<double>& a, const std::vector<double>& b) { return stats::wilcoxon_signed_rank(a, b); });
    st.def("friedman_ranks", &stats::friedman_ranks, py::arg("results"), py::arg("iman_davenport") = false);

    m.def(
        "compare",
        [](const std::string& scenario, std::uint64_t seed, std::size_t budget, int runs, int replications,
           const std::string& out) {
            std::ostringstream log;
            return harness::cmd_compare(experiment(scenario, seed, budget, runs, replications, out), log).report;
        },
        py::arg("scenario"), py::arg("seed"), py::arg("budget"), py::arg("runs"), py::arg("replications"),
        py::arg("out"), "Run a campaign of all five algorithms; returns the text report.");
}
