#pragma once

#include <string>

#include "vdtp/fitness.hpp"
#include "vdtp/optimizer.hpp"

namespace vdtp::harness {

/// JSON form of a run, including its trace. Doubles are stored as shortest
/// round-trip strings so non-finite values survive.
std::string run_record_to_json(const RunRecord& record, const std::string& fingerprint);

/// Returns false if `text` is not a valid record or its fingerprint differs.
bool run_record_from_json(const std::string& text, const std::string& fingerprint, RunRecord& out);

/// Best configuration of a run together with its re-evaluated fitness report.
std::string best_config_json(const RunRecord& record, const FitnessReport& report);

}  // namespace vdtp::harness
