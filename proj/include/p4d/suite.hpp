#pragma once

// The verification suite: every check grouped by suite name, run
// concurrently, reported in check-name order.

#include "p4d/report.hpp"
#include "p4d/serialize.hpp"
#include "p4d/systems.hpp"

#include <optional>
#include <string>
#include <vector>

namespace p4d {

std::string version();

struct SuiteConfig {
    std::vector<std::string> suites;  // empty or {"all"} selects every suite
    std::optional<Family> family;
    CheckMode mode = CheckMode::random_mode(0, 8);
    int jobs = 1;
};

std::vector<std::string> suite_names();

/// Throws Error on an unknown suite name or a non-positive sample count.
void validate(const SuiteConfig& config);

/// Jobs from P4D_JOBS when set and positive, else the hardware concurrency.
int default_jobs();

std::vector<Report> run_suite(const SuiteConfig& config);

/// {version, config, checks}. Timing fields are omitted when include_timing
/// is false, which makes equal configurations produce equal documents.
Json report_document(const SuiteConfig& config, const std::vector<Report>& reports, bool include_timing = true);
std::string human_report(const std::vector<Report>& reports);

}  // namespace p4d
