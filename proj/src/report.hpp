#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "measurement.hpp"
#include "metrics.hpp"
#include "scenario.hpp"

namespace ifm::scenario {

struct OutcomeRow {
  measurement::Outcome outcome;
  std::optional<metrics::MetricReport> metric;
  // Fidelities against the scenario's report_targets, in declaration order.
  std::vector<std::pair<std::string, double>> target_fidelities;
};

struct Report {
  Scenario scenario;
  std::string convention;
  std::vector<std::string> warnings;
  measurement::OutcomeBudget budget;
  std::vector<OutcomeRow> rows;
};

enum class ReportFormat { table, machine };

// "table" (fixed-width, for humans) or "machine" (JSON, deterministic,
// full double precision).
ReportFormat parse_format(const std::string& name);

std::string render_report(const Report& report, ReportFormat format);

}  // namespace ifm::scenario
