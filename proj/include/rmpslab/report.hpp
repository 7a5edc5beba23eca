#pragma once
// Report serialization: JSON report, per-sample CSV, and a gnuplot script for
// sweep-style experiments. Doubles are written shortest-round-trip.

#include <string>

#include <json.hpp>

#include "rmpslab/experiments.hpp"

namespace rmpslab {

nlohmann::json report_to_json(const ExperimentReport& report);

// <output_dir>/report.json
std::string write_report_json(const ExperimentReport& report);

// <output_dir>/samples.csv with header
// sample_index,seed_index,quantity,raw_value,normalized_value
std::string write_samples_csv(const ExperimentReport& report);

// Gnuplot script: sweep reports (extensivity) plot the swept quantity with
// 3-sigma error bars against the exact/bound curves; single-point reports
// plot their records as labeled points with reference lines. A report with
// no records throws std::invalid_argument.
std::string render_plot_script(const ExperimentReport& report);
std::string write_plot_script(const ExperimentReport& report);

}  // namespace rmpslab
