#pragma once
// Experiment drivers: each one draws random matrix-product states, measures a
// handful of scalar quantities per draw, and compares the ensemble means
// against exact transfer-matrix values and/or analytic bounds.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "rmpslab/montecarlo.hpp"
#include "rmpslab/mps.hpp"

namespace rmpslab {

enum class ExperimentKind {
  Equilibration,      // effective dimension + infinite-time fluctuation under GUE dynamics
  NormConcentration,  // tail probability of |<psi|psi> - 1|
  Extensivity,        // disconnected-cut purity decay in chain length
  MaxEntropy,         // connected-cut purity vs the subsystem-entropy ceiling
  LocalObs,           // second moment of a traceless local observable
  FramePotential,     // pair-overlap fourth moment vs the 2-design floor
};

std::string experiment_kind_name(ExperimentKind kind);
ExperimentKind experiment_kind_from_name(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::NormConcentration;
  int d = 2;
  int n = 4;
  int bond = 2;  // D
  std::optional<int> k;        // extensivity: cut spacing
  std::optional<int> l;        // max-entropy: contiguous block length
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  std::optional<double> epsilon;  // norm-concentration tail threshold
  std::string observable = "pauli-z";
  std::optional<std::string> observable_file;
  BoundaryKind boundary = BoundaryKind::Periodic;
  std::string output_dir = ".";

  void validate() const;  // throws std::invalid_argument with the offending field named
};

struct QuantityRecord {
  std::string name;
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::optional<double> exact;
  std::optional<double> bound;
  bool pass = true;  // |mean-exact| <= 3*stderr and mean <= bound + 3*stderr, where present
};

// CSV row mapping: one logical quantity carries a raw column and (optionally)
// a normalized column; normalized_col < 0 means the raw value is repeated.
struct SampleQuantity {
  std::string name;
  int raw_col = 0;
  int normalized_col = -1;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::uint64_t seed = 0;
  double wallclock_seconds = 0.0;
  std::vector<QuantityRecord> records;
  nlohmann::json extras;     // experiment-specific scalars (thresholds, slopes, ...)
  SampleMatrix samples;      // per-sample raw values backing the records
  std::vector<std::string> sample_columns;   // column names for samples
  std::vector<SampleQuantity> csv_quantities;  // logical quantities for the CSV
};

bool all_checks_pass(const ExperimentReport& report);

// Observable resolution: "pauli-z" embeds diag(1,-1,0,...) in dimension d;
// otherwise observable_file must point at a JSON matrix.
Eigen::MatrixXcd resolve_observable(const ExperimentConfig& cfg);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace rmpslab
