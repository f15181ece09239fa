// Experiment harness: synthetic heteroskedastic regression data, the
// South African Heart Disease ingestion, and paired calibration runs with
// timing and truth-coverage accounting.

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gpc/calibrate.hpp"
#include "gpc/dataset.hpp"

namespace gpc {

struct SynthConfig {
  int n = 100;
  std::array<double, 4> beta_true{1.0, 1.0, 2.0, -1.0};
  std::array<double, 3> variance_levels{0.05, 0.25, 1.0};
  std::array<double, 2> cut_points{0.05, 0.95};
  std::uint64_t seed = 0;
};

// y_i = beta'x_i + eps_i with x_1..x_3 iid standard normal and the error
// variance stepping through variance_levels as x_1 crosses the realized
// cut-point percentiles of the x_1 sample.
Dataset gen_linreg_data(const SynthConfig& cfg);

inline const std::vector<std::string> kSaheartFeatures = {
    "sbp", "tobacco", "ldl", "famhist", "obesity", "alcohol", "age"};

// Loads the South African Heart Disease CSV (462 rows): response column
// "chd" coded to -1/+1, famhist mapped Present -> 1 / Absent -> 0, and the
// seven default covariates above plus the intercept giving K = 8.
Dataset load_saheart(const std::string& path,
                     const std::vector<std::string>& feature_columns =
                         kSaheartFeatures);

enum class Method { sa, wp };
const char* method_name(Method m);

enum class ModelKind { linreg, svm };

struct ExperimentConfig {
  ModelKind model = ModelKind::linreg;
  int runs = 50;       // synthetic datasets (linreg) or reruns (svm)
  int bootstrap_b = 100;
  SynthConfig synth;   // linreg only
  std::string data_path;  // svm only
  CalibConfig calib;
  std::uint64_t master_seed = 20240904;
  std::vector<Method> methods{Method::sa, Method::wp};
};

struct ExperimentRow {
  int dataset_id = 0;
  Method method = Method::sa;
  double eta_hat = 0.0;
  bool converged = false;
  int outer_iterations = 0;
  double wall_ms = 0.0;
  int truth_covered = -1;  // -1 when no ground truth exists (svm)
  std::uint64_t seed = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;

  // CSV with header dataset_id,method,eta_hat,converged,outer_iterations,
  // wall_ms,truth_covered,seed. wall_ms is the only nondeterministic column.
  void write_csv(std::ostream& out) const;

  // Median and interquartile range of wall time and iterations per method,
  // plus truth-coverage fraction where defined.
  nlohmann::json summary_json() const;
};

// Runs every configured method on each dataset with a shared bootstrap plan
// and shared replicate streams, so method comparisons are seed-matched.
ExperimentReport run_paired_experiment(const ExperimentConfig& cfg);

}  // namespace gpc
