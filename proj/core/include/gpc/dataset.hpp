// Dataset storage and bootstrap-friendly views. The covariate matrix always
// carries a leading intercept column; feature scales hold the sample standard
// deviation of each covariate column (scale 1 for the intercept), which the
// SVM prior needs.

#pragma once

#include <span>
#include <string>
#include <vector>

namespace gpc {

struct Dataset {
  int n = 0;  // rows
  int k = 0;  // columns of x, intercept included
  std::vector<double> y;             // length n; +/-1 when classification
  std::vector<double> x;             // n x k row-major, x[i*k] == 1
  std::vector<double> feature_scale; // length k, [0] == 1
  bool classification = false;
  std::vector<std::string> covariate_names;  // k-1 entries, intercept excluded

  // Builds a dataset from raw covariates (without the intercept column),
  // synthesizing the intercept and computing feature scales. Validates the
  // invariants: finite entries, n >= k, +/-1 responses for classification.
  static Dataset build(std::vector<double> responses,
                       const std::vector<double>& covariates, int n,
                       int num_covariates, bool classification,
                       std::vector<std::string> names = {});

  double xat(int i, int j) const { return x[i * k + j]; }
  std::span<const double> row(int i) const {
    return std::span<const double>(x.data() + static_cast<std::size_t>(i) * k,
                                   static_cast<std::size_t>(k));
  }
};

// A with-replacement resample of a dataset, stored as row indices.
// Length always equals the base sample size.
class DatasetView {
 public:
  DatasetView(const Dataset& base, std::vector<int> indices);
  static DatasetView identity(const Dataset& base);

  const Dataset& base() const { return *base_; }
  int rows() const { return static_cast<int>(indices_.size()); }
  int row_index(int i) const { return indices_[i]; }
  double y(int i) const { return base_->y[indices_[i]]; }
  double x(int i, int j) const { return base_->xat(indices_[i], j); }
  std::span<const double> row(int i) const { return base_->row(indices_[i]); }
  const std::vector<int>& indices() const { return indices_; }

 private:
  const Dataset* base_;
  std::vector<int> indices_;
};

// Generic dataset CSV: header row, one response column named "y", every
// other column a numeric covariate. The intercept is synthesized on load and
// never stored. Classification files carry -1/+1 responses.
Dataset load_dataset_csv(const std::string& path);
void write_dataset_csv(const Dataset& data, const std::string& path);

}  // namespace gpc
