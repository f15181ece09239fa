#include "gpc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gpc {

namespace {

double sample_std(std::span<const double> column) {
  std::size_t n = column.size();
  double mean = std::accumulate(column.begin(), column.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : column) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1));
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // Strip surrounding quotes and whitespace/CR.
    while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
      field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"')
      field = field.substr(1, field.size() - 2);
    fields.push_back(field);
  }
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

Dataset Dataset::build(std::vector<double> responses,
                       const std::vector<double>& covariates, int n,
                       int num_covariates, bool classification,
                       std::vector<std::string> names) {
  if (n < 1 || num_covariates < 0)
    throw std::invalid_argument("Dataset: need n >= 1 and covariates >= 0");
  int k = num_covariates + 1;
  if (n < k)
    throw std::invalid_argument("Dataset: need at least as many rows as columns");
  if (static_cast<int>(responses.size()) != n ||
      static_cast<int>(covariates.size()) != n * num_covariates)
    throw std::invalid_argument("Dataset: shape mismatch");

  Dataset d;
  d.n = n;
  d.k = k;
  d.classification = classification;
  d.y = std::move(responses);
  if (names.empty()) {
    for (int j = 1; j < k; ++j) names.push_back("x" + std::to_string(j));
  }
  if (static_cast<int>(names.size()) != num_covariates)
    throw std::invalid_argument("Dataset: covariate name count mismatch");
  d.covariate_names = std::move(names);

  d.x.resize(static_cast<std::size_t>(n) * k);
  for (int i = 0; i < n; ++i) {
    d.x[static_cast<std::size_t>(i) * k] = 1.0;
    for (int j = 0; j < num_covariates; ++j)
      d.x[static_cast<std::size_t>(i) * k + 1 + j] =
          covariates[static_cast<std::size_t>(i) * num_covariates + j];
  }

  for (double v : d.y)
    if (!std::isfinite(v)) throw std::invalid_argument("Dataset: NaN/inf response");
  for (double v : d.x)
    if (!std::isfinite(v)) throw std::invalid_argument("Dataset: NaN/inf covariate");
  if (classification) {
    for (double v : d.y)
      if (v != 1.0 && v != -1.0)
        throw std::invalid_argument(
            "Dataset: classification responses must be -1 or +1");
  }

  d.feature_scale.assign(k, 1.0);
  for (int j = 1; j < k; ++j) {
    std::vector<double> col(n);
    for (int i = 0; i < n; ++i) col[i] = d.xat(i, j);
    double s = sample_std(col);
    if (!(s > 0.0))
      throw std::invalid_argument("Dataset: covariate column " +
                                  d.covariate_names[j - 1] +
                                  " has zero variance");
    d.feature_scale[j] = s;
  }
  return d;
}

DatasetView::DatasetView(const Dataset& base, std::vector<int> indices)
    : base_(&base), indices_(std::move(indices)) {
  if (static_cast<int>(indices_.size()) != base.n)
    throw std::invalid_argument(
        "DatasetView: index vector length must equal the sample size");
  for (int idx : indices_)
    if (idx < 0 || idx >= base.n)
      throw std::invalid_argument("DatasetView: row index out of range");
}

DatasetView DatasetView::identity(const Dataset& base) {
  std::vector<int> idx(base.n);
  std::iota(idx.begin(), idx.end(), 0);
  return DatasetView(base, std::move(idx));
}

Dataset load_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("dataset file is empty: " + path);
  auto header = split_csv_line(line);
  int y_col = -1;
  std::vector<std::string> names;
  std::vector<int> cov_cols;
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == "y") {
      y_col = static_cast<int>(j);
    } else {
      names.push_back(header[j]);
      cov_cols.push_back(static_cast<int>(j));
    }
  }
  if (y_col < 0)
    throw std::runtime_error("dataset file " + path +
                             " has no response column named 'y'");

  std::vector<double> responses;
  std::vector<double> covariates;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw std::runtime_error("dataset file " + path + " row " +
                               std::to_string(row) + ": expected " +
                               std::to_string(header.size()) + " fields, got " +
                               std::to_string(fields.size()));
    try {
      responses.push_back(std::stod(fields[y_col]));
      for (int c : cov_cols) covariates.push_back(std::stod(fields[c]));
    } catch (const std::exception&) {
      throw std::runtime_error("dataset file " + path + " row " +
                               std::to_string(row) + ": non-numeric field");
    }
  }
  int n = static_cast<int>(responses.size());
  if (n == 0) throw std::runtime_error("dataset file has no data rows: " + path);
  bool classification = std::all_of(responses.begin(), responses.end(),
                                    [](double v) { return v == 1.0 || v == -1.0; });
  return Dataset::build(std::move(responses), covariates, n,
                        static_cast<int>(cov_cols.size()), classification,
                        std::move(names));
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset file: " + path);
  out << "y";
  for (const auto& name : data.covariate_names) out << ',' << name;
  out << '\n';
  out.precision(17);
  for (int i = 0; i < data.n; ++i) {
    out << data.y[i];
    for (int j = 1; j < data.k; ++j) out << ',' << data.xat(i, j);
    out << '\n';
  }
  if (!out) throw std::runtime_error("failed writing dataset file: " + path);
}

}  // namespace gpc
