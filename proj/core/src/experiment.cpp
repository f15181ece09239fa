#include "gpc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gpc/distributions.hpp"
#include "gpc/linreg.hpp"
#include "gpc/svm.hpp"

namespace gpc {

const char* method_name(Method m) { return m == Method::sa ? "sa" : "wp"; }

Dataset gen_linreg_data(const SynthConfig& cfg) {
  if (cfg.n < 20)
    throw std::invalid_argument(
        "gen_linreg_data: need n >= 20 for meaningful percentile cuts");
  if (!(cfg.variance_levels[0] > 0.0 &&
        cfg.variance_levels[0] < cfg.variance_levels[1] &&
        cfg.variance_levels[1] < cfg.variance_levels[2]))
    throw std::invalid_argument(
        "gen_linreg_data: variance levels must be positive and increasing");

  int n = cfg.n;
  int num_cov = 3;
  RandomStream rng(cfg.seed, kDataGenStreamTag);
  std::vector<double> covariates(static_cast<std::size_t>(n) * num_cov);
  for (auto& v : covariates) v = standard_normal(rng);

  // Left-continuous sample percentiles of the realized x1 column, the same
  // quantile convention as weighted_quantile with uniform weights.
  std::vector<double> x1(n);
  for (int i = 0; i < n; ++i) x1[i] = covariates[static_cast<std::size_t>(i) * num_cov];
  std::vector<double> uniform(n, 1.0 / n);
  double lo_cut = weighted_quantile(x1, uniform, cfg.cut_points[0]);
  double hi_cut = weighted_quantile(x1, uniform, cfg.cut_points[1]);

  std::vector<double> responses(n);
  for (int i = 0; i < n; ++i) {
    double xi1 = x1[i];
    double var;
    if (xi1 < lo_cut)
      var = cfg.variance_levels[0];
    else if (xi1 <= hi_cut)
      var = cfg.variance_levels[1];
    else
      var = cfg.variance_levels[2];
    double fit = cfg.beta_true[0];
    for (int j = 0; j < num_cov; ++j)
      fit += cfg.beta_true[j + 1] *
             covariates[static_cast<std::size_t>(i) * num_cov + j];
    responses[i] = fit + std::sqrt(var) * standard_normal(rng);
  }
  return Dataset::build(std::move(responses), covariates, n, num_cov, false);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' '))
      field.pop_back();
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"')
      field = field.substr(1, field.size() - 2);
    fields.push_back(field);
  }
  return fields;
}

double median_of(std::vector<double> v) {
  std::vector<double> uniform(v.size(), 1.0 / v.size());
  return weighted_quantile(v, uniform, 0.5);
}

std::pair<double, double> iqr_of(std::vector<double> v) {
  std::vector<double> uniform(v.size(), 1.0 / v.size());
  return {weighted_quantile(v, uniform, 0.25),
          weighted_quantile(v, uniform, 0.75)};
}

}  // namespace

Dataset load_saheart(const std::string& path,
                     const std::vector<std::string>& feature_columns) {
  constexpr int kExpectedRows = 462;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open SAheart file: " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("SAheart file is empty: " + path);
  auto header = split_line(line);

  auto column_of = [&](const std::string& name) {
    for (std::size_t j = 0; j < header.size(); ++j)
      if (header[j] == name) return static_cast<int>(j);
    return -1;
  };
  int chd_col = column_of("chd");
  if (chd_col < 0)
    throw std::runtime_error("SAheart file " + path +
                             ": expected a 'chd' response column; header has " +
                             line);
  std::vector<int> cols;
  for (const auto& name : feature_columns) {
    int c = column_of(name);
    if (c < 0)
      throw std::runtime_error("SAheart file " + path +
                               ": missing expected column '" + name + "'");
    cols.push_back(c);
  }

  int num_cov = static_cast<int>(cols.size());
  std::vector<double> responses;
  std::vector<double> covariates;
  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    auto fields = split_line(line);
    if (fields.size() != header.size())
      throw std::runtime_error("SAheart file " + path + " row " +
                               std::to_string(row) + ": field count mismatch");
    double chd = std::stod(fields[chd_col]);
    responses.push_back(chd == 1.0 ? 1.0 : -1.0);
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::string& f = fields[cols[c]];
      if (feature_columns[c] == "famhist") {
        covariates.push_back(f == "Present" ? 1.0 : 0.0);
      } else {
        covariates.push_back(std::stod(f));
      }
    }
  }
  int n = static_cast<int>(responses.size());
  if (n != kExpectedRows)
    throw std::runtime_error("SAheart file " + path + ": expected " +
                             std::to_string(kExpectedRows) + " rows, found " +
                             std::to_string(n));
  return Dataset::build(std::move(responses), covariates, n, num_cov, true,
                        feature_columns);
}

ExperimentReport run_paired_experiment(const ExperimentConfig& cfg) {
  if (cfg.runs < 1)
    throw std::invalid_argument("run_paired_experiment: runs must be >= 1");
  if (cfg.methods.empty())
    throw std::invalid_argument("run_paired_experiment: no methods configured");

  ExperimentReport report;
  report.config = cfg;

  Dataset shared;
  if (cfg.model == ModelKind::svm) shared = load_saheart(cfg.data_path);

  for (int d = 0; d < cfg.runs; ++d) {
    std::uint64_t run_seed = mix_seed(cfg.master_seed, d);

    Dataset synth;
    const Dataset* data;
    if (cfg.model == ModelKind::linreg) {
      SynthConfig sc = cfg.synth;
      sc.seed = run_seed;
      synth = gen_linreg_data(sc);
      data = &synth;
    } else {
      data = &shared;
    }

    // One plan per dataset/seed, shared by every method.
    BootstrapPlan plan(data->n, cfg.bootstrap_b, run_seed);

    for (Method method : cfg.methods) {
      CalibrationResult res;
      if (cfg.model == ModelKind::linreg) {
        LinRegModel model(*data);
        res = method == Method::sa
                  ? gpc_sa_run(model, *data, plan, cfg.calib, run_seed)
                  : gpc_wp_run(model, *data, plan, cfg.calib, run_seed);
      } else {
        SvmModel model(*data);
        res = method == Method::sa
                  ? gpc_sa_run(model, *data, plan, cfg.calib, run_seed)
                  : gpc_wp_run(model, *data, plan, cfg.calib, run_seed);
      }

      ExperimentRow rowr;
      rowr.dataset_id = d;
      rowr.method = method;
      rowr.eta_hat = res.eta_hat;
      rowr.converged = res.converged;
      rowr.outer_iterations = res.outer_iterations;
      rowr.wall_ms = res.wall_ms;
      rowr.seed = run_seed;
      if (cfg.model == ModelKind::linreg && res.final_box) {
        std::vector<double> truth(cfg.synth.beta_true.begin(),
                                  cfg.synth.beta_true.end());
        truth.push_back(0.0);  // sigma2 slot, not covered
        rowr.truth_covered = res.final_box->contains(truth) ? 1 : 0;
      }
      report.rows.push_back(std::move(rowr));
    }
  }
  return report;
}

void ExperimentReport::write_csv(std::ostream& out) const {
  out << "dataset_id,method,eta_hat,converged,outer_iterations,wall_ms,"
         "truth_covered,seed\n";
  out.precision(17);
  for (const auto& r : rows) {
    out << r.dataset_id << ',' << method_name(r.method) << ',' << r.eta_hat
        << ',' << (r.converged ? 1 : 0) << ',' << r.outer_iterations << ','
        << r.wall_ms << ',' << r.truth_covered << ',' << r.seed << '\n';
  }
}

nlohmann::json ExperimentReport::summary_json() const {
  nlohmann::json methods = nlohmann::json::object();
  for (Method m : config.methods) {
    std::vector<double> wall, iters, covered;
    int converged = 0, total = 0;
    for (const auto& r : rows) {
      if (r.method != m) continue;
      ++total;
      wall.push_back(r.wall_ms);
      iters.push_back(r.outer_iterations);
      if (r.converged) ++converged;
      if (r.truth_covered >= 0) covered.push_back(r.truth_covered);
    }
    if (total == 0) continue;
    auto [w25, w75] = iqr_of(wall);
    auto [i25, i75] = iqr_of(iters);
    nlohmann::json entry{{"runs", total},
                         {"converged", converged},
                         {"median_wall_ms", median_of(wall)},
                         {"iqr_wall_ms", {w25, w75}},
                         {"median_outer_iterations", median_of(iters)},
                         {"iqr_outer_iterations", {i25, i75}}};
    if (!covered.empty()) {
      double frac = 0.0;
      for (double c : covered) frac += c;
      entry["truth_coverage"] = frac / covered.size();
    }
    methods[method_name(m)] = std::move(entry);
  }

  // Fraction of seed-matched pairs where wp beat sa on wall time.
  bool has_both =
      std::count(config.methods.begin(), config.methods.end(), Method::sa) &&
      std::count(config.methods.begin(), config.methods.end(), Method::wp);
  nlohmann::json j{{"model", config.model == ModelKind::linreg ? "linreg" : "svm"},
                   {"n", config.model == ModelKind::linreg ? config.synth.n : 0},
                   {"alpha", config.calib.alpha},
                   {"methods", std::move(methods)}};
  if (has_both) {
    int faster = 0, pairs = 0;
    for (int d = 0; d < config.runs; ++d) {
      double sa_ms = -1, wp_ms = -1;
      for (const auto& r : rows) {
        if (r.dataset_id != d) continue;
        if (r.method == Method::sa) sa_ms = r.wall_ms;
        if (r.method == Method::wp) wp_ms = r.wall_ms;
      }
      if (sa_ms >= 0 && wp_ms >= 0) {
        ++pairs;
        if (wp_ms < sa_ms) ++faster;
      }
    }
    if (pairs > 0)
      j["wp_faster_fraction"] = static_cast<double>(faster) / pairs;
  }
  return j;
}

}  // namespace gpc
