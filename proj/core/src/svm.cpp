#include "gpc/svm.hpp"

#include <cmath>
#include <stdexcept>

#include "gpc/distributions.hpp"
#include "gpc/spd.hpp"

namespace gpc {

namespace {
// Guard for the inverse-Gaussian means at exact unit margins or zero
// coefficients; measure-zero events, clamping is numerically inert.
constexpr double kAugmentationClamp = 1e-12;
}  // namespace

SvmModel::SvmModel(const Dataset& data, SvmHyper hyper,
                   std::vector<int> coverage_coords)
    : data_(&data), k_(data.k), hyper_(hyper),
      coverage_(std::move(coverage_coords)) {
  if (!data.classification)
    throw std::invalid_argument("SvmModel: expects -1/+1 responses");
  if (!(hyper_.laplace_scale > 0.0))
    throw std::invalid_argument("SvmModel: nu must be positive");
  if (coverage_.empty()) {
    for (int j = 0; j < k_; ++j) coverage_.push_back(j);
  }
  for (int c : coverage_)
    if (c < 0 || c >= k_)
      throw std::invalid_argument("SvmModel: coverage coordinate out of range");
}

std::vector<std::string> SvmModel::param_names() const {
  std::vector<std::string> names;
  names.push_back("theta_intercept");
  for (const auto& cov : data_->covariate_names) names.push_back("theta_" + cov);
  return names;
}

double SvmModel::log_pseudolik(std::span<const double> theta,
                               const DatasetView& view) const {
  if (static_cast<int>(theta.size()) != k_)
    throw std::invalid_argument("log_pseudolik: parameter dimension mismatch");
  int n = view.rows();
  double hinge = 0.0;
  for (int i = 0; i < n; ++i) {
    double yi = view.y(i);
    if (yi != 1.0 && yi != -1.0)
      throw std::invalid_argument("log_pseudolik: response must be -1 or +1");
    auto row = view.row(i);
    double margin = 0.0;
    for (int j = 0; j < k_; ++j) margin += theta[j] * row[j];
    double slack = 1.0 - yi * margin;
    if (slack > 0.0) hinge += slack;
  }
  return -2.0 * hinge;
}

double SvmModel::log_prior(std::span<const double> theta) const {
  // Independent Laplace(0, nu * sigma_k) coordinates.
  double lp = 0.0;
  for (int j = 0; j < k_; ++j) {
    double s = hyper_.laplace_scale * data_->feature_scale[j];
    lp += -std::abs(theta[j]) / s - std::log(2.0 * s);
  }
  return lp;
}

ParticleSet SvmModel::simulate(double eta, const DatasetView& view,
                               int num_draws, int warmup,
                               RandomStream& rng) const {
  if (!(eta > 0.0)) throw std::invalid_argument("simulate: eta must be positive");
  if (num_draws < 1 || warmup < 0)
    throw std::invalid_argument("simulate: bad draw counts");
  if (&view.base() != data_)
    throw std::invalid_argument("simulate: view is not over this model's dataset");

  int n = view.rows();
  // Transient gather of the replicate's rows; the plan itself stays
  // index-based.
  std::vector<double> xg(static_cast<std::size_t>(n) * k_);
  std::vector<double> yg(n);
  for (int i = 0; i < n; ++i) {
    yg[i] = view.y(i);
    auto row = view.row(i);
    for (int j = 0; j < k_; ++j) xg[static_cast<std::size_t>(i) * k_ + j] = row[j];
  }

  ParticleSet out;
  out.num_particles = num_draws;
  out.param_dim = k_;
  out.eta_sim = eta;
  out.particles.resize(static_cast<std::size_t>(num_draws) * k_);
  out.log_pseudolik.resize(num_draws);
  out.log_weights = LogWeights(std::vector<double>(num_draws, 0.0));

  std::vector<double> theta(k_, 0.0);
  std::vector<double> lambda(n, 1.0);
  std::vector<double> omega(k_);
  for (int j = 0; j < k_; ++j) {
    double s = hyper_.laplace_scale * data_->feature_scale[j];
    omega[j] = 2.0 * s * s;  // Laplace prior variance
  }

  std::vector<double> margins(n);
  std::vector<double> precision(static_cast<std::size_t>(k_) * k_);
  std::vector<double> linear(k_);
  std::vector<double> z(k_);
  double eta2 = eta * eta;

  int total = warmup + num_draws;
  for (int sweep = 0; sweep < total; ++sweep) {
    for (int i = 0; i < n; ++i) {
      const double* row = xg.data() + static_cast<std::size_t>(i) * k_;
      double m = 0.0;
      for (int j = 0; j < k_; ++j) m += theta[j] * row[j];
      margins[i] = yg[i] * m;
    }

    // lambda_i | theta
    for (int i = 0; i < n; ++i) {
      double v = eta * (1.0 - margins[i]);
      double av = std::abs(v);
      if (av < kAugmentationClamp) av = kAugmentationClamp;
      lambda[i] = 1.0 / inverse_gaussian(1.0 / av, 1.0, rng);
    }

    // theta | lambda, omega
    std::fill(precision.begin(), precision.end(), 0.0);
    std::fill(linear.begin(), linear.end(), 0.0);
    for (int i = 0; i < n; ++i) {
      const double* row = xg.data() + static_cast<std::size_t>(i) * k_;
      double pscale = eta2 / lambda[i];
      double lscale = eta * yg[i] * (eta + lambda[i]) / lambda[i];
      for (int a = 0; a < k_; ++a) {
        linear[a] += lscale * row[a];
        double ra = pscale * row[a];
        for (int b = a; b < k_; ++b) precision[a * k_ + b] += ra * row[b];
      }
    }
    for (int a = 0; a < k_; ++a) {
      precision[a * k_ + a] += 1.0 / omega[a];
      for (int b = 0; b < a; ++b) precision[a * k_ + b] = precision[b * k_ + a];
    }
    CholeskyFactor chol = cholesky_dense(k_, precision);
    std::vector<double> mean = chol.solve(linear);
    for (int j = 0; j < k_; ++j) z[j] = standard_normal(rng);
    chol.solve_upper_in_place(z);
    for (int j = 0; j < k_; ++j) theta[j] = mean[j] + z[j];

    // omega_k | theta_k
    for (int j = 0; j < k_; ++j) {
      double s = hyper_.laplace_scale * data_->feature_scale[j];
      double at = std::abs(theta[j]);
      if (at < kAugmentationClamp) at = kAugmentationClamp;
      omega[j] = 1.0 / inverse_gaussian(1.0 / (s * at), 1.0 / (s * s), rng);
    }

    if (sweep >= warmup) {
      int m = sweep - warmup;
      double* dst = out.particles.data() + static_cast<std::size_t>(m) * k_;
      double hinge = 0.0;
      for (int i = 0; i < n; ++i) {
        const double* row = xg.data() + static_cast<std::size_t>(i) * k_;
        double fit = 0.0;
        for (int j = 0; j < k_; ++j) fit += theta[j] * row[j];
        double slack = 1.0 - yg[i] * fit;
        if (slack > 0.0) hinge += slack;
      }
      for (int j = 0; j < k_; ++j) dst[j] = theta[j];
      out.log_pseudolik[m] = -2.0 * hinge;
    }
  }
  return out;
}

}  // namespace gpc
