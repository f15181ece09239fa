#include "gpc/linreg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gpc/distributions.hpp"
#include "gpc/spd.hpp"

namespace gpc {

namespace {

// Sufficient statistics of a view: X'X, X'y, y'y over the gathered rows.
struct LinRegSuffStats {
  int k;
  int n;
  std::vector<double> xtx;  // k x k
  std::vector<double> xty;  // k
  double yty = 0.0;

  explicit LinRegSuffStats(const DatasetView& view, int k_) : k(k_) {
    n = view.rows();
    xtx.assign(static_cast<std::size_t>(k) * k, 0.0);
    xty.assign(k, 0.0);
    for (int i = 0; i < n; ++i) {
      auto row = view.row(i);
      double yi = view.y(i);
      yty += yi * yi;
      for (int a = 0; a < k; ++a) {
        xty[a] += row[a] * yi;
        for (int b = a; b < k; ++b) xtx[a * k + b] += row[a] * row[b];
      }
    }
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < a; ++b) xtx[a * k + b] = xtx[b * k + a];
  }

  double ssr(std::span<const double> beta) const {
    double quad = 0.0, cross = 0.0;
    for (int a = 0; a < k; ++a) {
      cross += beta[a] * xty[a];
      double acc = 0.0;
      for (int b = 0; b < k; ++b) acc += xtx[a * k + b] * beta[b];
      quad += beta[a] * acc;
    }
    double s = yty - 2.0 * cross + quad;
    return s > 0.0 ? s : 0.0;
  }
};

constexpr double kLog2Pi = 1.8378770664093454836;

}  // namespace

LinRegModel::LinRegModel(const Dataset& data, LinRegHyper hyper,
                         std::vector<int> coverage_coords)
    : data_(&data), k_(data.k), hyper_(hyper),
      coverage_(std::move(coverage_coords)) {
  if (data.classification)
    throw std::invalid_argument("LinRegModel: expects a regression dataset");
  if (!(hyper_.coef_prior_var > 0.0) || !(hyper_.ig_shape > 0.0) ||
      !(hyper_.ig_rate > 0.0))
    throw std::invalid_argument("LinRegModel: hyperparameters must be positive");
  if (coverage_.empty()) {
    for (int j = 0; j < k_; ++j) coverage_.push_back(j);
  }
  for (int c : coverage_)
    if (c < 0 || c > k_)
      throw std::invalid_argument("LinRegModel: coverage coordinate out of range");
}

std::vector<std::string> LinRegModel::param_names() const {
  std::vector<std::string> names;
  names.push_back("beta_intercept");
  for (const auto& cov : data_->covariate_names) names.push_back("beta_" + cov);
  names.push_back("sigma2");
  return names;
}

double LinRegModel::log_pseudolik(std::span<const double> theta,
                                  const DatasetView& view) const {
  if (static_cast<int>(theta.size()) != k_ + 1)
    throw std::invalid_argument("log_pseudolik: parameter dimension mismatch");
  double sigma2 = theta[k_];
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("log_pseudolik: sigma2 must be positive");
  int n = view.rows();
  double ssr = 0.0;
  for (int i = 0; i < n; ++i) {
    auto row = view.row(i);
    double fit = 0.0;
    for (int j = 0; j < k_; ++j) fit += theta[j] * row[j];
    double r = view.y(i) - fit;
    ssr += r * r;
  }
  return -0.5 * n * (kLog2Pi + std::log(sigma2)) - ssr / (2.0 * sigma2);
}

double LinRegModel::log_prior(std::span<const double> theta) const {
  double sigma2 = theta[k_];
  if (!(sigma2 > 0.0)) return -std::numeric_limits<double>::infinity();
  double lp = 0.0;
  for (int j = 0; j < k_; ++j)
    lp += -0.5 * theta[j] * theta[j] / hyper_.coef_prior_var;
  lp += -0.5 * k_ * (kLog2Pi + std::log(hyper_.coef_prior_var));
  // IG(shape, rate) log density, constants dropped.
  lp += -(hyper_.ig_shape + 1.0) * std::log(sigma2) - hyper_.ig_rate / sigma2;
  return lp;
}

ParticleSet LinRegModel::simulate(double eta, const DatasetView& view,
                                  int num_draws, int warmup,
                                  RandomStream& rng) const {
  if (!(eta > 0.0)) throw std::invalid_argument("simulate: eta must be positive");
  if (num_draws < 1 || warmup < 0)
    throw std::invalid_argument("simulate: bad draw counts");
  if (&view.base() != data_)
    throw std::invalid_argument("simulate: view is not over this model's dataset");

  LinRegSuffStats stats(view, k_);
  int dim = k_ + 1;

  ParticleSet out;
  out.num_particles = num_draws;
  out.param_dim = dim;
  out.eta_sim = eta;
  out.particles.resize(static_cast<std::size_t>(num_draws) * dim);
  out.log_pseudolik.resize(num_draws);
  out.log_weights = LogWeights(std::vector<double>(num_draws, 0.0));

  std::vector<double> beta(k_, 0.0);
  double sigma2 = 1.0;
  std::vector<double> precision(static_cast<std::size_t>(k_) * k_);
  std::vector<double> linear(k_);
  std::vector<double> z(k_);

  int total = warmup + num_draws;
  for (int sweep = 0; sweep < total; ++sweep) {
    // beta | sigma2
    double scale = eta / sigma2;
    for (int a = 0; a < k_; ++a) {
      for (int b = 0; b < k_; ++b)
        precision[a * k_ + b] = scale * stats.xtx[a * k_ + b];
      precision[a * k_ + a] += 1.0 / hyper_.coef_prior_var;
      linear[a] = scale * stats.xty[a];
    }
    CholeskyFactor chol = cholesky_dense(k_, precision);
    std::vector<double> mean = chol.solve(linear);
    for (int j = 0; j < k_; ++j) z[j] = standard_normal(rng);
    chol.solve_upper_in_place(z);  // z ~ N(0, P^{-1})
    for (int j = 0; j < k_; ++j) beta[j] = mean[j] + z[j];

    // sigma2 | beta
    double ssr = stats.ssr(beta);
    sigma2 = inverse_gamma(hyper_.ig_shape + 0.5 * eta * stats.n,
                           hyper_.ig_rate + 0.5 * eta * ssr, rng);

    if (sweep >= warmup) {
      int m = sweep - warmup;
      double* theta = out.particles.data() + static_cast<std::size_t>(m) * dim;
      for (int j = 0; j < k_; ++j) theta[j] = beta[j];
      theta[k_] = sigma2;
      out.log_pseudolik[m] =
          -0.5 * stats.n * (kLog2Pi + std::log(sigma2)) - ssr / (2.0 * sigma2);
    }
  }
  return out;
}

}  // namespace gpc
