// Shared test-only machinery: a random-walk Metropolis oracle, batch-means
// Monte Carlo standard errors, and small dataset builders. Everything here
// is deliberately independent of the library's sampling paths.

#pragma once

#include <cmath>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

#include "gpc/dataset.hpp"
#include "gpc/distributions.hpp"
#include "gpc/random.hpp"

namespace gpctest {

// Monte Carlo standard error of the mean of a correlated scalar chain via
// non-overlapping batch means.
inline double batch_means_se(std::span<const double> chain, int num_batches = 25) {
  std::size_t n = chain.size();
  if (n < static_cast<std::size_t>(2 * num_batches))
    throw std::invalid_argument("batch_means_se: chain too short");
  std::size_t batch = n / num_batches;
  std::vector<double> means;
  means.reserve(num_batches);
  for (int b = 0; b < num_batches; ++b) {
    double acc = 0.0;
    for (std::size_t i = b * batch; i < (b + 1) * batch; ++i) acc += chain[i];
    means.push_back(acc / batch);
  }
  double grand = std::accumulate(means.begin(), means.end(), 0.0) / num_batches;
  double var = 0.0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= (num_batches - 1);
  return std::sqrt(var / num_batches);
}

// Batch-means standard error for a weighted particle stream (weights need
// not be uniform; each batch renormalizes its own weights).
inline double weighted_batch_means_se(std::span<const double> values,
                                      std::span<const double> weights,
                                      int num_batches = 25) {
  std::size_t n = values.size();
  if (n != weights.size() || n < static_cast<std::size_t>(2 * num_batches))
    throw std::invalid_argument("weighted_batch_means_se: bad input");
  std::size_t batch = n / num_batches;
  std::vector<double> means;
  means.reserve(num_batches);
  for (int b = 0; b < num_batches; ++b) {
    double acc = 0.0, wsum = 0.0;
    for (std::size_t i = b * batch; i < (b + 1) * batch; ++i) {
      acc += weights[i] * values[i];
      wsum += weights[i];
    }
    if (wsum <= 0.0) throw std::invalid_argument("weighted_batch_means_se: empty batch");
    means.push_back(acc / wsum);
  }
  double grand = std::accumulate(means.begin(), means.end(), 0.0) / num_batches;
  double var = 0.0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= (num_batches - 1);
  return std::sqrt(var / num_batches);
}

struct MetropolisChain {
  int dim = 0;
  std::vector<double> samples;  // draws x dim, row-major
  double accept_rate = 0.0;

  std::size_t draws() const { return dim == 0 ? 0 : samples.size() / dim; }
  std::vector<double> coordinate(int j) const {
    std::vector<double> out(draws());
    for (std::size_t m = 0; m < out.size(); ++m) out[m] = samples[m * dim + j];
    return out;
  }
  double mean(int j) const {
    auto c = coordinate(j);
    return std::accumulate(c.begin(), c.end(), 0.0) / c.size();
  }
};

// Plain random-walk Metropolis with componentwise Gaussian proposals.
inline MetropolisChain random_walk_metropolis(
    const std::function<double(std::span<const double>)>& log_target,
    std::vector<double> init, const std::vector<double>& step, int warmup,
    int draws, gpc::RandomStream& rng) {
  int dim = static_cast<int>(init.size());
  MetropolisChain out;
  out.dim = dim;
  out.samples.reserve(static_cast<std::size_t>(draws) * dim);
  std::vector<double> current = std::move(init);
  std::vector<double> proposal(dim);
  double current_lp = log_target(current);
  long long accepted = 0, total = 0;
  for (int it = 0; it < warmup + draws; ++it) {
    for (int j = 0; j < dim; ++j)
      proposal[j] = current[j] + step[j] * gpc::standard_normal(rng);
    double lp = log_target(proposal);
    ++total;
    if (std::log(rng.next_open_double()) < lp - current_lp) {
      current = proposal;
      current_lp = lp;
      ++accepted;
    }
    if (it >= warmup)
      out.samples.insert(out.samples.end(), current.begin(), current.end());
  }
  out.accept_rate = static_cast<double>(accepted) / total;
  return out;
}

// Small linearly separable-ish binary toy problem for the SVM sampler.
inline gpc::Dataset make_svm_toy(int n, std::uint64_t seed) {
  gpc::RandomStream rng(seed, 900);
  std::vector<double> cov(static_cast<std::size_t>(n));
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    double x = gpc::standard_normal(rng);
    cov[i] = x;
    double noisy = x + 0.3 * gpc::standard_normal(rng);
    y[i] = noisy >= 0.0 ? 1.0 : -1.0;
  }
  return gpc::Dataset::build(std::move(y), cov, n, 1, true);
}

// Fixed-coefficient Gaussian regression data (homoskedastic).
inline gpc::Dataset make_linreg_toy(int n, int num_cov, double noise_sd,
                                    std::uint64_t seed) {
  gpc::RandomStream rng(seed, 901);
  std::vector<double> cov(static_cast<std::size_t>(n) * num_cov);
  for (auto& v : cov) v = gpc::standard_normal(rng);
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    double fit = 0.5;
    for (int j = 0; j < num_cov; ++j)
      fit += (j + 1.0) * 0.7 * cov[static_cast<std::size_t>(i) * num_cov + j];
    y[i] = fit + noise_sd * gpc::standard_normal(rng);
  }
  return gpc::Dataset::build(std::move(y), cov, n, num_cov, false);
}

}  // namespace gpctest
