// Model abstraction: a log-pseudolikelihood log q(theta; D) -- a genuine
// log-likelihood or -N*eta*risk exponent -- plus an eta-tempered MCMC
// simulator targeting q(theta; D)^eta p(theta).

#pragma once

#include <span>
#include <string>
#include <vector>

#include "gpc/dataset.hpp"
#include "gpc/particles.hpp"
#include "gpc/random.hpp"

namespace gpc {

class Model {
 public:
  virtual ~Model() = default;

  virtual int param_dim() const = 0;
  virtual std::vector<std::string> param_names() const = 0;

  // Parameter indices entering credible-set coverage checks.
  virtual const std::vector<int>& coverage_coords() const = 0;

  // log q(theta; view), additive over the view's rows.
  virtual double log_pseudolik(std::span<const double> theta,
                               const DatasetView& view) const = 0;

  // Log prior density of theta (up to a constant).
  virtual double log_prior(std::span<const double> theta) const = 0;

  // Runs warmup + num_draws MCMC sweeps targeting q^eta * prior on the view
  // and returns the last num_draws draws with uniform weights and cached
  // log q values.
  virtual ParticleSet simulate(double eta, const DatasetView& view,
                               int num_draws, int warmup,
                               RandomStream& rng) const = 0;
};

}  // namespace gpc
