#include "gpc/particles.hpp"

#include <stdexcept>

namespace gpc {

std::vector<double> ParticleSet::normalized_weights() const {
  return normalize_log_weights(log_weights).weights;
}

std::vector<double> reweighted_log_weights(const ParticleSet& pset,
                                           double eta_prime) {
  if (!(eta_prime > 0.0))
    throw std::invalid_argument("reweight: eta' must be positive");
  double delta = eta_prime - pset.eta_sim;
  std::vector<double> lw(pset.num_particles);
  for (int m = 0; m < pset.num_particles; ++m)
    lw[m] = pset.log_weights.values[m] + delta * pset.log_pseudolik[m];
  return lw;
}

std::vector<double> reweight(const ParticleSet& pset, double eta_prime) {
  LogWeights lw(reweighted_log_weights(pset, eta_prime));
  return normalize_log_weights(lw).weights;
}

std::vector<double> weighted_mean(const ParticleSet& pset,
                                  std::span<const double> weights) {
  if (static_cast<int>(weights.size()) != pset.num_particles)
    throw std::invalid_argument("weighted_mean: weight count mismatch");
  std::vector<double> mean(pset.param_dim, 0.0);
  for (int m = 0; m < pset.num_particles; ++m) {
    double w = weights[m];
    if (w == 0.0) continue;
    auto theta = pset.particle(m);
    for (int j = 0; j < pset.param_dim; ++j) mean[j] += w * theta[j];
  }
  return mean;
}

PointEstimate point_estimate(const ParticleSet& pset,
                             std::span<const double> weights) {
  PointEstimate est;
  est.value = weighted_mean(pset, weights);
  if (pset.num_particles > 1)
    est.degenerate_weights = ess(weights) < 1.0 + 1e-9;
  return est;
}

}  // namespace gpc
