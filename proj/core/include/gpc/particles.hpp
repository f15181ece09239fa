// Weighted particle approximation of one replicate's generalized posterior.
//
// A fresh simulation yields uniform weights and a cached log-pseudolikelihood
// per draw. Reweighting to a trial learning rate eta' multiplies weight m by
// q(theta_m)^(eta'-eta_sim) and touches no data rows. All reweighting anchors
// at the simulation point, so composing reweights is bit-identical in log
// domain to reweighting directly.

#pragma once

#include <span>
#include <vector>

#include "gpc/weights.hpp"

namespace gpc {

struct ParticleSet {
  int num_particles = 0;
  int param_dim = 0;
  double eta_sim = 0.0;      // learning rate the MCMC ran at
  std::vector<double> particles;      // M x param_dim, row-major
  std::vector<double> log_pseudolik;  // cached log q(theta_m; replicate)
  LogWeights log_weights;             // at-simulation weights (uniform: all 0)

  std::span<const double> particle(int m) const {
    return std::span<const double>(
        particles.data() + static_cast<std::size_t>(m) * param_dim,
        static_cast<std::size_t>(param_dim));
  }
  double coord(int m, int j) const {
    return particles[static_cast<std::size_t>(m) * param_dim + j];
  }

  std::vector<double> normalized_weights() const;
};

// Unnormalized log weights for a trial eta': log_weights + (eta'-eta_sim)*lq.
std::vector<double> reweighted_log_weights(const ParticleSet& pset,
                                           double eta_prime);

// Normalized weights at eta'. Throws DegenerateWeightsError if every
// particle underflows.
std::vector<double> reweight(const ParticleSet& pset, double eta_prime);

std::vector<double> weighted_mean(const ParticleSet& pset,
                                  std::span<const double> weights);

struct PointEstimate {
  std::vector<double> value;
  bool degenerate_weights = false;  // ESS collapsed to a single particle
};

PointEstimate point_estimate(const ParticleSet& pset,
                             std::span<const double> weights);

}  // namespace gpc
