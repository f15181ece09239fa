// Credible boxes from weighted particles and the bootstrap coverage
// estimate.

#pragma once

#include <span>
#include <vector>

#include "gpc/particles.hpp"

namespace gpc {

// Per-coordinate equal-tailed interval box at level 1-alpha. Endpoints are
// realized particle values (left-continuous weighted quantiles).
struct CredibleSet {
  std::vector<int> coords;
  std::vector<double> lo;
  std::vector<double> hi;
  double level = 0.0;

  // Closed intervals: boundary points count as contained.
  bool contains(std::span<const double> theta) const;
};

CredibleSet credible_box(const ParticleSet& pset,
                         std::span<const double> weights, double alpha,
                         std::span<const int> coords);

// Fraction of sets containing theta_hat in every covered coordinate;
// always a multiple of 1/B.
double estimate_coverage(std::span<const double> theta_hat,
                         std::span<const CredibleSet> sets);

}  // namespace gpc
