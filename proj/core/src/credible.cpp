#include "gpc/credible.hpp"

#include <stdexcept>

namespace gpc {

bool CredibleSet::contains(std::span<const double> theta) const {
  for (std::size_t i = 0; i < coords.size(); ++i) {
    double v = theta[coords[i]];
    if (v < lo[i] || v > hi[i]) return false;
  }
  return true;
}

CredibleSet credible_box(const ParticleSet& pset,
                         std::span<const double> weights, double alpha,
                         std::span<const int> coords) {
  if (pset.num_particles < 2)
    throw std::invalid_argument("credible_box: need at least 2 particles");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("credible_box: alpha must lie in (0, 1)");
  CredibleSet set;
  set.level = 1.0 - alpha;
  set.coords.assign(coords.begin(), coords.end());
  set.lo.resize(coords.size());
  set.hi.resize(coords.size());
  std::vector<double> column(pset.num_particles);
  for (std::size_t c = 0; c < coords.size(); ++c) {
    int j = coords[c];
    if (j < 0 || j >= pset.param_dim)
      throw std::invalid_argument("credible_box: coordinate out of range");
    for (int m = 0; m < pset.num_particles; ++m) column[m] = pset.coord(m, j);
    set.lo[c] = weighted_quantile(column, weights, alpha / 2.0);
    set.hi[c] = weighted_quantile(column, weights, 1.0 - alpha / 2.0);
  }
  return set;
}

double estimate_coverage(std::span<const double> theta_hat,
                         std::span<const CredibleSet> sets) {
  if (sets.empty())
    throw std::invalid_argument("estimate_coverage: no credible sets");
  int covered = 0;
  for (const auto& set : sets)
    if (set.contains(theta_hat)) ++covered;
  return static_cast<double>(covered) / static_cast<double>(sets.size());
}

}  // namespace gpc
