// Samplers for the distributions the Gibbs kernels need. All draws consume
// an explicit RandomStream; there is no hidden generator state beyond it.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "gpc/random.hpp"

namespace gpc {

class CholeskyFactor;

double standard_normal(RandomStream& rng);

// Gamma(shape, rate); Marsaglia-Tsang with the shape<1 boost.
double gamma_draw(double shape, double rate, RandomStream& rng);

// Inverse gamma with shape a and rate b, so the mean is b/(a-1) for a>1.
double inverse_gamma(double shape, double rate, RandomStream& rng);

// Inverse Gaussian IG(mean, shape) via the Michael-Schucany-Haas method.
double inverse_gaussian(double mean, double shape, RandomStream& rng);

double exponential_rate(double rate, RandomStream& rng);

// Unbiased uniform draw from {0, ..., n-1}.
std::uint64_t uniform_index(std::uint64_t n, RandomStream& rng);

// mean + L z with z iid standard normal; L is a Cholesky factor of the
// covariance matrix.
std::vector<double> multivariate_normal(std::span<const double> mean,
                                        const CholeskyFactor& cov_chol,
                                        RandomStream& rng);

}  // namespace gpc
