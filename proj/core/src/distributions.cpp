#include "gpc/distributions.hpp"

#include <cmath>
#include <stdexcept>

#include "gpc/spd.hpp"

namespace gpc {

double standard_normal(RandomStream& rng) {
  if (rng.has_cached_normal_) {
    rng.has_cached_normal_ = false;
    return rng.cached_normal_;
  }
  // Marsaglia polar method; the spare draw is cached on the stream.
  double u, v, s;
  do {
    u = 2.0 * rng.next_double() - 1.0;
    v = 2.0 * rng.next_double() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  double factor = std::sqrt(-2.0 * std::log(s) / s);
  rng.cached_normal_ = v * factor;
  rng.has_cached_normal_ = true;
  return u * factor;
}

double gamma_draw(double shape, double rate, RandomStream& rng) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::invalid_argument("gamma_draw: shape and rate must be positive");
  if (shape < 1.0) {
    // Boost: Gamma(a) = Gamma(a+1) * U^(1/a).
    double u = rng.next_open_double();
    return gamma_draw(shape + 1.0, rate, rng) * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang squeeze.
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = standard_normal(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    double u = rng.next_open_double();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
      return d * v / rate;
  }
}

double inverse_gamma(double shape, double rate, RandomStream& rng) {
  if (!(shape > 0.0) || !(rate > 0.0))
    throw std::invalid_argument(
        "inverse_gamma: shape and rate must be positive");
  return 1.0 / gamma_draw(shape, rate, rng);
}

double inverse_gaussian(double mean, double shape, RandomStream& rng) {
  if (!(mean > 0.0) || !(shape > 0.0))
    throw std::invalid_argument(
        "inverse_gaussian: mean and shape must be positive");
  double z = standard_normal(rng);
  double y = z * z;
  double x1;
  if (y == 0.0) {
    x1 = mean;
  } else {
    // Smaller root of the MSH quadratic, written to avoid cancellation when
    // mean*y >> shape.
    double w = std::sqrt(1.0 + 4.0 * shape / (mean * y));
    x1 = mean * (w - 1.0) / (w + 1.0);
  }
  double u = rng.next_double();
  if (u <= mean / (mean + x1)) return x1;
  return mean * mean / x1;
}

double exponential_rate(double rate, RandomStream& rng) {
  if (!(rate > 0.0))
    throw std::invalid_argument("exponential_rate: rate must be positive");
  return -std::log(rng.next_open_double()) / rate;
}

std::uint64_t uniform_index(std::uint64_t n, RandomStream& rng) {
  if (n == 0) throw std::invalid_argument("uniform_index: n must be >= 1");
  // Lemire's unbiased multiply-shift rejection.
  std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    unsigned __int128 m =
        static_cast<unsigned __int128>(rng.next_u64()) * n;
    if (static_cast<std::uint64_t>(m) >= threshold)
      return static_cast<std::uint64_t>(m >> 64);
  }
}

std::vector<double> multivariate_normal(std::span<const double> mean,
                                        const CholeskyFactor& cov_chol,
                                        RandomStream& rng) {
  int k = cov_chol.dim();
  if (static_cast<int>(mean.size()) != k)
    throw std::invalid_argument("multivariate_normal: dimension mismatch");
  std::vector<double> z(k);
  for (int i = 0; i < k; ++i) z[i] = standard_normal(rng);
  std::vector<double> out(mean.begin(), mean.end());
  for (int i = 0; i < k; ++i) {
    double acc = 0.0;
    for (int j = 0; j <= i; ++j) acc += cov_chol.lower(i, j) * z[j];
    out[i] += acc;
  }
  return out;
}

}  // namespace gpc
