// Log-domain weight arithmetic: logsumexp, normalization, effective sample
// size, and weighted quantiles. Weight updates of the form q^(eta'-eta) span
// hundreds of orders of magnitude for realistic N, so everything stays in
// log space until the final normalization.

#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpc {

class DegenerateWeightsError : public std::runtime_error {
 public:
  explicit DegenerateWeightsError(const std::string& what)
      : std::runtime_error(what) {}
};

// Vector of log-weights; entries may be -inf but never NaN.
struct LogWeights {
  std::vector<double> values;

  LogWeights() = default;
  explicit LogWeights(std::vector<double> v);

  std::size_t size() const { return values.size(); }
};

// log sum_i exp(v_i), max-shifted. Returns -inf iff every entry is -inf.
double logsumexp(std::span<const double> v);

struct NormalizedWeights {
  std::vector<double> weights;
  double log_normalizer = 0.0;
};

// Throws DegenerateWeightsError when every entry is -inf.
NormalizedWeights normalize_log_weights(const LogWeights& lw);

// 1 / sum w_m^2 for normalized weights, clamped into [1, M].
// Throws std::invalid_argument when |sum w - 1| > 1e-9.
double ess(std::span<const double> weights);

// Left-continuous weighted inverse CDF: the smallest value (after sorting by
// value) whose cumulative weight reaches p. p = 0 returns the minimum.
double weighted_quantile(std::span<const double> values,
                         std::span<const double> weights, double p);

}  // namespace gpc
