#include "gpc/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gpc {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

LogWeights::LogWeights(std::vector<double> v) : values(std::move(v)) {
  for (double x : values) {
    if (std::isnan(x))
      throw std::invalid_argument("LogWeights: NaN entry");
    if (x == std::numeric_limits<double>::infinity())
      throw std::invalid_argument("LogWeights: +inf entry");
  }
}

double logsumexp(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("logsumexp: empty input");
  double m = kNegInf;
  for (double x : v) {
    if (std::isnan(x)) throw std::invalid_argument("logsumexp: NaN entry");
    m = std::max(m, x);
  }
  if (m == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : v) acc += std::exp(x - m);
  return m + std::log(acc);
}

NormalizedWeights normalize_log_weights(const LogWeights& lw) {
  double lse = logsumexp(lw.values);
  if (lse == kNegInf)
    throw DegenerateWeightsError(
        "normalize_log_weights: all log-weights are -inf");
  NormalizedWeights out;
  out.log_normalizer = lse;
  out.weights.resize(lw.values.size());
  for (std::size_t i = 0; i < lw.values.size(); ++i)
    out.weights[i] = std::exp(lw.values[i] - lse);
  return out;
}

double ess(std::span<const double> weights) {
  if (weights.empty()) throw std::invalid_argument("ess: empty weights");
  double sum = 0.0, sumsq = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("ess: negative or NaN weight");
    sum += w;
    sumsq += w * w;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("ess: weights are not normalized");
  double value = 1.0 / sumsq;
  return std::clamp(value, 1.0, static_cast<double>(weights.size()));
}

double weighted_quantile(std::span<const double> values,
                         std::span<const double> weights, double p) {
  if (values.empty() || values.size() != weights.size())
    throw std::invalid_argument(
        "weighted_quantile: values and weights must have equal, nonzero size");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("weighted_quantile: p must lie in [0, 1]");
  for (double v : values)
    if (std::isnan(v))
      throw std::invalid_argument("weighted_quantile: NaN value");

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return values[a] < values[b];
                   });
  double cum = 0.0;
  for (std::size_t idx : order) {
    cum += weights[idx];
    if (cum >= p) return values[idx];
  }
  // Cumulative sum fell a rounding error short of p; the largest value is
  // the right answer.
  return values[order.back()];
}

}  // namespace gpc
