// Support vector classifier as a Gibbs posterior: the pseudolikelihood is
// exp(-2 sum_i max(0, 1 - y_i x_i'theta)) and the prior on theta_k is
// Laplace(0, nu * sigma_k) with sigma_k the k-th feature scale.
//
// The sampler augments with per-observation latents lambda_i and
// per-coefficient latents omega_k. With v_i = eta (1 - y_i x_i'theta):
//
//   1/lambda_i | theta        ~ InverseGaussian(1/|v_i|, 1)
//   theta | lambda, omega     ~ N(P^{-1} r, P^{-1}),
//       P = sum_i eta^2 x_i x_i' / lambda_i + diag(1/omega_k),
//       r = sum_i eta y_i x_i (eta + lambda_i) / lambda_i
//   1/omega_k | theta_k       ~ InverseGaussian(1/(s_k |theta_k|), 1/s_k^2),
//       s_k = nu * sigma_k
//
// Parameter layout: theta in R^K, all coordinates covered by default.

#pragma once

#include "gpc/model.hpp"

namespace gpc {

struct SvmHyper {
  double laplace_scale = 10.0;  // nu
};

class SvmModel : public Model {
 public:
  SvmModel(const Dataset& data, SvmHyper hyper = {},
           std::vector<int> coverage_coords = {});

  int param_dim() const override { return k_; }
  std::vector<std::string> param_names() const override;
  const std::vector<int>& coverage_coords() const override {
    return coverage_;
  }

  double log_pseudolik(std::span<const double> theta,
                       const DatasetView& view) const override;
  double log_prior(std::span<const double> theta) const override;

  ParticleSet simulate(double eta, const DatasetView& view, int num_draws,
                       int warmup, RandomStream& rng) const override;

  const SvmHyper& hyper() const { return hyper_; }

 private:
  const Dataset* data_;
  int k_;
  SvmHyper hyper_;
  std::vector<int> coverage_;
};

}  // namespace gpc
