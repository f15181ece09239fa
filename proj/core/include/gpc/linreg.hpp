// Homoskedastic Gaussian linear regression with a normal prior on the
// coefficients and an inverse-gamma prior on the error variance. Tempering
// by eta keeps both full conditionals conjugate:
//
//   beta | sigma2 ~ N(V eta X'y / sigma2, V),  V = (eta X'X / sigma2 + I/varsigma2)^{-1}
//   sigma2 | beta ~ IG(rho1 + eta N / 2, rho2 + eta SSR(beta) / 2)
//
// Parameter layout: theta = (beta_0 .. beta_{K-1}, sigma2).

#pragma once

#include "gpc/model.hpp"

namespace gpc {

struct LinRegHyper {
  double coef_prior_var = 100.0;  // varsigma^2
  double ig_shape = 1.0;          // rho1
  double ig_rate = 0.025;         // rho2
};

class LinRegModel : public Model {
 public:
  // coverage_coords defaults to the beta coordinates, excluding sigma2.
  LinRegModel(const Dataset& data, LinRegHyper hyper = {},
              std::vector<int> coverage_coords = {});

  int param_dim() const override { return k_ + 1; }
  std::vector<std::string> param_names() const override;
  const std::vector<int>& coverage_coords() const override {
    return coverage_;
  }

  double log_pseudolik(std::span<const double> theta,
                       const DatasetView& view) const override;
  double log_prior(std::span<const double> theta) const override;

  ParticleSet simulate(double eta, const DatasetView& view, int num_draws,
                       int warmup, RandomStream& rng) const override;

  const LinRegHyper& hyper() const { return hyper_; }

 private:
  const Dataset* data_;
  int k_;  // covariate count, intercept included
  LinRegHyper hyper_;
  std::vector<int> coverage_;
};

}  // namespace gpc
