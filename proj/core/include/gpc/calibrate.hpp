// Learning-rate calibration engines.
//
// Both engines solve c_hat(eta) = 1 - alpha, where c_hat is the bootstrap
// estimate of the coverage probability of the level-(1-alpha) credible box.
// The outer loop simulates every replicate at the current eta, checks the
// termination tolerance, and otherwise picks the next eta:
//
//   - gpc_sa_run: one stochastic-approximation step per simulation round,
//     with Kesten's rule shrinking the step size only when the eta
//     trajectory changes direction.
//   - gpc_wp_run: the weighted-particle inner optimizer runs the same
//     recursion on reweighted particles, consuming no MCMC sweeps, until it
//     either converges or particle degeneracy (min ESS* below the threshold)
//     forces a fresh simulation round.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gpc/bootstrap.hpp"
#include "gpc/credible.hpp"
#include "gpc/model.hpp"

namespace gpc {

// Figure-faithful Kesten increments on any direction change; the text
// variant additionally requires c_hat < 1.
enum class KestenVariant { figure, text };

// eta iterates are clamped here: the recursion can otherwise step through
// zero, and the generalized posterior needs eta > 0.
inline constexpr double kEtaMin = 1e-4;
inline constexpr double kEtaMax = 1e4;

struct SaStep {
  double eta_next;
  int l;
};

// Single stochastic-approximation step with Kesten's rule.
// eta_history holds every accepted value so far (most recent last); the
// direction-change test needs at least three entries.
SaStep sa_next_eta(std::span<const double> eta_history, int l, double c_hat,
                   double alpha, KestenVariant variant = KestenVariant::figure);

struct CalibConfig {
  double alpha = 0.05;
  double eps = 0.005;
  int num_particles = 1000;  // M
  int warmup = 500;
  double eta0 = 1.0;
  int max_outer = 50;
  int max_inner = 100;
  double ess_frac = 0.25;  // inner-loop threshold is ess_frac * M
  KestenVariant kesten = KestenVariant::figure;
  int workers = 0;  // 0 = hardware concurrency
};

struct InnerTrialRecord {
  int outer_s = 0;
  int u = 0;
  double eta_trial = 0.0;
  double c_hat = 0.0;
  double min_ess_star = 0.0;
  double ess_replicate0 = 0.0;
};

struct CalibrationResult {
  double eta_hat = 0.0;
  bool converged = false;  // iota
  int outer_iterations = 0;
  long long total_sweeps = 0;
  double wall_ms = 0.0;
  double final_c_hat = 0.0;
  std::vector<double> eta_history;
  std::vector<double> c_hat_history;
  std::vector<InnerTrialRecord> inner_trace;
  std::uint64_t master_seed = 0;
  // Replicate-0 box at eta_hat, as the method itself computed it (fresh for
  // SA, reweighted for a WP inner acceptance).
  std::optional<CredibleSet> final_box;

  nlohmann::json to_json() const;
};

struct MinEssStar {
  double min_over_bootstrap;  // min over replicates 1..B
  double replicate0;          // monitored, not part of the min
};

// ESS of each replicate's weights hypothetically reweighted to eta_prime.
MinEssStar min_ess_star(std::span<const ParticleSet> psets, double eta_prime);

struct WpInnerOutcome {
  bool accepted = false;  // iota
  double eta = 0.0;       // eta_hat when accepted, else eta_{s+1}
  int trials = 0;
  std::optional<CredibleSet> box;  // replicate-0 box at eta when accepted
};

// Weighted-particle inner optimizer. psets[0] is the original-data
// replicate; c_hat_at_eta_s is the coverage estimate from the fresh
// simulation at eta_s. Appends one record per trial to trace.
WpInnerOutcome gpc_wp_inner(std::span<const ParticleSet> psets,
                            std::span<const int> coverage_coords, double eta_s,
                            double c_hat_at_eta_s, const CalibConfig& cfg,
                            int outer_s, std::vector<InnerTrialRecord>& trace);

CalibrationResult gpc_sa_run(const Model& model, const Dataset& data,
                             const BootstrapPlan& plan, const CalibConfig& cfg,
                             std::uint64_t master_seed);

CalibrationResult gpc_wp_run(const Model& model, const Dataset& data,
                             const BootstrapPlan& plan, const CalibConfig& cfg,
                             std::uint64_t master_seed);

}  // namespace gpc
