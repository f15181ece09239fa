#include "gpc/calibrate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "gpc/parallel.hpp"

namespace gpc {

SaStep sa_next_eta(std::span<const double> eta_history, int l, double c_hat,
                   double alpha, KestenVariant variant) {
  if (eta_history.empty())
    throw std::invalid_argument("sa_next_eta: empty eta history");
  if (l < 1) throw std::invalid_argument("sa_next_eta: l must be >= 1");
  if (!(c_hat >= 0.0 && c_hat <= 1.0))
    throw std::invalid_argument("sa_next_eta: c_hat must lie in [0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("sa_next_eta: alpha must lie in (0, 1)");

  std::size_t s = eta_history.size();
  if (s >= 3) {
    double d1 = eta_history[s - 2] - eta_history[s - 3];
    double d2 = eta_history[s - 1] - eta_history[s - 2];
    bool direction_change = d1 * d2 < 0.0;
    bool increment = direction_change;
    if (variant == KestenVariant::text) increment = increment && c_hat < 1.0;
    if (increment) ++l;
  }
  double eta = eta_history[s - 1];
  double step = std::pow(static_cast<double>(l), -0.51);
  double next = eta + step * (c_hat - (1.0 - alpha));
  next = std::clamp(next, kEtaMin, kEtaMax);
  return {next, l};
}

MinEssStar min_ess_star(std::span<const ParticleSet> psets, double eta_prime) {
  if (psets.size() < 2)
    throw std::invalid_argument(
        "min_ess_star: need replicate 0 plus at least one bootstrap replicate");
  MinEssStar out{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t b = 0; b < psets.size(); ++b) {
    double e = ess(reweight(psets[b], eta_prime));
    if (b == 0)
      out.replicate0 = e;
    else
      out.min_over_bootstrap = std::min(out.min_over_bootstrap, e);
  }
  return out;
}

namespace {

struct CoverageEval {
  double c_hat;
  std::vector<double> theta_hat;
  CredibleSet box0;  // replicate-0 box, reported with the result
};

// theta_hat from replicate 0, credible boxes from replicates 1..B, and the
// fraction of boxes containing theta_hat.
CoverageEval evaluate_coverage(std::span<const ParticleSet> psets,
                               const std::vector<std::vector<double>>& weights,
                               std::span<const int> coords, double alpha) {
  CoverageEval eval;
  eval.theta_hat = weighted_mean(psets[0], weights[0]);
  eval.box0 = credible_box(psets[0], weights[0], alpha, coords);
  std::size_t num_boot = psets.size() - 1;
  std::vector<CredibleSet> boxes(num_boot);
  for (std::size_t b = 1; b < psets.size(); ++b)
    boxes[b - 1] = credible_box(psets[b], weights[b], alpha, coords);
  eval.c_hat = estimate_coverage(eval.theta_hat, boxes);
  return eval;
}

enum class Engine { sa, wp };

CalibrationResult run_calibration(const Model& model, const Dataset& data,
                                  const BootstrapPlan& plan,
                                  const CalibConfig& cfg,
                                  std::uint64_t master_seed, Engine engine) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw std::invalid_argument("calibrate: alpha must lie in (0, 1)");
  if (!(cfg.eps > 0.0)) throw std::invalid_argument("calibrate: eps must be positive");
  if (cfg.num_particles < 2 || cfg.warmup < 0)
    throw std::invalid_argument("calibrate: bad draw counts");
  if (!(cfg.eta0 > 0.0)) throw std::invalid_argument("calibrate: eta0 must be positive");
  if (cfg.max_outer < 1 || cfg.max_inner < 1)
    throw std::invalid_argument("calibrate: iteration budgets must be >= 1");
  if (!(cfg.ess_frac > 0.0 && cfg.ess_frac < 1.0))
    throw std::invalid_argument("calibrate: ess_frac must lie in (0, 1)");

  auto start = std::chrono::steady_clock::now();
  int num_rep = plan.b() + 1;
  auto coords = model.coverage_coords();

  // One persistent stream per replicate; draws continue across rounds, so
  // results do not depend on the worker count.
  std::vector<RandomStream> streams;
  streams.reserve(num_rep);
  for (int b = 0; b < num_rep; ++b)
    streams.emplace_back(master_seed, static_cast<std::uint64_t>(b));
  std::vector<DatasetView> views;
  views.reserve(num_rep);
  for (int b = 0; b < num_rep; ++b) views.push_back(plan.view(data, b));

  CalibrationResult result;
  result.master_seed = master_seed;
  result.eta_history.push_back(std::clamp(cfg.eta0, kEtaMin, kEtaMax));

  int kesten_l = 1;
  std::vector<ParticleSet> psets(num_rep);
  std::vector<std::vector<double>> weights(num_rep);

  auto finish = [&](double eta_hat, bool converged, int outer,
                    double final_c_hat, std::optional<CredibleSet> box) {
    result.eta_hat = eta_hat;
    result.converged = converged;
    result.outer_iterations = outer;
    result.final_c_hat = final_c_hat;
    result.final_box = std::move(box);
    result.wall_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - start)
                         .count();
    return result;
  };

  for (int s = 1; s <= cfg.max_outer; ++s) {
    double eta_s = result.eta_history.back();

    parallel_for(num_rep, cfg.workers, [&](int b) {
      try {
        psets[b] = model.simulate(eta_s, views[b], cfg.num_particles,
                                  cfg.warmup, streams[b]);
        weights[b] = psets[b].normalized_weights();
      } catch (const std::exception& e) {
        throw std::runtime_error("replicate " + std::to_string(b) + ": " +
                                 e.what());
      }
    });
    result.total_sweeps +=
        static_cast<long long>(num_rep) * (cfg.num_particles + cfg.warmup);

    CoverageEval eval = evaluate_coverage(psets, weights, coords, cfg.alpha);
    result.c_hat_history.push_back(eval.c_hat);

    if (std::abs(eval.c_hat - (1.0 - cfg.alpha)) < cfg.eps)
      return finish(eta_s, true, s, eval.c_hat, std::move(eval.box0));
    if (s == cfg.max_outer)
      return finish(eta_s, false, s, eval.c_hat, std::move(eval.box0));

    if (engine == Engine::sa) {
      SaStep step =
          sa_next_eta(result.eta_history, kesten_l, eval.c_hat, cfg.alpha,
                      cfg.kesten);
      kesten_l = step.l;
      result.eta_history.push_back(step.eta_next);
    } else {
      WpInnerOutcome inner =
          gpc_wp_inner(psets, coords, eta_s, eval.c_hat, cfg, s,
                       result.inner_trace);
      if (inner.accepted)
        return finish(inner.eta, true, s,
                      result.inner_trace.back().c_hat, std::move(inner.box));
      result.eta_history.push_back(inner.eta);
    }
  }
  // Unreachable: the s == max_outer branch returns.
  throw std::logic_error("calibrate: fell out of the outer loop");
}

}  // namespace

WpInnerOutcome gpc_wp_inner(std::span<const ParticleSet> psets,
                            std::span<const int> coverage_coords, double eta_s,
                            double c_hat_at_eta_s, const CalibConfig& cfg,
                            int outer_s, std::vector<InnerTrialRecord>& trace) {
  if (psets.size() < 2)
    throw std::invalid_argument("gpc_wp_inner: need at least two replicates");
  double ess_threshold = cfg.ess_frac * psets[0].num_particles;

  // Local trajectory and Kesten counter; both restart with each inner
  // optimization.
  std::vector<double> trajectory{eta_s};
  int l = 1;
  double c_current = c_hat_at_eta_s;
  std::vector<std::vector<double>> weights(psets.size());

  for (int u = 1; u <= cfg.max_inner; ++u) {
    SaStep step = sa_next_eta(trajectory, l, c_current, cfg.alpha, cfg.kesten);
    l = step.l;
    double eta_trial = step.eta_next;
    trajectory.push_back(eta_trial);

    double min_ess = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < psets.size(); ++b) {
      weights[b] = reweight(psets[b], eta_trial);
      if (b > 0) min_ess = std::min(min_ess, ess(weights[b]));
    }
    double ess0 = ess(weights[0]);

    CoverageEval eval =
        evaluate_coverage(psets, weights, coverage_coords, cfg.alpha);
    trace.push_back({outer_s, u, eta_trial, eval.c_hat, min_ess, ess0});

    if (std::abs(eval.c_hat - (1.0 - cfg.alpha)) < cfg.eps &&
        min_ess >= ess_threshold)
      return {true, eta_trial, u, std::move(eval.box0)};
    if (min_ess < ess_threshold) return {false, eta_trial, u, std::nullopt};
    c_current = eval.c_hat;
  }
  // Inner budget exhausted; hand the last trial back to the outer loop.
  return {false, trajectory.back(), cfg.max_inner, std::nullopt};
}

CalibrationResult gpc_sa_run(const Model& model, const Dataset& data,
                             const BootstrapPlan& plan, const CalibConfig& cfg,
                             std::uint64_t master_seed) {
  return run_calibration(model, data, plan, cfg, master_seed, Engine::sa);
}

CalibrationResult gpc_wp_run(const Model& model, const Dataset& data,
                             const BootstrapPlan& plan, const CalibConfig& cfg,
                             std::uint64_t master_seed) {
  return run_calibration(model, data, plan, cfg, master_seed, Engine::wp);
}

nlohmann::json CalibrationResult::to_json() const {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& t : inner_trace)
    trace.push_back({{"s", t.outer_s},
                     {"u", t.u},
                     {"eta", t.eta_trial},
                     {"c_hat", t.c_hat},
                     {"min_ess_star", t.min_ess_star},
                     {"ess_replicate0", t.ess_replicate0}});
  nlohmann::json j{{"eta_hat", eta_hat},
                   {"converged", converged ? 1 : 0},
                   {"outer_iterations", outer_iterations},
                   {"total_sweeps", total_sweeps},
                   {"wall_ms", wall_ms},
                   {"final_c_hat", final_c_hat},
                   {"eta_history", eta_history},
                   {"c_hat_history", c_hat_history},
                   {"inner_trace", std::move(trace)},
                   {"seeds", {{"master_seed", master_seed}}}};
  if (final_box) {
    j["final_box"] = {{"level", final_box->level},
                      {"coords", final_box->coords},
                      {"lo", final_box->lo},
                      {"hi", final_box->hi}};
  }
  return j;
}

}  // namespace gpc
