#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "grs/attribution.hpp"
#include "grs/dataset.hpp"
#include "grs/mlp.hpp"
#include "grs/rashomon.hpp"

namespace grs {

struct LineSearchParams {
  double initial_lambda = 1e-4;
  double growth = 2.0;
  int max_doublings = 60;
  // Acceptance window below the level target, relative to max(L_ref, theta*).
  double bisect_tol = 1e-6;
  int max_bisections = 200;
};

enum class ScheduleKind { linear, geometric, explicit_list };
enum class SignPolicy { plus, minus, both };

struct SamplerConfig {
  int levels = 5;
  ScheduleKind schedule = ScheduleKind::linear;
  double gamma = 2.0;           // geometric only
  double epsilon_start = 0.0;   // geometric only; must be > 0
  std::vector<double> explicit_schedule;
  int direction_order = 2;      // 1: singleton walks, 2: singletons + pairs
  SignPolicy signs = SignPolicy::both;
  int samples_per_level = 1;
  LineSearchParams line_search;
  std::size_t max_models = 0;   // 0 = unlimited
  std::uint64_t seed = 0;       // feeds the admit-time attribution estimator
};

// Strictly increasing epsilon values ending exactly at epsilon_hat.
std::vector<double> epsilon_schedule(const SamplerConfig& config, double epsilon_hat);

struct LineSearchResult {
  bool found = false;
  double lambda = 0.0;
  double loss = 0.0;  // achieved loss at lambda
  int evals = 0;
};

// 1-D search over a monotone-bracketed loss curve: find lambda whose loss
// increase over ref_loss lands in [target - tol_abs, target]. Approaching the
// target from below keeps every accepted step inside the Rashomon boundary
// and makes the accepted point independent of the boundary value itself
// (schedule prefixes then reproduce exactly). `start_lambda` seeds the
// bracketing; `known_below` must satisfy delta(known_below) < target - tol.
LineSearchResult band_target_search(const std::function<double(double)>& loss_at,
                                    double ref_loss, double target, double tol_abs,
                                    const LineSearchParams& params, double start_lambda,
                                    double known_below);

// Spec-shaped wrapper: scale the columns of `direction` by (1 + sign*lambda)
// and search the loss curve on the evaluation data.
LineSearchResult line_search_step(const Predictor& ref, const Dataset& eval_data,
                                  const SubsetIndex& direction, int sign,
                                  double target_abs, double theta_star, LossKind kind,
                                  const LineSearchParams& params, double ref_loss);

struct TrajectoryPoint {
  SubsetIndex direction;
  int sign = +1;
  int level = 0;       // 1-based schedule level
  double epsilon = 0;  // schedule value at the level
  double lambda = 0;
  double loss = 0;
};

struct FlatDirection {
  SubsetIndex direction;
  int sign = +1;
  int first_flat_level = 1;  // level at which the walk stopped
};

struct GrsResult {
  RashomonSubset subset;
  std::vector<TrajectoryPoint> trajectory;
  std::vector<FlatDirection> flat_directions;
  std::vector<double> schedule;
  RashomonConfig effective;  // boundary mode after any degenerate fallback
  std::string warning;
};

// The GRS sampler: per (direction, sign), walk the epsilon schedule with the
// line search and admit one model per level; members are admitted in
// (level, direction, sign) order, so a schedule prefix yields exactly the
// leading members of the full run.
GrsResult grs_sample(std::shared_ptr<const Predictor> reference, const Dataset& eval_data,
                     const RashomonConfig& rconfig, const SamplerConfig& sconfig,
                     const std::vector<SubsetIndex>& attribution_subsets,
                     const AttributionEstimator& estimator);

// Random tau baseline: tau_i ~ 1 + U(-scale, scale) per feature.
RashomonSubset baseline_random_input(std::shared_ptr<const Predictor> reference,
                                     const Dataset& eval_data,
                                     const RashomonConfig& rconfig, int n_candidates,
                                     double scale, std::uint64_t seed,
                                     const std::vector<SubsetIndex>& attribution_subsets,
                                     const AttributionEstimator& estimator);

// Gaussian weight-noise baseline for MLP references.
RashomonSubset baseline_random_weights(std::shared_ptr<const Predictor> reference,
                                       const Dataset& eval_data,
                                       const RashomonConfig& rconfig, int n_candidates,
                                       double scale, std::uint64_t seed,
                                       const std::vector<SubsetIndex>& attribution_subsets,
                                       const AttributionEstimator& estimator);

struct ConvergenceReport {
  struct DirectionGap {
    SubsetIndex direction;
    int sign = +1;
    double final_loss = 0.0;
    double gap = 0.0;  // |final loss - (ref_loss + theta*)|
    int levels_reached = 0;
    bool flat = false;
  };
  std::vector<DirectionGap> directions;
  double max_gap = 0.0;  // over non-flat directions
  std::size_t boundary_violations = 0;
};

ConvergenceReport convergence_report(const GrsResult& result, const RashomonConfig& rconfig,
                                     double ref_loss);

}  // namespace grs
