#include "grs/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "grs/rng.hpp"

namespace grs {

std::vector<double> epsilon_schedule(const SamplerConfig& config, double epsilon_hat) {
  if (epsilon_hat < 0.0) throw std::invalid_argument("epsilon_hat must be >= 0");
  if (epsilon_hat == 0.0) return {};

  std::vector<double> eps;
  switch (config.schedule) {
    case ScheduleKind::linear: {
      if (config.levels < 1) throw std::invalid_argument("levels must be >= 1");
      for (int i = 1; i <= config.levels; ++i) {
        eps.push_back(epsilon_hat * static_cast<double>(i) /
                      static_cast<double>(config.levels));
      }
      eps.back() = epsilon_hat;  // exact, no rounding residue
      break;
    }
    case ScheduleKind::geometric: {
      if (!(config.epsilon_start > 0.0)) {
        throw std::invalid_argument("geometric schedule needs epsilon_start > 0");
      }
      if (!(config.gamma > 1.0)) throw std::invalid_argument("gamma must be > 1");
      double e = config.epsilon_start;
      while (e < epsilon_hat) {
        eps.push_back(e);
        e *= config.gamma;
      }
      if (eps.empty() || eps.back() < epsilon_hat) eps.push_back(epsilon_hat);
      eps.back() = std::min(eps.back(), epsilon_hat);
      break;
    }
    case ScheduleKind::explicit_list: {
      eps = config.explicit_schedule;
      if (eps.empty()) throw std::invalid_argument("explicit schedule is empty");
      for (std::size_t i = 0; i < eps.size(); ++i) {
        if (!(eps[i] > 0.0)) throw std::invalid_argument("schedule values must be > 0");
        if (i > 0 && eps[i] <= eps[i - 1]) {
          throw std::invalid_argument("schedule must be strictly increasing");
        }
      }
      if (eps.back() != epsilon_hat) {
        throw std::invalid_argument("explicit schedule must end at epsilon_hat");
      }
      break;
    }
  }

  if (config.samples_per_level > 1) {
    std::vector<double> dense;
    double prev = 0.0;
    for (double e : eps) {
      for (int j = 1; j <= config.samples_per_level; ++j) {
        dense.push_back(prev + (e - prev) * static_cast<double>(j) /
                                   static_cast<double>(config.samples_per_level));
      }
      dense.back() = e;
      prev = e;
    }
    eps = std::move(dense);
  }
  return eps;
}

LineSearchResult band_target_search(const std::function<double(double)>& loss_at,
                                    double ref_loss, double target, double tol_abs,
                                    const LineSearchParams& params, double start_lambda,
                                    double known_below) {
  LineSearchResult res;
  auto delta = [&](double lam) {
    ++res.evals;
    const double loss = loss_at(lam);
    if (!std::isfinite(loss)) {
      throw std::runtime_error("non-finite loss during line search");
    }
    return loss - ref_loss;
  };
  auto accept = [&](double lam, double d) {
    res.found = true;
    res.lambda = lam;
    res.loss = ref_loss + d;
  };

  // Grow lambda until the loss increase reaches the acceptance window.
  double lo_lam = known_below;
  double lam = std::max(start_lambda, params.initial_lambda);
  double d = delta(lam);
  int doublings = 0;
  while (d < target - tol_abs) {
    lo_lam = lam;
    if (++doublings > params.max_doublings) return res;  // flat direction
    lam *= params.growth;
    d = delta(lam);
  }
  if (d <= target) {
    accept(lam, d);
    return res;
  }

  // Bisect [lo_lam, lam]: delta(lo_lam) < target - tol, delta(lam) > target.
  double hi_lam = lam;
  for (int it = 0; it < params.max_bisections; ++it) {
    const double mid = 0.5 * (lo_lam + hi_lam);
    const double dm = delta(mid);
    if (dm < target - tol_abs) {
      lo_lam = mid;
    } else if (dm > target) {
      hi_lam = mid;
    } else {
      accept(mid, dm);
      return res;
    }
    if (hi_lam - lo_lam <= 1e-16 * hi_lam) break;  // interval exhausted
  }
  // Discontinuous losses can leave the window unreachable; report honestly.
  return res;
}

LineSearchResult line_search_step(const Predictor& ref, const Dataset& eval_data,
                                  const SubsetIndex& direction, int sign,
                                  double target_abs, double theta_star, LossKind kind,
                                  const LineSearchParams& params, double ref_loss) {
  const double tol_abs = params.bisect_tol * std::max(ref_loss, theta_star);
  auto loss_at = [&](double lam) {
    Perturbation pert = Perturbation::identity(eval_data.p());
    for (std::uint32_t col : direction.indices()) {
      pert.tau[col] = 1.0 + static_cast<double>(sign) * lam;
    }
    return empirical_loss(ref.predict(perturb_columns(eval_data.x, pert)), eval_data.y,
                          kind);
  };
  return band_target_search(loss_at, ref_loss, target_abs, tol_abs, params,
                            params.initial_lambda, 0.0);
}

namespace {

std::vector<std::pair<SubsetIndex, int>> direction_list(std::size_t p,
                                                        const SamplerConfig& sconfig) {
  std::vector<std::pair<SubsetIndex, int>> dirs;
  for (const auto& s : subset_family(p, sconfig.direction_order)) {
    if (sconfig.signs != SignPolicy::minus) dirs.emplace_back(s, +1);
    if (sconfig.signs != SignPolicy::plus) dirs.emplace_back(s, -1);
  }
  return dirs;
}

}  // namespace

GrsResult grs_sample(std::shared_ptr<const Predictor> reference, const Dataset& eval_data,
                     const RashomonConfig& rconfig, const SamplerConfig& sconfig,
                     const std::vector<SubsetIndex>& attribution_subsets,
                     const AttributionEstimator& estimator) {
  eval_data.validate();
  const double ref_loss =
      empirical_loss(reference->predict(eval_data.x), eval_data.y, rconfig.loss_kind);
  if (!std::isfinite(ref_loss)) throw std::runtime_error("reference loss is not finite");

  std::string warning;
  const RashomonConfig cfg = effective_config(rconfig, ref_loss, &warning);
  const double theta_star = rashomon_threshold(cfg, ref_loss);

  AttributionSet ref_attr = attribution_set(*reference, eval_data, attribution_subsets,
                                            cfg.loss_kind, estimator, "reference");

  GrsResult result{RashomonSubset(reference, cfg, ref_loss, std::move(ref_attr)),
                   {},
                   {},
                   epsilon_schedule(sconfig, cfg.epsilon_hat),
                   cfg,
                   warning};
  if (result.schedule.empty()) return result;  // epsilon_hat = 0: {f_ref} only

  const auto dirs = direction_list(eval_data.p(), sconfig);
  const double tol_abs = sconfig.line_search.bisect_tol * std::max(ref_loss, theta_star);

  // Walk each direction through the schedule. Candidates are collected
  // per-level and admitted level-major so the member order is canonical
  // (level, direction, sign) and schedule prefixes reproduce exactly.
  struct Candidate {
    std::size_t dir_idx;
    int level;
    double epsilon;
    double lambda;
    double loss;
  };
  std::vector<std::vector<Candidate>> per_level(result.schedule.size());

  for (std::size_t di = 0; di < dirs.size(); ++di) {
    const SubsetIndex& direction = dirs[di].first;
    const int sign = dirs[di].second;
    double lambda = sconfig.line_search.initial_lambda;
    double known_below = 0.0;
    for (std::size_t li = 0; li < result.schedule.size(); ++li) {
      const double eps_i = result.schedule[li];
      const double target = cfg.boundary == BoundaryMode::multiplicative
                                ? eps_i * ref_loss
                                : eps_i;
      if (target <= 2.0 * tol_abs) continue;  // degenerate level, nothing to hit
      auto loss_at = [&](double lam) {
        Perturbation pert = Perturbation::identity(eval_data.p());
        for (std::uint32_t col : direction.indices()) {
          pert.tau[col] = 1.0 + static_cast<double>(sign) * lam;
        }
        return empirical_loss(reference->predict(perturb_columns(eval_data.x, pert)),
                              eval_data.y, cfg.loss_kind);
      };
      const LineSearchResult found =
          band_target_search(loss_at, ref_loss, target, tol_abs, sconfig.line_search,
                             lambda, known_below);
      if (!found.found) {
        result.flat_directions.push_back(
            FlatDirection{direction, sign, static_cast<int>(li) + 1});
        break;
      }
      per_level[li].push_back(Candidate{di, static_cast<int>(li) + 1, eps_i,
                                        found.lambda, found.loss});
      result.trajectory.push_back(TrajectoryPoint{direction, sign,
                                                  static_cast<int>(li) + 1, eps_i,
                                                  found.lambda, found.loss});
      known_below = lambda = found.lambda;
    }
  }

  std::size_t admitted = 0;
  for (const auto& level : per_level) {
    for (const auto& cand : level) {
      if (sconfig.max_models != 0 && admitted >= sconfig.max_models) break;
      const auto& [direction, sign] = dirs[cand.dir_idx];
      SampledModel model;
      model.pert = Perturbation::identity(eval_data.p());
      for (std::uint32_t col : direction.indices()) {
        model.pert.tau[col] = 1.0 + static_cast<double>(sign) * cand.lambda;
      }
      model.source = SampleSource{SampleSource::Kind::direction, direction, sign,
                                  cand.level, ""};
      model.ref_loss_value = cand.loss;
      PerturbedPredictor member(reference, model.pert);
      const std::string id = model.source.id(eval_data.feature_names);
      if (result.subset.admit(std::move(model), [&]() {
            return attribution_set(member, eval_data, attribution_subsets,
                                   cfg.loss_kind, estimator, id);
          }) == AdmitStatus::admitted) {
        ++admitted;
      }
    }
  }
  return result;
}

RashomonSubset baseline_random_input(std::shared_ptr<const Predictor> reference,
                                     const Dataset& eval_data,
                                     const RashomonConfig& rconfig, int n_candidates,
                                     double scale, std::uint64_t seed,
                                     const std::vector<SubsetIndex>& attribution_subsets,
                                     const AttributionEstimator& estimator) {
  if (n_candidates < 1) throw std::invalid_argument("need n_candidates >= 1");
  if (!(scale >= 0.0)) throw std::invalid_argument("scale must be >= 0");
  eval_data.validate();
  const double ref_loss =
      empirical_loss(reference->predict(eval_data.x), eval_data.y, rconfig.loss_kind);
  const RashomonConfig cfg = effective_config(rconfig, ref_loss);

  AttributionSet ref_attr = attribution_set(*reference, eval_data, attribution_subsets,
                                            cfg.loss_kind, estimator, "reference");
  RashomonSubset subset(reference, cfg, ref_loss, std::move(ref_attr));

  Rng rng(seed);
  const std::size_t p = eval_data.p();
  for (int k = 0; k < n_candidates; ++k) {
    SampledModel model;
    model.pert = Perturbation::identity(p);
    for (std::size_t j = 0; j < p; ++j) {
      model.pert.tau[j] = 1.0 + rng.uniform(-scale, scale);
    }
    model.source = SampleSource{SampleSource::Kind::baseline, SubsetIndex(), +1, 0,
                                "random-input:" + std::to_string(k)};
    PerturbedPredictor member(reference, model.pert);
    model.ref_loss_value =
        empirical_loss(member.predict(eval_data.x), eval_data.y, cfg.loss_kind);
    const std::string id = model.source.label;
    subset.admit(std::move(model), [&]() {
      return attribution_set(member, eval_data, attribution_subsets, cfg.loss_kind,
                             estimator, id);
    });
  }
  return subset;
}

RashomonSubset baseline_random_weights(std::shared_ptr<const Predictor> reference,
                                       const Dataset& eval_data,
                                       const RashomonConfig& rconfig, int n_candidates,
                                       double scale, std::uint64_t seed,
                                       const std::vector<SubsetIndex>& attribution_subsets,
                                       const AttributionEstimator& estimator) {
  const auto* mlp = dynamic_cast<const MlpModel*>(reference.get());
  if (mlp == nullptr) {
    throw std::invalid_argument("baseline_random_weights needs an MLP reference");
  }
  if (n_candidates < 1) throw std::invalid_argument("need n_candidates >= 1");
  if (!(scale >= 0.0)) throw std::invalid_argument("scale must be >= 0");
  eval_data.validate();
  const double ref_loss =
      empirical_loss(reference->predict(eval_data.x), eval_data.y, rconfig.loss_kind);
  const RashomonConfig cfg = effective_config(rconfig, ref_loss);

  AttributionSet ref_attr = attribution_set(*reference, eval_data, attribution_subsets,
                                            cfg.loss_kind, estimator, "reference");
  RashomonSubset subset(reference, cfg, ref_loss, std::move(ref_attr));

  Rng rng(seed);
  for (int k = 0; k < n_candidates; ++k) {
    auto layers = mlp->layers();
    for (auto& layer : layers) {
      for (std::size_t i = 0; i < layer.w.size(); ++i) {
        layer.w.data()[i] += scale * rng.normal();
      }
      for (auto& b : layer.b) b += scale * rng.normal();
    }
    auto noised = std::make_shared<MlpModel>(std::move(layers), mlp->x_mean(),
                                             mlp->x_std(), mlp->y_mean(), mlp->y_std(),
                                             mlp->squash_targets(), mlp->trained_loss());
    SampledModel model;
    model.pert = Perturbation::identity(eval_data.p());
    model.source = SampleSource{SampleSource::Kind::baseline, SubsetIndex(), +1, 0,
                                "random-weight:" + std::to_string(k)};
    model.override_model = noised;
    model.ref_loss_value =
        empirical_loss(noised->predict(eval_data.x), eval_data.y, cfg.loss_kind);
    const std::string id = model.source.label;
    subset.admit(std::move(model), [&]() {
      return attribution_set(*noised, eval_data, attribution_subsets, cfg.loss_kind,
                             estimator, id);
    });
  }
  return subset;
}

ConvergenceReport convergence_report(const GrsResult& result, const RashomonConfig& rconfig,
                                     double ref_loss) {
  const RashomonConfig cfg = effective_config(rconfig, ref_loss);
  const double bound = ref_loss + rashomon_threshold(cfg, ref_loss);

  ConvergenceReport report;
  // Group the trajectory by (direction, sign), preserving walk order.
  std::vector<std::pair<SubsetIndex, int>> seen;
  for (const auto& pt : result.trajectory) {
    if (pt.loss > bound) ++report.boundary_violations;
    const auto key = std::make_pair(pt.direction, pt.sign);
    auto it = std::find(seen.begin(), seen.end(), key);
    if (it == seen.end()) {
      seen.push_back(key);
      report.directions.push_back(ConvergenceReport::DirectionGap{
          pt.direction, pt.sign, pt.loss, std::fabs(pt.loss - bound), 1, false});
    } else {
      auto& gap = report.directions[static_cast<std::size_t>(it - seen.begin())];
      gap.final_loss = pt.loss;
      gap.gap = std::fabs(pt.loss - bound);
      ++gap.levels_reached;
    }
  }
  for (const auto& flat : result.flat_directions) {
    const auto key = std::make_pair(flat.direction, flat.sign);
    auto it = std::find(seen.begin(), seen.end(), key);
    if (it == seen.end()) {
      seen.push_back(key);
      report.directions.push_back(ConvergenceReport::DirectionGap{
          flat.direction, flat.sign, ref_loss, 0.0, 0, true});
    } else {
      report.directions[static_cast<std::size_t>(it - seen.begin())].flat = true;
    }
  }
  for (const auto& d : report.directions) {
    if (!d.flat) report.max_gap = std::max(report.max_gap, d.gap);
  }
  return report;
}

}  // namespace grs
