#include "grs/rashomon.hpp"

#include <cmath>
#include <stdexcept>

#include "grs/metrics.hpp"

namespace grs {

double rashomon_threshold(const RashomonConfig& config, double ref_loss) {
  if (ref_loss < 0.0) throw std::invalid_argument("reference loss must be >= 0");
  if (config.epsilon_hat < 0.0) throw std::invalid_argument("epsilon must be >= 0");
  return config.boundary == BoundaryMode::multiplicative
             ? config.epsilon_hat * ref_loss
             : config.epsilon_hat;
}

bool is_member(double candidate_loss, double ref_loss, const RashomonConfig& config) {
  return candidate_loss <= ref_loss + rashomon_threshold(config, ref_loss);
}

RashomonConfig effective_config(const RashomonConfig& config, double ref_loss,
                                std::string* warn) {
  RashomonConfig out = config;
  if (config.boundary == BoundaryMode::multiplicative && ref_loss == 0.0 &&
      config.epsilon_hat > 0.0) {
    out.boundary = BoundaryMode::additive;
    if (warn != nullptr) {
      *warn =
          "reference loss is 0: multiplicative boundary collapses, "
          "switching to the additive boundary (threshold = epsilon)";
    }
  }
  return out;
}

std::string SampleSource::id(const std::vector<std::string>& feature_names) const {
  switch (kind) {
    case Kind::reference:
      return "reference";
    case Kind::direction:
      return "grs:" + direction.display(feature_names) + (sign >= 0 ? ":+" : ":-") +
             ":L" + std::to_string(level);
    case Kind::baseline:
      return label;
  }
  return "?";
}

RashomonSubset::RashomonSubset(std::shared_ptr<const Predictor> reference,
                               RashomonConfig config, double ref_loss,
                               AttributionSet reference_attribution)
    : reference_(std::move(reference)), config_(config), ref_loss_(ref_loss) {
  if (!(ref_loss_ >= 0.0) || !std::isfinite(ref_loss_)) {
    throw std::invalid_argument("reference loss must be finite and >= 0");
  }
  SampledModel ref_member;
  ref_member.pert = Perturbation::identity(reference_->input_dim());
  ref_member.source.kind = SampleSource::Kind::reference;
  ref_member.ref_loss_value = ref_loss_;
  members_.push_back(std::move(ref_member));
  attributions_.push_back(std::move(reference_attribution));
}

AdmitStatus RashomonSubset::admit(SampledModel candidate,
                                  const std::function<AttributionSet()>& attribution_fn) {
  ++n_searched_;
  if (!std::isfinite(candidate.ref_loss_value) || candidate.ref_loss_value < 0.0) {
    throw std::invalid_argument("candidate loss must be finite and >= 0");
  }
  if (!is_member(candidate.ref_loss_value, ref_loss_, config_)) {
    ++rejected_boundary_;
    return AdmitStatus::rejected_boundary;
  }
  AttributionSet attribution = attribution_fn();
  if (!attribution.same_keys(attributions_.front())) {
    throw std::invalid_argument("candidate attribution keys mismatch the container");
  }
  for (const auto& existing : attributions_) {
    if (chebyshev_distance(attribution, existing) <= config_.sparsity_tolerance) {
      ++rejected_redundant_;
      return AdmitStatus::rejected_redundant;
    }
  }
  members_.push_back(std::move(candidate));
  attributions_.push_back(std::move(attribution));
  return AdmitStatus::admitted;
}

AdmitStatus RashomonSubset::admit(SampledModel candidate, AttributionSet attribution) {
  return admit(std::move(candidate),
               [&attribution]() -> AttributionSet { return std::move(attribution); });
}

std::shared_ptr<const Predictor> RashomonSubset::member_predictor(std::size_t i) const {
  const SampledModel& m = members_.at(i);
  if (m.override_model) return m.override_model;
  if (m.pert.is_identity()) return reference_;
  return std::make_shared<PerturbedPredictor>(reference_, m.pert);
}

double RashomonSubset::ser() const {
  if (n_searched_ == 0) return 1.0;
  return static_cast<double>(members_.size() - 1) / static_cast<double>(n_searched_);
}

}  // namespace grs
