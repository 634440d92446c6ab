#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "grs/attribution.hpp"
#include "grs/loss.hpp"
#include "grs/perturbation.hpp"
#include "grs/predictor.hpp"

namespace grs {

enum class BoundaryMode { multiplicative, additive };

struct RashomonConfig {
  double epsilon_hat = 0.1;
  BoundaryMode boundary = BoundaryMode::multiplicative;
  LossKind loss_kind = LossKind::mse;
  // Minimum Chebyshev distance between admitted attribution sets; the default
  // only suppresses exact duplicates.
  double sparsity_tolerance = 1e-9;
};

// Loss budget above the reference: eps*L_ref (multiplicative) or eps (additive).
double rashomon_threshold(const RashomonConfig& config, double ref_loss);

// Boundary-inclusive membership test.
bool is_member(double candidate_loss, double ref_loss, const RashomonConfig& config);

// A multiplicative reference with zero loss has an empty budget for any eps;
// fall back to the additive boundary (optionally warning through `warn`).
RashomonConfig effective_config(const RashomonConfig& config, double ref_loss,
                                std::string* warn = nullptr);

struct SampleSource {
  enum class Kind { reference, direction, baseline };
  Kind kind = Kind::reference;
  SubsetIndex direction;  // direction walks only
  int sign = +1;
  int level = 0;
  std::string label;  // baseline tag ("random-input", ...) and candidate index

  std::string id(const std::vector<std::string>& feature_names) const;
};

// One element of the sampled set. Perturbation-parameterised members reuse
// the reference predictor on a transformed input; baseline weight noise
// carries its own predictor instead.
struct SampledModel {
  Perturbation pert;
  SampleSource source;
  double ref_loss_value = 0.0;
  std::shared_ptr<const Predictor> override_model;
};

enum class AdmitStatus { admitted, rejected_boundary, rejected_redundant };

// The sampled Rashomon set. The reference is always member 0; every admitted
// candidate passed is_member and sits farther than sparsity_tolerance (in
// Chebyshev attribution distance) from all earlier members.
class RashomonSubset {
 public:
  RashomonSubset(std::shared_ptr<const Predictor> reference, RashomonConfig config,
                 double ref_loss, AttributionSet reference_attribution);

  // Membership first, then redundancy against all current members. The
  // attribution set is only requested when the membership check passes.
  AdmitStatus admit(SampledModel candidate,
                    const std::function<AttributionSet()>& attribution_fn);
  AdmitStatus admit(SampledModel candidate, AttributionSet attribution);

  std::shared_ptr<const Predictor> member_predictor(std::size_t i) const;

  const std::vector<SampledModel>& members() const { return members_; }
  const std::vector<AttributionSet>& attribution_sets() const { return attributions_; }
  const RashomonConfig& config() const { return config_; }
  const std::shared_ptr<const Predictor>& reference() const { return reference_; }
  double ref_loss() const { return ref_loss_; }

  std::size_t n_searched() const { return n_searched_; }
  std::size_t rejected_boundary() const { return rejected_boundary_; }
  std::size_t rejected_redundant() const { return rejected_redundant_; }
  std::size_t rejected_count() const { return rejected_boundary_ + rejected_redundant_; }

  // Valid candidates over searched candidates (the reference is neither).
  // A run that searched nothing was trivially efficient.
  double ser() const;

 private:
  std::shared_ptr<const Predictor> reference_;
  RashomonConfig config_;
  double ref_loss_;
  std::vector<SampledModel> members_;
  std::vector<AttributionSet> attributions_;
  std::size_t n_searched_ = 0;
  std::size_t rejected_boundary_ = 0;
  std::size_t rejected_redundant_ = 0;
};

}  // namespace grs
