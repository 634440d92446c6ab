#include "grs/attribution.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "grs/rng.hpp"

namespace grs {

const std::vector<std::vector<std::uint32_t>>& AttributionEstimator::permutations(
    const SubsetIndex& s, std::size_t n) const {
  const std::string key = s.key() + "@" + std::to_string(n);
  std::scoped_lock lock(mutex_);
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    auto perms = std::make_unique<std::vector<std::vector<std::uint32_t>>>(
        make_derangements(n, repeats, mix_seed(seed, s.hash())));
    it = cache_.emplace(key, std::move(perms)).first;
  }
  return *it->second;
}

namespace {

std::vector<double> phi_samples(const Predictor& f, const Dataset& d,
                                const SubsetIndex& s, LossKind kind,
                                const AttributionEstimator& est) {
  const double base = empirical_loss(f.predict(d.x), d.y, kind);
  if (est.mode == AttributionEstimator::Mode::full_pairs) {
    return {permuted_loss_full(f, d, s, kind, est.full_pairs_cap) - base};
  }
  if (est.repeats < 2) throw std::invalid_argument("monte carlo estimator needs repeats >= 2");
  std::vector<double> losses = permuted_losses(f, d, s, kind, est.permutations(s, d.n()));
  for (double& v : losses) v -= base;
  return losses;
}

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

}  // namespace

double phi(const Predictor& f, const Dataset& d, const SubsetIndex& s, LossKind kind,
           const AttributionEstimator& est) {
  return mean_of(phi_samples(f, d, s, kind, est));
}

double score(const Predictor& f, const Dataset& d, const SubsetIndex& s, LossKind kind,
             const AttributionEstimator& est) {
  if (s.order() == 1) return phi(f, d, s, kind, est);
  double value = phi(f, d, s, kind, est);
  for (std::uint32_t i : s.indices()) {
    value -= phi(f, d, SubsetIndex::single(i), kind, est);
  }
  return value;
}

double AttributionSet::at(const SubsetIndex& s) const {
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    if (subsets[i] == s) return scores[i];
  }
  throw std::invalid_argument("subset not present in attribution set");
}

AttributionSet attribution_set(const Predictor& f, const Dataset& d,
                               const std::vector<SubsetIndex>& subsets, LossKind kind,
                               const AttributionEstimator& est, std::string model_id) {
  if (subsets.empty()) throw std::invalid_argument("subset list is empty");
  {
    std::set<SubsetIndex> unique(subsets.begin(), subsets.end());
    if (unique.size() != subsets.size()) {
      throw std::invalid_argument("duplicate subsets in attribution request");
    }
  }
  AttributionSet out;
  out.model_id = std::move(model_id);
  out.subsets = subsets;
  std::sort(out.subsets.begin(), out.subsets.end());

  // Share the phi values between singleton scores and the pair excess terms.
  std::unordered_map<std::string, double> phi_by_key;
  auto phi_of = [&](const SubsetIndex& s) {
    auto it = phi_by_key.find(s.key());
    if (it == phi_by_key.end()) {
      it = phi_by_key.emplace(s.key(), phi(f, d, s, kind, est)).first;
    }
    return it->second;
  };

  out.scores.reserve(out.subsets.size());
  for (const auto& s : out.subsets) {
    if (s.order() == 1) {
      out.scores.push_back(phi_of(s));
    } else {
      double v = phi_of(s);
      for (std::uint32_t i : s.indices()) v -= phi_of(SubsetIndex::single(i));
      out.scores.push_back(v);
    }
  }
  return out;
}

AttributionSpace attribution_space(const std::vector<AttributionSet>& sets,
                                   const std::string& reference_id) {
  if (sets.empty()) throw std::invalid_argument("attribution space needs at least one set");
  const AttributionSet* reference = nullptr;
  for (const auto& s : sets) {
    if (!s.same_keys(sets.front())) {
      throw std::invalid_argument("attribution sets have mismatched subset keys");
    }
    if (s.model_id == reference_id) reference = &s;
  }
  if (reference == nullptr) {
    throw std::invalid_argument("reference id '" + reference_id + "' not among sets");
  }

  AttributionSpace space;
  for (const auto& s : sets) space.model_ids.push_back(s.model_id);
  for (std::size_t k = 0; k < sets.front().subsets.size(); ++k) {
    AttributionSpace::Entry e;
    e.subset = sets.front().subsets[k];
    e.scores.reserve(sets.size());
    for (const auto& s : sets) e.scores.push_back(s.scores[k]);
    e.min = *std::min_element(e.scores.begin(), e.scores.end());
    e.max = *std::max_element(e.scores.begin(), e.scores.end());
    e.reference = reference->scores[k];
    space.entries.push_back(std::move(e));
  }
  return space;
}

std::vector<GroundTruthRow> ground_truth_table(const QuadraticOracle& oracle,
                                               const Dataset& d, int repeats,
                                               std::uint64_t seed) {
  if (d.p() != 3 || d.m() != oracle.output_dim()) {
    throw std::invalid_argument("dataset shape does not match the quadratic oracle");
  }
  if (repeats < 2) throw std::invalid_argument("ground truth table needs repeats >= 2");

  AttributionEstimator est;
  est.mode = AttributionEstimator::Mode::monte_carlo;
  est.repeats = repeats;
  est.seed = seed;

  const auto family = subset_family(3, 2);
  std::unordered_map<std::string, std::vector<double>> samples;
  for (const auto& s : family) {
    samples.emplace(s.key(), phi_samples(oracle, d, s, LossKind::mse, est));
  }

  std::vector<GroundTruthRow> table;
  for (const auto& s : family) {
    std::vector<double> vals = samples.at(s.key());
    if (s.order() == 2) {
      // per-repeat interaction excess, so the row's SE reflects the
      // difference rather than three independent bands
      const auto& pi = samples.at(SubsetIndex::single(s.indices()[0]).key());
      const auto& pj = samples.at(SubsetIndex::single(s.indices()[1]).key());
      for (std::size_t r = 0; r < vals.size(); ++r) vals[r] -= pi[r] + pj[r];
    }
    const McLoss stat = summarize_mc(vals);
    table.push_back(GroundTruthRow{s, stat.mean, stat.std_error});
  }
  return table;
}

}  // namespace grs
