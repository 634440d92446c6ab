#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "grs/dataset.hpp"
#include "grs/loss.hpp"
#include "grs/oracle.hpp"
#include "grs/permute.hpp"
#include "grs/predictor.hpp"
#include "grs/subset.hpp"

namespace grs {

// How permuted losses are estimated. The Monte Carlo permutation tables are
// derived from (seed, subset, n) and cached, so every model scored through
// the same estimator sees the same shuffles; scores are directly comparable
// across models and a model's score never depends on evaluation order.
class AttributionEstimator {
 public:
  enum class Mode { full_pairs, monte_carlo };

  Mode mode = Mode::monte_carlo;
  int repeats = 100;
  std::uint64_t seed = 0;
  std::size_t full_pairs_cap = 512;

  const std::vector<std::vector<std::uint32_t>>& permutations(const SubsetIndex& s,
                                                              std::size_t n) const;

 private:
  mutable std::mutex mutex_;
  mutable std::unordered_map<std::string, std::unique_ptr<std::vector<std::vector<std::uint32_t>>>>
      cache_;
};

// Feature effect: permuted loss minus the baseline empirical loss.
double phi(const Predictor& f, const Dataset& d, const SubsetIndex& s, LossKind kind,
           const AttributionEstimator& est);

// Score function: phi for singletons; interaction excess
// phi_I - sum_i phi_i for pairs.
double score(const Predictor& f, const Dataset& d, const SubsetIndex& s, LossKind kind,
             const AttributionEstimator& est);

// One model's scores over a subset family, in canonical subset order.
struct AttributionSet {
  std::string model_id;
  std::vector<SubsetIndex> subsets;
  std::vector<double> scores;

  double at(const SubsetIndex& s) const;
  bool same_keys(const AttributionSet& other) const { return subsets == other.subsets; }
};

AttributionSet attribution_set(const Predictor& f, const Dataset& d,
                               const std::vector<SubsetIndex>& subsets, LossKind kind,
                               const AttributionEstimator& est, std::string model_id);

// Scores across a sampled set, one interval per subset.
struct AttributionSpace {
  struct Entry {
    SubsetIndex subset;
    std::vector<double> scores;  // one per model, in input order
    double min = 0.0, max = 0.0, reference = 0.0;
  };
  std::vector<std::string> model_ids;
  std::vector<Entry> entries;
};

AttributionSpace attribution_space(const std::vector<AttributionSet>& sets,
                                   const std::string& reference_id);

struct GroundTruthRow {
  SubsetIndex subset;
  double mean = 0.0;
  double std_error = 0.0;
};

// Reference attribution table for the quadratic problem: phi_a, phi_b, phi_c
// and the three pairwise interaction scores, each repeated `repeats` times
// and reported as mean +- standard error.
std::vector<GroundTruthRow> ground_truth_table(const QuadraticOracle& oracle,
                                               const Dataset& d, int repeats,
                                               std::uint64_t seed);

}  // namespace grs
