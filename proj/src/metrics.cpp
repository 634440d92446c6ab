#include "grs/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace grs {

double ser(std::size_t n_valid, std::size_t n_total) {
  if (n_total == 0) throw std::invalid_argument("ser: no searched models");
  if (n_valid > n_total) throw std::invalid_argument("ser: n_valid exceeds n_total");
  return static_cast<double>(n_valid) / static_cast<double>(n_total);
}

double chebyshev_distance(const AttributionSet& a, const AttributionSet& b) {
  if (!a.same_keys(b)) throw std::invalid_argument("attribution subset keys mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.scores.size(); ++i) {
    d = std::max(d, std::fabs(a.scores[i] - b.scores[i]));
  }
  return d;
}

double fer(const AttributionSpace& space, FerOrder order) {
  if (space.entries.empty()) throw std::invalid_argument("empty attribution space");
  double total = 0.0;
  for (const auto& e : space.entries) {
    const bool wanted = order == FerOrder::all ||
                        (order == FerOrder::first && e.subset.order() == 1) ||
                        (order == FerOrder::second && e.subset.order() == 2);
    if (wanted) total += e.max - e.min;
  }
  return total;
}

RedundancyResult redundancy_filter(const std::vector<AttributionSet>& sets, double tol) {
  if (tol < 0.0) throw std::invalid_argument("tolerance must be >= 0");
  RedundancyResult result;
  for (const auto& candidate : sets) {
    bool redundant = false;
    for (const auto& kept : result.kept) {
      if (chebyshev_distance(candidate, kept) <= tol) {
        redundant = true;
        break;
      }
    }
    if (redundant) {
      result.removed_ids.push_back(candidate.model_id);
    } else {
      result.kept.push_back(candidate);
    }
  }
  return result;
}

double min_pairwise_distance(const std::vector<AttributionSet>& sets) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      best = std::min(best, chebyshev_distance(sets[i], sets[j]));
    }
  }
  return best;
}

}  // namespace grs
