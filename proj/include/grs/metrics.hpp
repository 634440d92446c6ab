#pragma once

#include <string>
#include <vector>

#include "grs/attribution.hpp"

namespace grs {

// Searching efficiency ratio: valid models over searched models.
double ser(std::size_t n_valid, std::size_t n_total);

// Chebyshev (max-norm) distance between two attribution sets with identical
// subset keys.
double chebyshev_distance(const AttributionSet& a, const AttributionSet& b);

enum class FerOrder { first, second, all };

// Functional efficiency range: sum of the attribution interval widths over
// the subsets of the requested order.
double fer(const AttributionSpace& space, FerOrder order);

struct RedundancyResult {
  std::vector<AttributionSet> kept;
  std::vector<std::string> removed_ids;
};

// Greedy first-wins pass: drop any set within `tol` (Chebyshev) of an earlier
// kept set. Output pairwise distances all exceed tol.
RedundancyResult redundancy_filter(const std::vector<AttributionSet>& sets, double tol);

// Smallest pairwise Chebyshev distance; +inf for fewer than two sets.
double min_pairwise_distance(const std::vector<AttributionSet>& sets);

struct MetricsReport {
  double ser = 1.0;
  double fer_first_order = 0.0;
  double fer_second_order = 0.0;
  double min_pairwise = 0.0;
  std::size_t n_members = 0;
  std::size_t n_searched = 0;
  std::size_t rejected_boundary = 0;
  std::size_t rejected_redundant = 0;
};

}  // namespace grs
