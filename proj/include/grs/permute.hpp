#pragma once

#include <cstdint>
#include <vector>

#include "grs/dataset.hpp"
#include "grs/loss.hpp"
#include "grs/predictor.hpp"
#include "grs/subset.hpp"

namespace grs {

// Exact all-pairs estimator: mean over ordered pairs (i, j), j != i, of the
// loss of predicting row i with the columns in `s` taken from row j. Cost is
// O(n^2) predictions, hence the row cap.
double permuted_loss_full(const Predictor& f, const Dataset& d, const SubsetIndex& s,
                          LossKind kind, std::size_t cap = 512);

struct McLoss {
  double mean = 0.0;
  double std_error = 0.0;
};

// Monte Carlo estimator: `repeats` whole-column shuffles of the columns in
// `s` (one shared permutation per repeat). Permutations are fixed-point-free,
// which makes the estimator unbiased for permuted_loss_full.
McLoss permuted_loss_mc(const Predictor& f, const Dataset& d, const SubsetIndex& s,
                        LossKind kind, int repeats, std::uint64_t seed);

// Per-repeat losses under caller-supplied permutations (shared permutation
// tables keep scores comparable across models).
std::vector<double> permuted_losses(const Predictor& f, const Dataset& d,
                                    const SubsetIndex& s, LossKind kind,
                                    const std::vector<std::vector<std::uint32_t>>& perms);

std::vector<std::vector<std::uint32_t>> make_derangements(std::size_t n, int repeats,
                                                          std::uint64_t seed);

McLoss summarize_mc(const std::vector<double>& per_repeat);

}  // namespace grs
