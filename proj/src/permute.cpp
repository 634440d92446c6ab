#include "grs/permute.hpp"

#include <cmath>
#include <stdexcept>

#include "grs/parallel.hpp"
#include "grs/rng.hpp"

namespace grs {
namespace {

void check_subset(const Dataset& d, const SubsetIndex& s) {
  if (s.max_index() >= d.p()) throw std::invalid_argument("subset index out of range");
}

}  // namespace

double permuted_loss_full(const Predictor& f, const Dataset& d, const SubsetIndex& s,
                          LossKind kind, std::size_t cap) {
  check_subset(d, s);
  check_classification_targets(d.y, kind);
  const std::size_t n = d.n();
  if (n > cap) {
    throw std::invalid_argument("permuted_loss_full: n=" + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap));
  }

  // Shift d walks all ordered pairs (i, (i+d) mod n): one batched predict per
  // shift instead of n single-row calls.
  double total = 0.0;
  Matrix shifted = d.x;
  for (std::size_t shift = 1; shift < n; ++shift) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + shift) % n;
      for (std::uint32_t col : s.indices()) shifted(i, col) = d.x(j, col);
    }
    const Matrix pred = f.predict(shifted);
    for (std::size_t i = 0; i < n; ++i) {
      total += row_loss(pred.row(i), d.y.row(i), kind);
    }
  }
  return total / static_cast<double>(n * (n - 1));
}

std::vector<std::vector<std::uint32_t>> make_derangements(std::size_t n, int repeats,
                                                          std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("need n >= 2 to permute");
  Rng rng(seed);
  std::vector<std::vector<std::uint32_t>> perms;
  perms.reserve(static_cast<std::size_t>(repeats));
  for (int r = 0; r < repeats; ++r) perms.push_back(rng.derangement(n));
  return perms;
}

std::vector<double> permuted_losses(const Predictor& f, const Dataset& d,
                                    const SubsetIndex& s, LossKind kind,
                                    const std::vector<std::vector<std::uint32_t>>& perms) {
  check_subset(d, s);
  check_classification_targets(d.y, kind);
  const std::size_t n = d.n();
  std::vector<double> losses(perms.size());
  parallel_for(perms.size(), [&](std::size_t begin, std::size_t end) {
    Matrix shuffled = d.x;
    for (std::size_t r = begin; r < end; ++r) {
      const auto& perm = perms[r];
      if (perm.size() != n) throw std::invalid_argument("permutation length mismatch");
      for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t col : s.indices()) shuffled(i, col) = d.x(perm[i], col);
      }
      losses[r] = empirical_loss(f.predict(shuffled), d.y, kind);
    }
  });
  return losses;
}

McLoss summarize_mc(const std::vector<double>& per_repeat) {
  const std::size_t r = per_repeat.size();
  double mean = 0.0;
  for (double v : per_repeat) mean += v;
  mean /= static_cast<double>(r);
  double var = 0.0;
  for (double v : per_repeat) var += (v - mean) * (v - mean);
  var = r > 1 ? var / static_cast<double>(r - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(r))};
}

McLoss permuted_loss_mc(const Predictor& f, const Dataset& d, const SubsetIndex& s,
                        LossKind kind, int repeats, std::uint64_t seed) {
  if (repeats < 2) throw std::invalid_argument("permuted_loss_mc needs repeats >= 2");
  const auto perms = make_derangements(d.n(), repeats, seed);
  return summarize_mc(permuted_losses(f, d, s, kind, perms));
}

}  // namespace grs
