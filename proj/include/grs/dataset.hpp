#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "grs/matrix.hpp"

namespace grs {

struct Dataset {
  Matrix x;  // n x p features
  Matrix y;  // n x m targets
  std::vector<std::string> feature_names;
  std::vector<std::string> target_names;

  std::size_t n() const { return x.rows(); }
  std::size_t p() const { return x.cols(); }
  std::size_t m() const { return y.cols(); }

  // n >= 2, p >= 1, m >= 1, matching row counts, all entries finite.
  void validate() const;
};

// RFC-4180-style CSV with a required header row; every cell must parse as a
// double. Target columns are extracted in the order given; the remaining
// columns become features in header order.
Dataset load_csv(const std::filesystem::path& path,
                 const std::vector<std::string>& target_columns);

// Round-trip exact (17 significant digits).
void save_csv(const Dataset& d, const std::filesystem::path& path);

// Disjoint row partition in (train, test, validation) order. Sizes are floor
// allocations of the fractions with remainder rows going to train; the same
// seed always produces the same split.
std::array<Dataset, 3> split_dataset(const Dataset& d,
                                     const std::array<double, 3>& fractions,
                                     std::uint64_t seed);

}  // namespace grs
