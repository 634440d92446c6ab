#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace grs {

// A feature subset of order 1 or 2; indices are kept sorted, so {i,j} and
// {j,i} are the same subset. Canonical ordering is (order, indices), which
// lists all singletons before the pairs.
class SubsetIndex {
 public:
  SubsetIndex() = default;

  explicit SubsetIndex(std::vector<std::uint32_t> indices) : idx_(std::move(indices)) {
    if (idx_.empty() || idx_.size() > 2) {
      throw std::invalid_argument("subset order must be 1 or 2");
    }
    if (idx_.size() == 2) {
      if (idx_[0] == idx_[1]) throw std::invalid_argument("subset indices must be distinct");
      if (idx_[0] > idx_[1]) std::swap(idx_[0], idx_[1]);
    }
  }

  static SubsetIndex single(std::uint32_t i) { return SubsetIndex({i}); }
  static SubsetIndex pair(std::uint32_t i, std::uint32_t j) { return SubsetIndex({i, j}); }

  std::size_t order() const { return idx_.size(); }
  const std::vector<std::uint32_t>& indices() const { return idx_; }
  std::uint32_t max_index() const { return idx_.back(); }

  bool contains(std::uint32_t i) const {
    for (auto v : idx_) {
      if (v == i) return true;
    }
    return false;
  }

  std::string key() const {
    std::string s = std::to_string(idx_[0]);
    if (idx_.size() == 2) s += "," + std::to_string(idx_[1]);
    return s;
  }

  std::string display(const std::vector<std::string>& feature_names) const {
    std::string s = feature_names.at(idx_[0]);
    if (idx_.size() == 2) s += ":" + feature_names.at(idx_[1]);
    return s;
  }

  std::uint64_t hash() const {
    return (static_cast<std::uint64_t>(idx_.size()) << 48) ^
           (static_cast<std::uint64_t>(idx_[0]) << 24) ^
           (idx_.size() == 2 ? idx_[1] : 0xffffffu);
  }

  friend auto operator<=>(const SubsetIndex& a, const SubsetIndex& b) {
    if (auto c = a.idx_.size() <=> b.idx_.size(); c != 0) return c;
    return a.idx_ <=> b.idx_;
  }
  friend bool operator==(const SubsetIndex&, const SubsetIndex&) = default;

 private:
  std::vector<std::uint32_t> idx_;
};

// All singletons for max_order 1; singletons plus all pairs for max_order 2,
// in canonical order.
inline std::vector<SubsetIndex> subset_family(std::size_t p, int max_order) {
  if (max_order < 1 || max_order > 2) throw std::invalid_argument("order must be 1 or 2");
  std::vector<SubsetIndex> out;
  for (std::uint32_t i = 0; i < p; ++i) out.push_back(SubsetIndex::single(i));
  if (max_order == 2) {
    for (std::uint32_t i = 0; i < p; ++i) {
      for (std::uint32_t j = i + 1; j < p; ++j) out.push_back(SubsetIndex::pair(i, j));
    }
  }
  return out;
}

}  // namespace grs
