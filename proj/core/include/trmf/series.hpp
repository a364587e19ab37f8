#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "trmf/dense.hpp"

namespace trmf {

/// n x T data matrix with an observation mask. Unobserved cells hold 0.
class ObservedSeries {
 public:
  ObservedSeries() = default;
  /// Throws NonFiniteEncountered if an observed value is not finite.
  ObservedSeries(DenseMatrix values, std::vector<std::uint8_t> mask);

  /// Fully observed series.
  static ObservedSeries full(DenseMatrix values);

  std::size_t n() const noexcept { return values_.rows(); }
  std::size_t t_count() const noexcept { return values_.cols(); }
  const DenseMatrix& values() const noexcept { return values_; }
  double value(std::size_t i, std::size_t t) const noexcept { return values_(i, t); }
  bool observed(std::size_t i, std::size_t t) const noexcept { return mask_[i * t_count() + t] != 0; }
  const std::vector<std::uint8_t>& mask() const noexcept { return mask_; }

  std::size_t observed_count() const noexcept;
  bool fully_observed() const noexcept;

  /// Drops (i, t) from the observed set.
  void hide(std::size_t i, std::size_t t) noexcept;

  /// Time columns [first, first + count), ids carried along.
  ObservedSeries slice_time(std::size_t first, std::size_t count) const;

  /// Optional series identifiers (one per row) from a CSV header.
  std::vector<std::string> ids;

  friend bool operator==(const ObservedSeries&, const ObservedSeries&) = default;

 private:
  DenseMatrix values_;
  std::vector<std::uint8_t> mask_;
};

}  // namespace trmf
