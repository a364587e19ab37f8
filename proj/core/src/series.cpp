#include "trmf/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "trmf/error.hpp"

namespace trmf {

ObservedSeries::ObservedSeries(DenseMatrix values, std::vector<std::uint8_t> mask)
    : values_(std::move(values)), mask_(std::move(mask)) {
  if (mask_.size() != values_.size())
    fail(ErrorCode::kDimensionMismatch, "mask size differs from value matrix");
  for (std::size_t i = 0; i < n(); ++i) {
    for (std::size_t t = 0; t < t_count(); ++t) {
      if (!observed(i, t)) {
        values_(i, t) = 0.0;
      } else if (!std::isfinite(values_(i, t))) {
        fail(ErrorCode::kNonFiniteEncountered,
             "observed value at (" + std::to_string(i) + ", " + std::to_string(t) + ")");
      }
    }
  }
}

ObservedSeries ObservedSeries::full(DenseMatrix values) {
  std::vector<std::uint8_t> mask(values.size(), 1);
  return ObservedSeries(std::move(values), std::move(mask));
}

std::size_t ObservedSeries::observed_count() const noexcept {
  return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), std::uint8_t{1}));
}

bool ObservedSeries::fully_observed() const noexcept {
  return std::all_of(mask_.begin(), mask_.end(), [](std::uint8_t b) { return b != 0; });
}

void ObservedSeries::hide(std::size_t i, std::size_t t) noexcept {
  mask_[i * t_count() + t] = 0;
  values_(i, t) = 0.0;
}

ObservedSeries ObservedSeries::slice_time(std::size_t first, std::size_t count) const {
  if (first + count > t_count()) fail(ErrorCode::kIndexOutOfBounds, "time slice exceeds series");
  std::vector<std::uint8_t> mask(n() * count);
  for (std::size_t i = 0; i < n(); ++i)
    for (std::size_t t = 0; t < count; ++t) mask[i * count + t] = mask_[i * t_count() + first + t];
  ObservedSeries out(values_.col_range(first, count), std::move(mask));
  out.ids = ids;
  return out;
}

}  // namespace trmf
