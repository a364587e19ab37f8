#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace trmf {

/// Sorted set of distinct positive lags. `m()` is 1 + the largest lag: the
/// first 1-based time index with a full lag window.
class LagSet {
 public:
  explicit LagSet(std::vector<std::size_t> lags);

  std::span<const std::size_t> lags() const noexcept { return lags_; }
  std::size_t size() const noexcept { return lags_.size(); }
  std::size_t operator[](std::size_t i) const noexcept { return lags_[i]; }
  std::size_t l_max() const noexcept { return lags_.back(); }
  std::size_t m() const noexcept { return lags_.back() + 1; }

  bool contains(std::size_t lag) const noexcept;
  /// Position of `lag` in lags(), or size() when absent.
  std::size_t index_of(std::size_t lag) const noexcept;

  /// The lags together with lag 0, ascending.
  std::vector<std::size_t> augmented() const;

  friend bool operator==(const LagSet&, const LagSet&) = default;

 private:
  std::vector<std::size_t> lags_;
};

/// Parses "1,4", "1:8" or "1:24,168:191"; also the presets "synthetic"
/// ({1..8}), "hourly" ({1..24} u {168..191}) and "weekly" ({1..10} u {50..56}).
LagSet parse_lag_set(std::string_view spec);

}  // namespace trmf
