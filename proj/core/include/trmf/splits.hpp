#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "trmf/series.hpp"

namespace trmf {

struct SplitWindow {
  std::size_t train_end;  ///< columns [0, train_end) are training data
  std::size_t horizon;
  friend bool operator==(const SplitWindow&, const SplitWindow&) = default;
};

struct SplitSpec {
  std::vector<SplitWindow> windows;
};

/// n_windows consecutive windows covering the last n_windows * horizon steps.
SplitSpec rolling_splits(std::size_t t_count, std::size_t horizon, std::size_t n_windows);

/// Hides randomly chosen length-`block_len` runs (aligned on a per-row grid,
/// the last one truncated at the row end) until at most
/// floor(observed_fraction * n * T) entries remain observed.
ObservedSeries occlude_blocks(const ObservedSeries& data, double observed_fraction,
                              std::size_t block_len, std::uint64_t seed);

}  // namespace trmf
