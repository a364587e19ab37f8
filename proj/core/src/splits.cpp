#include "trmf/splits.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "trmf/error.hpp"

namespace trmf {

SplitSpec rolling_splits(std::size_t t_count, std::size_t horizon, std::size_t n_windows) {
  if (horizon < 1 || n_windows < 1)
    fail(ErrorCode::kInvalidArgument, "horizon and window count must be >= 1");
  if (n_windows * horizon > t_count)
    fail(ErrorCode::kTooManyWindows, std::to_string(n_windows) + " windows of " +
                                         std::to_string(horizon) + " steps exceed T = " +
                                         std::to_string(t_count));
  SplitSpec spec;
  const std::size_t first = t_count - n_windows * horizon;
  for (std::size_t w = 0; w < n_windows; ++w) spec.windows.push_back({first + w * horizon, horizon});
  return spec;
}

ObservedSeries occlude_blocks(const ObservedSeries& data, double observed_fraction,
                              std::size_t block_len, std::uint64_t seed) {
  if (!(observed_fraction > 0.0 && observed_fraction < 1.0))
    fail(ErrorCode::kInvalidArgument, "observed fraction must lie in (0, 1)");
  if (block_len < 1) fail(ErrorCode::kInvalidArgument, "block length must be >= 1");

  const std::size_t t_count = data.t_count();
  const auto target = static_cast<std::size_t>(
      std::floor(observed_fraction * static_cast<double>(data.n() * t_count)));

  struct Block {
    std::size_t row, start;
  };
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < data.n(); ++i)
    for (std::size_t s = 0; s < t_count; s += block_len) blocks.push_back({i, s});
  std::mt19937_64 rng(seed);
  std::shuffle(blocks.begin(), blocks.end(), rng);

  ObservedSeries out = data;
  std::size_t observed = out.observed_count();
  for (const auto& b : blocks) {
    if (observed <= target) break;
    const std::size_t end = std::min(b.start + block_len, t_count);
    for (std::size_t t = b.start; t < end; ++t) {
      if (!out.observed(b.row, t)) continue;
      out.hide(b.row, t);
      --observed;
    }
  }
  return out;
}

}  // namespace trmf
