#include "trmf/lag_set.hpp"

#include <algorithm>
#include <charconv>
#include <string>

#include "trmf/error.hpp"

namespace trmf {

LagSet::LagSet(std::vector<std::size_t> lags) : lags_(std::move(lags)) {
  if (lags_.empty()) fail(ErrorCode::kInvalidArgument, "lag set must be nonempty");
  for (std::size_t i = 0; i < lags_.size(); ++i) {
    if (lags_[i] < 1) fail(ErrorCode::kInvalidArgument, "lags must be >= 1");
    if (i > 0 && lags_[i] <= lags_[i - 1])
      fail(ErrorCode::kInvalidArgument, "lags must be strictly increasing");
  }
}

bool LagSet::contains(std::size_t lag) const noexcept {
  return std::binary_search(lags_.begin(), lags_.end(), lag);
}

std::size_t LagSet::index_of(std::size_t lag) const noexcept {
  auto it = std::lower_bound(lags_.begin(), lags_.end(), lag);
  if (it == lags_.end() || *it != lag) return lags_.size();
  return static_cast<std::size_t>(it - lags_.begin());
}

std::vector<std::size_t> LagSet::augmented() const {
  std::vector<std::size_t> out;
  out.reserve(lags_.size() + 1);
  out.push_back(0);
  out.insert(out.end(), lags_.begin(), lags_.end());
  return out;
}

namespace {

std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (std::size_t l = lo; l <= hi; ++l) out.push_back(l);
  return out;
}

std::size_t parse_count(std::string_view tok, std::string_view whole) {
  std::size_t value = 0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (tok.empty() || ec != std::errc{} || ptr != last)
    fail(ErrorCode::kInvalidArgument, "bad lag specification '" + std::string(whole) + "'");
  return value;
}

}  // namespace

LagSet parse_lag_set(std::string_view spec) {
  if (spec == "synthetic") return LagSet(range(1, 8));
  if (spec == "hourly") {
    auto lags = range(1, 24);
    auto weekly = range(168, 191);
    lags.insert(lags.end(), weekly.begin(), weekly.end());
    return LagSet(std::move(lags));
  }
  if (spec == "weekly") {
    auto lags = range(1, 10);
    auto yearly = range(50, 56);
    lags.insert(lags.end(), yearly.begin(), yearly.end());
    return LagSet(std::move(lags));
  }

  std::vector<std::size_t> lags;
  std::string_view rest = spec;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    std::string_view tok = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    const auto colon = tok.find(':');
    if (colon == std::string_view::npos) {
      lags.push_back(parse_count(tok, spec));
    } else {
      const auto lo = parse_count(tok.substr(0, colon), spec);
      const auto hi = parse_count(tok.substr(colon + 1), spec);
      if (hi < lo) fail(ErrorCode::kInvalidArgument, "empty lag range in '" + std::string(spec) + "'");
      auto r = range(lo, hi);
      lags.insert(lags.end(), r.begin(), r.end());
    }
  }
  std::sort(lags.begin(), lags.end());
  lags.erase(std::unique(lags.begin(), lags.end()), lags.end());
  return LagSet(std::move(lags));
}

}  // namespace trmf
