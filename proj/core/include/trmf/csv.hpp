#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>

#include "trmf/series.hpp"

namespace trmf {

enum class AggregateMode { kNone, kSum, kMean };

struct CsvOptions {
  AggregateMode aggregate = AggregateMode::kNone;
  /// Columns per aggregated block (4 turns 15-minute readings into hours).
  std::size_t block = 4;
};

/// Rows are series, columns are time points. An optional header row whose
/// first cell is "id" switches on a leading id column. Empty cells and
/// "NaN" are unobserved. Aggregation keeps a block observed only if all of
/// its cells are; a trailing partial block is dropped.
ObservedSeries parse_csv(std::string_view text, const CsvOptions& options = {});
ObservedSeries load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Inverse of parse_csv (values printed with round-trip precision).
std::string format_csv(const ObservedSeries& data);
void save_csv(const ObservedSeries& data, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Shortest round-trip decimal representation.
std::string format_double(double v);

}  // namespace trmf
