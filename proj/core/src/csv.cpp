#include "trmf/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "trmf/error.hpp"

namespace trmf {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_cells(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::string location(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row) + ", column " + std::to_string(col);
}

ObservedSeries aggregate(const ObservedSeries& raw, const CsvOptions& options) {
  if (options.block < 1) fail(ErrorCode::kInvalidArgument, "aggregation block must be >= 1");
  const std::size_t t_out = raw.t_count() / options.block;
  DenseMatrix values(raw.n(), t_out);
  std::vector<std::uint8_t> mask(raw.n() * t_out, 0);
  for (std::size_t i = 0; i < raw.n(); ++i) {
    for (std::size_t b = 0; b < t_out; ++b) {
      double s = 0.0;
      bool complete = true;
      for (std::size_t j = 0; j < options.block; ++j) {
        const std::size_t t = b * options.block + j;
        if (!raw.observed(i, t)) complete = false;
        s += raw.value(i, t);
      }
      if (!complete) continue;
      values(i, b) = options.aggregate == AggregateMode::kMean ? s / static_cast<double>(options.block) : s;
      mask[i * t_out + b] = 1;
    }
  }
  ObservedSeries out(std::move(values), std::move(mask));
  out.ids = raw.ids;
  return out;
}

}  // namespace

ObservedSeries parse_csv(std::string_view text, const CsvOptions& options) {
  std::vector<std::string_view> lines;
  for (std::size_t start = 0; start < text.size();) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    auto line = trim(text.substr(start, nl - start));
    if (!line.empty()) lines.push_back(line);
    start = nl + 1;
  }

  bool header = false;
  if (!lines.empty()) {
    const auto first = split_cells(lines.front());
    header = first.front() == "id";
  }
  const std::size_t first_row = header ? 1 : 0;
  const std::size_t skip = header ? 1 : 0;

  std::vector<std::string> ids;
  std::vector<double> values;
  std::vector<std::uint8_t> mask;
  std::size_t width = 0;
  for (std::size_t r = first_row; r < lines.size(); ++r) {
    const auto cells = split_cells(lines[r]);
    if (cells.size() <= skip)
      fail(ErrorCode::kParseError, "no values at " + location(r + 1, 1));
    const std::size_t row_width = cells.size() - skip;
    if (r == first_row) {
      width = row_width;
    } else if (row_width != width) {
      fail(ErrorCode::kRaggedRows, "row " + std::to_string(r + 1) + " has " +
                                       std::to_string(row_width) + " values, expected " +
                                       std::to_string(width));
    }
    if (header) ids.emplace_back(cells[0]);
    for (std::size_t c = skip; c < cells.size(); ++c) {
      const auto cell = cells[c];
      if (cell.empty() || cell == "NaN" || cell == "nan") {
        values.push_back(0.0);
        mask.push_back(0);
        continue;
      }
      double v = 0.0;
      const auto* end = cell.data() + cell.size();
      auto [ptr, ec] = std::from_chars(cell.data(), end, v);
      if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        fail(ErrorCode::kParseError,
             "cannot parse '" + std::string(cell) + "' at " + location(r + 1, c + 1));
      values.push_back(v);
      mask.push_back(1);
    }
  }
  const std::size_t n = width == 0 ? 0 : values.size() / width;
  ObservedSeries out(DenseMatrix(n, width, std::move(values)), std::move(mask));
  out.ids = std::move(ids);
  if (options.aggregate != AggregateMode::kNone) return aggregate(out, options);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) fail(ErrorCode::kIoError, "write failed for " + path.string());
}

ObservedSeries load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  return parse_csv(read_file(path), options);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_csv(const ObservedSeries& data) {
  const bool with_ids = !data.ids.empty();
  std::string out;
  if (with_ids) {
    out += "id";
    for (std::size_t t = 0; t < data.t_count(); ++t) out += "," + std::to_string(t);
    out += '\n';
  }
  for (std::size_t i = 0; i < data.n(); ++i) {
    if (with_ids) out += data.ids[i] + ",";
    for (std::size_t t = 0; t < data.t_count(); ++t) {
      if (t > 0) out += ',';
      if (data.observed(i, t)) out += format_double(data.value(i, t));
    }
    out += '\n';
  }
  return out;
}

void save_csv(const ObservedSeries& data, const std::filesystem::path& path) {
  write_file(path, format_csv(data));
}

}  // namespace trmf
