#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace trmf {

/// Mean absolute error over mean absolute truth.
double nd(std::span<const double> pred, std::span<const double> truth);

/// Root-mean-square error over mean absolute truth.
double nrmse(std::span<const double> pred, std::span<const double> truth);

struct EvalReport {
  std::string method;
  std::string split_id;
  double nd = 0.0;
  double nrmse = 0.0;
  std::size_t n_test = 0;
};

inline constexpr const char* kEvalReportHeader = "method,split_id,nd,nrmse,n_test";

/// One CSV row (no trailing newline), metrics with 6 decimals.
std::string format_report_row(const EvalReport& report);

}  // namespace trmf
