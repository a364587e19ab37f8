#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "trmf/baselines.hpp"
#include "trmf/model.hpp"

namespace trmf {

/// Either a TRMF-AR model or one of the baselines.
using AnyModel = std::variant<TrmfModel, BaselineModel>;

// File layout: a text header ("TRMF1", kind, dims, lag list, hyperparameters,
// then one "block <name> <rows> <cols>" line per matrix and a "payload"
// line), the blocks as row-major little-endian float64, and a trailing
// little-endian CRC32 of everything before it.

std::string encode_model(const AnyModel& model);
/// Throws VersionMismatch for a foreign TRMF format version and CorruptFile
/// for truncated, garbled or checksum-failing input.
AnyModel decode_model(std::string_view bytes);

void save_model(const TrmfModel& model, const std::filesystem::path& path);
TrmfModel load_model(const std::filesystem::path& path);

void save_any_model(const AnyModel& model, const std::filesystem::path& path);
AnyModel load_any_model(const std::filesystem::path& path);

/// "trmf", or the baseline name.
std::string model_kind(const AnyModel& model);

}  // namespace trmf
