#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "qee/observables.hpp"

namespace qee {

enum class OutputFormat { csv, json };

OutputFormat parse_format(const std::string& name);
std::string format_extension(OutputFormat format);

/// Numbers written with 9 significant digits.
std::string format_number(double x);

/// CSV "bin_center,density" (plus "std_error").
std::string histogram_csv(const Histogram& h);
/// CSV with the curve's axis labels as header, e.g. "t,F".
std::string curve_csv(const Curve& c);

nlohmann::json histogram_json(const Histogram& h, const nlohmann::json& metadata);
nlohmann::json curve_json(const Curve& c, const nlohmann::json& metadata);

/// Writes text to path (creating parent directories) and returns its SHA-256.
std::string write_file(const std::filesystem::path& path, const std::string& contents);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace qee
