#include "qee/output.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "qee/error.hpp"

namespace qee {

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ConfigError("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_extension(OutputFormat format) { return format == OutputFormat::csv ? ".csv" : ".json"; }

std::string format_number(double x) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.9g", x);
  return buf.data();
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "bin_center,density,std_error\n";
  const auto centers = h.centers();
  for (std::size_t i = 0; i < h.density.size(); ++i)
    out << format_number(centers[i]) << ',' << format_number(h.density[i]) << ','
        << format_number(h.std_error[i]) << '\n';
  return out.str();
}

std::string curve_csv(const Curve& c) {
  std::ostringstream out;
  out << c.x_label << ',' << c.y_label << '\n';
  for (std::size_t i = 0; i < c.x.size(); ++i) out << format_number(c.x[i]) << ',' << format_number(c.y[i]) << '\n';
  return out.str();
}

nlohmann::json histogram_json(const Histogram& h, const nlohmann::json& metadata) {
  return {{"metadata", metadata},
          {"axis", h.axis_label},
          {"members", h.members},
          {"edges", h.edges},
          {"density", h.density},
          {"std_error", h.std_error}};
}

nlohmann::json curve_json(const Curve& c, const nlohmann::json& metadata) {
  return {{"metadata", metadata}, {"q", c.q}, {"kind", c.kind}, {c.x_label, c.x}, {c.y_label, c.y}};
}

std::string sha256_hex(const std::string& data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw NumericalError("sha256: digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xF]);
  }
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return sha256_hex(buf.str());
}

std::string write_file(const std::filesystem::path& path, const std::string& contents) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path.string());
  return sha256_hex(contents);
}

}  // namespace qee
