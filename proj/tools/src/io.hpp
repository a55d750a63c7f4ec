#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "monowave/nodal.hpp"

namespace monowave::cli {

/// Shortest decimal form that reads back to the same double.
std::string format_number(double x);

/// Creates `dir` and its parents; kIo if that fails or `dir` is not a
/// writable directory.
void ensure_directory(const std::filesystem::path& dir);

void write_text(const std::filesystem::path& path, std::string_view text);
/// Two-space indented dump followed by a newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

/// Comma-separated table with a fixed header. Cells are numbers or plain
/// tokens without commas or quotes.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& cell(double x);
  CsvTable& cell(long long x);
  CsvTable& cell(int x) { return cell(static_cast<long long>(x)); }
  CsvTable& cell(std::size_t x) { return cell(static_cast<long long>(x)); }
  CsvTable& cell(std::string_view token);
  /// Throws std::logic_error if the row has the wrong width.
  void end_row();

  std::string str() const;

 private:
  std::size_t width_;
  std::size_t filled_ = 0;
  std::string text_;
};

/// ASCII Wavefront OBJ; every line of `comment` becomes a '#' line.
std::string obj_text(const TriangleMesh& mesh, const std::vector<std::string>& comment);

}  // namespace monowave::cli
