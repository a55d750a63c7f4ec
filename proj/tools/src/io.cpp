#include "io.hpp"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "monowave/error.hpp"

namespace monowave::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorKind::kIo, "cannot create output directory '" + dir.string() + "'" +
                                    (ec ? ": " + ec.message() : ""));
  }
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (out) out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  write_text(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::kValidation, path.string() + " is not valid JSON: " + e.what());
  }
}

CsvTable::CsvTable(std::vector<std::string> header) : width_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

CsvTable& CsvTable::cell(double x) { return cell(std::string_view(format_number(x))); }

CsvTable& CsvTable::cell(long long x) { return cell(std::string_view(std::to_string(x))); }

CsvTable& CsvTable::cell(std::string_view token) {
  if (filled_ == width_) throw std::logic_error("csv row has too many cells");
  if (filled_) text_ += ',';
  text_ += token;
  ++filled_;
  return *this;
}

void CsvTable::end_row() {
  if (filled_ != width_) throw std::logic_error("csv row has too few cells");
  text_ += '\n';
  filled_ = 0;
}

std::string CsvTable::str() const { return text_; }

std::string obj_text(const TriangleMesh& mesh, const std::vector<std::string>& comment) {
  std::string out;
  for (const std::string& line : comment) out += "# " + line + "\n";
  for (const Point& v : mesh.vertices) {
    out += "v " + format_number(v[0]) + " " + format_number(v[1]) + " " + format_number(v[2]) +
           "\n";
  }
  for (const auto& t : mesh.triangles) {
    out += "f " + std::to_string(t[0] + 1) + " " + std::to_string(t[1] + 1) + " " +
           std::to_string(t[2] + 1) + "\n";
  }
  return out;
}

}  // namespace monowave::cli
