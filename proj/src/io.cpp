#include "jlp/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "jlp/errors.hpp"

namespace jlp {
namespace io {

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

void write_comment_lines(std::ostream& out, const std::string& comment) {
  if (comment.empty()) return;
  std::istringstream lines(comment);
  std::string line;
  while (std::getline(lines, line)) {
    out << "# " << line << '\n';
  }
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(ErrorCode::ingestion, "cannot open for writing: " + path);
  }
  return out;
}

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

double parse_double_field(const std::string& field, const std::string& path,
                          size_t line_number) {
  errno = 0;
  char* end = nullptr;
  const double value = std::strtod(field.c_str(), &end);
  while (end != nullptr && (*end == ' ' || *end == '\t' || *end == '\r')) {
    ++end;
  }
  if (end == field.c_str() || (end != nullptr && *end != '\0') ||
      errno == ERANGE) {
    fail(ErrorCode::ingestion, path + ":" + std::to_string(line_number) +
                                   ": not a number: '" + field + "'");
  }
  return value;
}

}  // namespace

void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::string& header_comment) {
  std::ofstream out = open_for_write(path);
  write_comment_lines(out, header_comment);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  if (!out) {
    fail(ErrorCode::ingestion, "write failed: " + path);
  }
}

Matrix read_matrix_csv(const std::string& path, size_t max_bytes) {
  const std::string content = read_file(path, max_bytes);
  std::istringstream lines(content);
  std::string line;
  std::vector<std::vector<double>> rows;
  size_t line_number = 0;
  size_t cols = 0;
  while (std::getline(lines, line)) {
    ++line_number;
    if (is_blank(line) || line[line.find_first_not_of(" \t")] == '#') {
      continue;
    }
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) {
      row.push_back(parse_double_field(field, path, line_number));
    }
    if (rows.empty()) {
      cols = row.size();
    } else if (row.size() != cols) {
      fail(ErrorCode::ingestion,
           path + ":" + std::to_string(line_number) + ": expected " +
               std::to_string(cols) + " fields, got " +
               std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) {
    fail(ErrorCode::ingestion, path + ": no data rows");
  }
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(cols));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < cols; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
    }
  }
  return m;
}

void write_key_values(const std::string& path,
                      const std::map<std::string, std::string>& pairs,
                      const std::string& header_comment) {
  std::ofstream out = open_for_write(path);
  write_comment_lines(out, header_comment);
  for (const auto& [key, value] : pairs) {
    out << key << '=' << value << '\n';
  }
  if (!out) {
    fail(ErrorCode::ingestion, "write failed: " + path);
  }
}

std::map<std::string, std::string> read_key_values(const std::string& path,
                                                   size_t max_bytes) {
  const std::string content = read_file(path, max_bytes);
  std::istringstream lines(content);
  std::string line;
  std::map<std::string, std::string> pairs;
  size_t line_number = 0;
  while (std::getline(lines, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line) || line[line.find_first_not_of(" \t")] == '#') {
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::ingestion, path + ":" + std::to_string(line_number) +
                                     ": expected key=value");
    }
    pairs[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return pairs;
}

std::string read_file(const std::string& path, size_t max_bytes) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) {
    fail(ErrorCode::ingestion, "cannot open: " + path);
  }
  const std::streamoff size = in.tellg();
  if (size < 0) {
    fail(ErrorCode::ingestion, "cannot determine size: " + path);
  }
  if (static_cast<size_t>(size) > max_bytes) {
    fail(ErrorCode::ingestion,
         path + ": file size " + std::to_string(size) +
             " exceeds limit " + std::to_string(max_bytes));
  }
  std::string content(static_cast<size_t>(size), '\0');
  in.seekg(0);
  in.read(content.data(), size);
  if (!in) {
    fail(ErrorCode::ingestion, "read failed: " + path);
  }
  return content;
}

}  // namespace io
}  // namespace jlp
