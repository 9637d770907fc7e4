#ifndef JLP_IO_HPP
#define JLP_IO_HPP

#include <map>
#include <string>

#include "jlp/linalg.hpp"

namespace jlp {
namespace io {

// Shortest round-trip decimal rendering of a double ("%.17g").
std::string format_double(double value);

// Writes a dense matrix as CSV, one row per line, values rendered with
// format_double so reads reproduce the exact bits. `header_comment`
// lines (if any) are emitted first, each prefixed with "# ".
void write_matrix_csv(const std::string& path, const Matrix& m,
                      const std::string& header_comment = "");

// Reads a CSV matrix written by write_matrix_csv. Lines starting with
// '#' and blank lines are skipped; all remaining rows must have the
// same number of comma-separated numeric fields. Throws
// ErrorCode::ingestion on malformed input, unreadable files, or files
// larger than `max_bytes`.
Matrix read_matrix_csv(const std::string& path,
                       size_t max_bytes = size_t{1} << 30);

// key=value metadata files, one pair per line, '#' comments skipped.
void write_key_values(const std::string& path,
                      const std::map<std::string, std::string>& pairs,
                      const std::string& header_comment = "");
std::map<std::string, std::string> read_key_values(
    const std::string& path, size_t max_bytes = size_t{1} << 30);

// Whole-file read with a size cap; throws ErrorCode::ingestion on
// missing files or files larger than `max_bytes`.
std::string read_file(const std::string& path,
                      size_t max_bytes = size_t{1} << 30);

}  // namespace io
}  // namespace jlp

#endif  // JLP_IO_HPP
