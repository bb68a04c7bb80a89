#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace loci {

/// Minimal RFC 4180 reader. Handles quoted fields (embedded commas, quotes and
/// newlines), CRLF line endings and a leading UTF-8 BOM.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Reads the next record into `fields`. Returns false at end of input.
  bool next(std::vector<std::string>& fields);

  /// 1-based physical line on which the last returned record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
  bool first_ = true;
};

/// Quotes a field only when it needs quoting.
std::string csv_escape(std::string_view field);

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Strict full-string double parse; leading/trailing blanks are ignored.
bool parse_double(std::string_view text, double& out);

}  // namespace loci
