#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gaussent::harness {

/// Shortest decimal that round-trips to the same double, '.' separator.
/// NaN and infinities print as nan, inf, -inf.
std::string format_double(double v);

/// A CSV cell. An empty optional prints as an empty field.
using CsvField = std::variant<double, std::int64_t, std::uint64_t, std::string, std::optional<double>>;

/// Minimal RFC 4180 writer: comma separated, LF line endings, fields quoted
/// only when they contain a comma, quote or newline.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(std::initializer_list<std::string_view> names);
  void header(const std::vector<std::string>& names);
  void row(const std::vector<CsvField>& fields);

  std::size_t columns() const { return columns_; }

 private:
  void write_cell(std::string_view text, bool first);

  std::ostream& out_;
  std::size_t columns_ = 0;
};

/// Writes `content` to `path` ("-" means stdout). Throws std::runtime_error
/// when the file cannot be opened or written.
void write_output(const std::string& path, const std::string& content);

}  // namespace gaussent::harness
