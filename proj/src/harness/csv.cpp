#include "gaussent/harness/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace gaussent::harness {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::string to_text(const CsvField& field) {
  struct Visitor {
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(const std::string& v) const { return v; }
    std::string operator()(const std::optional<double>& v) const { return v ? format_double(*v) : std::string(); }
  };
  return std::visit(Visitor{}, field);
}

}  // namespace

void CsvWriter::write_cell(std::string_view text, bool first) {
  if (!first) out_ << ',';
  if (text.find_first_of(",\"\n\r") == std::string_view::npos) {
    out_ << text;
    return;
  }
  out_ << '"';
  for (char c : text) {
    if (c == '"') out_ << '"';
    out_ << c;
  }
  out_ << '"';
}

void CsvWriter::header(std::initializer_list<std::string_view> names) {
  header(std::vector<std::string>(names.begin(), names.end()));
}

void CsvWriter::header(const std::vector<std::string>& names) {
  columns_ = names.size();
  bool first = true;
  for (const auto& n : names) {
    write_cell(n, first);
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::row(const std::vector<CsvField>& fields) {
  if (columns_ != 0 && fields.size() != columns_) {
    throw std::logic_error("CsvWriter: row has " + std::to_string(fields.size()) + " fields, header has " +
                           std::to_string(columns_));
  }
  bool first = true;
  for (const auto& f : fields) {
    write_cell(to_text(f), first);
    first = false;
  }
  out_ << '\n';
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  file << content;
  file.flush();
  if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace gaussent::harness
