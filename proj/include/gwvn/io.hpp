#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gwvn::io {

/// 17 significant digits, '.' separator, independent of the global locale.
/// NaN and infinities are written as nan, inf, -inf.
std::string format_double(double x);

/// Shortest representation that round-trips; for human-readable reports.
std::string format_short(double x);

/// Quotes a CSV field if it contains a comma, quote or line break.
std::string csv_field(std::string_view field);

/// Comma-separated rows with a header. String fields are quoted as needed.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

  CsvWriter& row(std::initializer_list<double> values);
  CsvWriter& row(const std::vector<std::string>& fields);

  std::size_t columns() const { return columns_; }

 private:
  std::ostream& out_;
  std::size_t columns_;
};

}  // namespace gwvn::io
