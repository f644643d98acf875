#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pvlab {

// Shortest-independent real formatting: 17 significant digits, '.' decimal,
// "inf"/"-inf"/"nan" for non-finite values.
std::string format_real(double x);

// RFC 4180 field quoting (only when needed).
std::string csv_field(std::string_view s);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  // Free-form "# ..." metadata line preceding the header.
  void comment(std::string_view text);
  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& os_;
};

}  // namespace pvlab
