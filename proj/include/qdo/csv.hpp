#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qdo {

/// Numeric table: one header row, every cell a double (nan/inf allowed).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);  // throws ValidationError on a width mismatch
  std::size_t column(const std::string& name) const;  // throws ConfigError when absent
  std::vector<double> column_values(const std::string& name) const;
};

/// printf("%.*g") rendering; "nan", "inf" and "-inf" for non-finite cells.
std::string format_number(double v, int precision);

/// Comma separated, LF line endings, no quoting.
void write_csv(std::ostream& os, const CsvTable& t, int precision = 9);
std::string to_csv(const CsvTable& t, int precision = 9);

/// Throws ConfigError on ragged rows or unparsable cells.
CsvTable parse_csv(std::istream& is);
CsvTable parse_csv_string(const std::string& text);

/// Writes to a temporary sibling file and renames it into place.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qdo
