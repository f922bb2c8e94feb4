#pragma once

#include <string>
#include <vector>

namespace molens::io {

// Minimal CSV without quoting; all our fields are ids and numbers. Numbers
// are written with shortest round-trip formatting so files are byte-stable
// and re-read exactly.
std::string format_double(double v);

class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> header);
  void add_row(const std::vector<std::string>& cells);
  const std::string& text() const { return text_; }
  void save(const std::string& path) const;

private:
  std::size_t columns_;
  std::string text_;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
  int require_column(const std::string& name) const;
  double number(std::size_t row, int col) const;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text, const std::string& origin);

}  // namespace molens::io
