#pragma once

#include <cstddef>
#include <filesystem>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace magnon::cli
{

/// printf("%.17g")-style rendering: 17 significant digits, '.' decimal separator.
std::string FormatNumber(double value);

/// One CSV field, rendered on construction.
class CsvCell
{
public:
  CsvCell(double value) : text_(FormatNumber(value)) {}
  CsvCell(std::size_t value) : text_(std::to_string(value)) {}
  CsvCell(int value) : text_(std::to_string(value)) {}
  CsvCell(std::string_view text) : text_(text) {}
  CsvCell(const char *text) : text_(text) {}

  const std::string &text() const { return text_; }

private:
  std::string text_;
};

/// In-memory CSV with a fixed header; LF line endings, no quoting.
class CsvTable
{
public:
  explicit CsvTable(std::vector<std::string> header);

  /// Throws std::invalid_argument if the row width differs from the header.
  void AddRow(std::initializer_list<CsvCell> cells);

  std::size_t rows() const { return rows_; }
  const std::vector<std::string> &header() const { return header_; }
  const std::string &text() const { return text_; }

  /// Throws std::runtime_error if the file cannot be written.
  void Write(const std::filesystem::path &path) const;

private:
  std::vector<std::string> header_;
  std::string text_;
  std::size_t rows_ = 0;
};

}  // namespace magnon::cli
