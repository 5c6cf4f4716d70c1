#include "magnon/cli/csv.hpp"

#include <array>
#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <stdexcept>

namespace magnon::cli
{

std::string FormatNumber(double value)
{
  std::array<char, 64> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  if (res.ec != std::errc())
  {
    throw std::runtime_error("number formatting failed");
  }
  return std::string(buf.data(), res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header))
{
  for (std::size_t i = 0; i < header_.size(); i++)
  {
    if (i > 0)
    {
      text_ += ',';
    }
    text_ += header_[i];
  }
  text_ += '\n';
}

void CsvTable::AddRow(std::initializer_list<CsvCell> cells)
{
  if (cells.size() != header_.size())
  {
    throw std::invalid_argument(
        fmt::format("csv row has {} fields, header has {}", cells.size(), header_.size()));
  }
  bool first = true;
  for (const CsvCell &c : cells)
  {
    if (!first)
    {
      text_ += ',';
    }
    text_ += c.text();
    first = false;
  }
  text_ += '\n';
  rows_++;
}

void CsvTable::Write(const std::filesystem::path &path) const
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text_.data(), static_cast<std::streamsize>(text_.size()));
  out.close();
  if (!out)
  {
    throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  }
}

}  // namespace magnon::cli
