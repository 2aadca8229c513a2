#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace fgig {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Locale-independent shortest-safe form with 17 significant digits.
[[nodiscard]] std::string format_real(double value);

/// Comma-separated file with a header row and LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string> header);

  CsvWriter& cell(double value);
  CsvWriter& cell(int value);
  CsvWriter& cell(const std::string& value);
  void end_row();
  /// Flushes and reports write failures with the file path.
  void close();

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_ = 0;
  std::size_t in_row_ = 0;
};

/// Creates `dir` if needed and checks that files can be created in it.
void ensure_writable_directory(const std::filesystem::path& dir);

}  // namespace fgig
