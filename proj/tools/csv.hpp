#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace wdistill::cli {

// 12 significant digits, '.' decimal separator, independent of the locale.
std::string format_number(double value);

// Writes comma-separated rows with LF line endings.
class CsvWriter {
 public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& header);

  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(int value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(const std::string& value);
  void end_row();

 private:
  void separator();

  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

}  // namespace wdistill::cli
