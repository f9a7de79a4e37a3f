// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <initializer_list>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace uavqoe {

/// Twelve significant digits, locale independent.
std::string format_double(double value);

/// Seventeen significant digits; parses back to the same double.
std::string format_double_exact(double value);

/// Splits one CSV record; fields are never quoted in files written here.
std::vector<std::string> split_csv_line(std::string_view line);

/// Builds one CSV record in memory; used when rows are produced on worker
/// threads and written later in a fixed order.
class CsvRow {
 public:
  CsvRow& field(std::string_view text);
  CsvRow& field(double value);
  CsvRow& field(long long value);
  CsvRow& field(int value) { return field(static_cast<long long>(value)); }
  CsvRow& field(std::uint64_t value);
  /// Terminates the record and returns it, newline included.
  std::string line();

 private:
  std::string text_;
  bool first_ = true;
};

class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::initializer_list<std::string_view> header);

  CsvWriter& field(std::string_view text);
  CsvWriter& field(double value);
  CsvWriter& field(long long value);
  CsvWriter& field(int value) { return field(static_cast<long long>(value)); }
  CsvWriter& field(std::size_t value) { return field(static_cast<long long>(value)); }
  void end_row();
  /// Appends pre-formatted rows verbatim.
  void raw(std::string_view rows) { out_ << rows; }

 private:
  std::ofstream out_;
  bool first_ = true;
};

}  // namespace uavqoe
