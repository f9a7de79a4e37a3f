// Copyright 2026 The uavqoe Authors
// SPDX-License-Identifier: Apache-2.0

#include "uavqoe/csv.hpp"

#include <cstdio>

#include "uavqoe/common.hpp"

namespace uavqoe {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string format_double_exact(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.emplace_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

CsvRow& CsvRow::field(std::string_view text) {
  if (!first_) text_ += ',';
  text_ += text;
  first_ = false;
  return *this;
}

CsvRow& CsvRow::field(double value) { return field(std::string_view(format_double(value))); }

CsvRow& CsvRow::field(long long value) { return field(std::string_view(std::to_string(value))); }

CsvRow& CsvRow::field(std::uint64_t value) {
  return field(std::string_view(std::to_string(value)));
}

std::string CsvRow::line() {
  std::string out = std::move(text_);
  out += '\n';
  text_.clear();
  first_ = true;
  return out;
}

CsvWriter::CsvWriter(const std::string& path, std::initializer_list<std::string_view> header)
    : out_(path, std::ios::binary | std::ios::trunc) {
  if (!out_) throw RuntimeError("cannot open " + path + " for writing");
  for (const auto h : header) field(h);
  end_row();
}

CsvWriter& CsvWriter::field(std::string_view text) {
  if (!first_) out_ << ',';
  out_ << text;
  first_ = false;
  return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(std::string_view(format_double(value))); }

CsvWriter& CsvWriter::field(long long value) {
  return field(std::string_view(std::to_string(value)));
}

void CsvWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

}  // namespace uavqoe
