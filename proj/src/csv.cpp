// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/csv.hpp"

#include <chrono>
#include <cstdio>

#include "rrr/errors.hpp"

namespace rrr {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string format_complex(Complex v) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", v.real(), v.imag());
  return buf;
}

CsvWriter::CsvWriter(const std::string& path,
                     const std::vector<std::string>& header,
                     bool deterministic)
    : os_(path), path_(path), expected_(header.size()) {
  if (!os_) throw ParseError(path, 0, "cannot open for writing");
  if (!deterministic) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    const auto secs =
        std::chrono::duration_cast<std::chrono::seconds>(now).count();
    os_ << "# generated at unix time " << secs << "\n";
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) os_ << ",";
    os_ << header[i];
  }
  os_ << "\n";
}

void CsvWriter::comment(const std::string& text) {
  if (row_open_) throw Error("CsvWriter: comment inside a row");
  os_ << "# " << text << "\n";
}

void CsvWriter::sep() {
  if (row_open_) os_ << ",";
  row_open_ = true;
  ++fields_;
}

CsvWriter& CsvWriter::field(const std::string& s) {
  sep();
  os_ << s;
  return *this;
}

CsvWriter& CsvWriter::field(double v) { return field(format_double(v)); }

CsvWriter& CsvWriter::field(Index v) { return field(std::to_string(v)); }

CsvWriter& CsvWriter::field(std::uint64_t v) {
  return field(std::to_string(v));
}

CsvWriter& CsvWriter::field(Complex v) { return field(format_complex(v)); }

void CsvWriter::end_row() {
  if (fields_ != expected_) {
    throw Error("CsvWriter: row in " + path_ + " has " +
                std::to_string(fields_) + " fields, expected " +
                std::to_string(expected_));
  }
  os_ << "\n";
  row_open_ = false;
  fields_ = 0;
  if (!os_) throw ParseError(path_, 0, "write failed");
}

}  // namespace rrr
