// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "rrr/types.hpp"

namespace rrr {

// RFC-4180-style CSV with a header row. Numbers print with 17 significant
// digits; complex values as "re+imj" text. Comment lines start with '#';
// the generation timestamp is suppressed in deterministic mode so reruns
// are byte-identical.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header,
            bool deterministic);

  void comment(const std::string& text);

  CsvWriter& field(const std::string& s);
  CsvWriter& field(double v);
  CsvWriter& field(Index v);
  CsvWriter& field(std::uint64_t v);
  CsvWriter& field(Complex v);
  void end_row();

 private:
  std::ofstream os_;
  std::string path_;
  bool row_open_ = false;
  std::size_t fields_ = 0;
  std::size_t expected_ = 0;
  void sep();
};

std::string format_complex(Complex v);
std::string format_double(double v);

}  // namespace rrr
