// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "rrr/errors.hpp"

namespace rrr {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

}  // namespace

void write_matrix_market(const std::string& path, const Matrix& m) {
  std::ofstream os(path);
  if (!os) throw ParseError(path, 0, "cannot open for writing");
  os.precision(17);
  os << "%%MatrixMarket matrix array complex general\n";
  os << m.rows() << " " << m.cols() << "\n";
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      os << m(i, j).real() << " " << m(i, j).imag() << "\n";
    }
  }
  if (!os) throw ParseError(path, 0, "write failed");
}

Matrix read_matrix_market(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError(path, 0, "cannot open for reading");
  std::string line;
  long lineno = 0;

  if (!std::getline(is, line)) throw ParseError(path, 1, "empty file");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || lower(object) != "matrix") {
    throw ParseError(path, lineno, "not a MatrixMarket matrix file");
  }
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  const bool coordinate = (format == "coordinate");
  if (!coordinate && format != "array") {
    throw ParseError(path, lineno, "unsupported format '" + format + "'");
  }
  if (field != "real" && field != "complex" && field != "integer" &&
      !(coordinate && field == "pattern")) {
    throw ParseError(path, lineno, "unsupported field '" + field + "'");
  }
  if (symmetry != "general" && symmetry != "symmetric" &&
      symmetry != "hermitian" && symmetry != "skew-symmetric") {
    throw ParseError(path, lineno, "unsupported symmetry '" + symmetry + "'");
  }

  // Skip comments and blank lines.
  auto next_data_line = [&]() -> std::string {
    std::string l;
    while (std::getline(is, l)) {
      ++lineno;
      if (l.empty() || l[0] == '%') continue;
      return l;
    }
    throw ParseError(path, lineno, "unexpected end of file");
  };

  std::istringstream sizes(next_data_line());
  Index rows = 0, cols = 0;
  long nnz = 0;
  if (coordinate) {
    if (!(sizes >> rows >> cols >> nnz)) {
      throw ParseError(path, lineno, "bad coordinate size line");
    }
  } else {
    if (!(sizes >> rows >> cols)) {
      throw ParseError(path, lineno, "bad array size line");
    }
  }
  if (rows < 1 || cols < 1) throw ParseError(path, lineno, "bad dimensions");

  Matrix m = Matrix::Zero(rows, cols);
  const auto read_value = [&](std::istringstream& ss) -> Complex {
    if (field == "pattern") return Complex(1, 0);
    double re = 0, im = 0;
    if (!(ss >> re)) throw ParseError(path, lineno, "bad numeric value");
    if (field == "complex" && !(ss >> im)) {
      throw ParseError(path, lineno, "missing imaginary part");
    }
    return Complex(re, im);
  };

  const auto mirror = [&](Index i, Index j, Complex v) {
    if (i == j || symmetry == "general") return;
    if (symmetry == "symmetric") {
      m(j, i) = v;
    } else if (symmetry == "hermitian") {
      m(j, i) = std::conj(v);
    } else {  // skew-symmetric
      m(j, i) = -v;
    }
  };

  if (coordinate) {
    for (long k = 0; k < nnz; ++k) {
      std::istringstream ss(next_data_line());
      Index i = 0, j = 0;
      if (!(ss >> i >> j)) throw ParseError(path, lineno, "bad entry indices");
      if (i < 1 || i > rows || j < 1 || j > cols) {
        throw ParseError(path, lineno, "entry indices out of range");
      }
      const Complex v = read_value(ss);
      m(i - 1, j - 1) = v;
      mirror(i - 1, j - 1, v);
    }
  } else {
    // Array format stores the (lower triangle of the) matrix column-major.
    for (Index j = 0; j < cols; ++j) {
      const Index i0 = (symmetry == "general") ? 0 : j;
      for (Index i = i0; i < rows; ++i) {
        std::istringstream ss(next_data_line());
        const Complex v = read_value(ss);
        m(i, j) = v;
        mirror(i, j, v);
      }
    }
  }
  if (!m.allFinite()) throw ParseError(path, lineno, "non-finite entries");
  return m;
}

}  // namespace rrr
