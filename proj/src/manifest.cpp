// Copyright (c) 2026 the subspace-extract developers.
// SPDX-License-Identifier: Apache-2.0

#include "rrr/manifest.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "rrr/errors.hpp"
#include "rrr/matrix_market.hpp"

namespace rrr {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

void save_problem(const std::string& manifest_path, const MatrixFunction& fn,
                  const std::string& stem) {
  const fs::path mpath(manifest_path);
  const fs::path dir = mpath.parent_path();
  std::ofstream os(mpath);
  if (!os) throw ParseError(manifest_path, 0, "cannot open for writing");
  os.precision(17);
  os << "n = " << fn.dim() << "\n";
  os << "region = " << fn.region().describe() << "\n";
  os << "nterms = " << fn.terms().size() << "\n";
  for (std::size_t i = 0; i < fn.terms().size(); ++i) {
    const auto& [st, mat] = fn.terms()[i];
    const std::string key = "term" + std::to_string(i);
    switch (st.kind()) {
      case ScalarTerm::Kind::constant:
        os << key << ".kind = constant\n";
        break;
      case ScalarTerm::Kind::monomial:
        os << key << ".kind = monomial\n";
        os << key << ".power = " << st.power() << "\n";
        break;
      case ScalarTerm::Kind::analytic:
        throw Error("save_problem: analytic terms cannot be serialized");
    }
    os << key << ".coeff = " << st.coeff().real() << " " << st.coeff().imag()
       << "\n";
    const std::string fname = stem + std::to_string(i) + ".mtx";
    os << key << ".matrix = " << fname << "\n";
    write_matrix_market((dir / fname).string(), mat);
  }
  if (!os) throw ParseError(manifest_path, 0, "write failed");
}

MatrixFunction load_problem(const std::string& manifest_path) {
  std::ifstream is(manifest_path);
  if (!is) throw ParseError(manifest_path, 0, "cannot open for reading");
  const fs::path dir = fs::path(manifest_path).parent_path();

  std::map<std::string, std::string> kv;
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ParseError(manifest_path, lineno, "expected key = value");
    }
    kv[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }

  const auto need = [&](const std::string& key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) {
      throw ParseError(manifest_path, 0, "missing key '" + key + "'");
    }
    return it->second;
  };

  const Index n = std::stoll(need("n"));
  const Region region = Region::parse(need("region"));
  const long nterms = std::stol(need("nterms"));
  if (nterms < 1) throw ParseError(manifest_path, 0, "nterms must be >= 1");

  std::vector<MatrixFunction::Term> terms;
  for (long i = 0; i < nterms; ++i) {
    const std::string key = "term" + std::to_string(i);
    const std::string kind = need(key + ".kind");
    Complex coeff(1, 0);
    if (kv.count(key + ".coeff")) {
      std::istringstream cs(kv[key + ".coeff"]);
      double re = 0, im = 0;
      if (!(cs >> re)) {
        throw ParseError(manifest_path, 0, key + ".coeff malformed");
      }
      cs >> im;
      coeff = Complex(re, im);
    }
    ScalarTerm st = ScalarTerm::constant(coeff);
    if (kind == "monomial") {
      st = ScalarTerm::monomial(coeff, std::stoi(need(key + ".power")));
    } else if (kind != "constant") {
      throw ParseError(manifest_path, 0,
                       "unsupported term kind '" + kind + "'");
    }
    const Matrix mat =
        read_matrix_market((dir / need(key + ".matrix")).string());
    if (mat.rows() != n || mat.cols() != n) {
      throw ParseError(manifest_path, 0,
                       key + ": matrix dimension disagrees with n");
    }
    terms.emplace_back(st, mat);
  }
  return MatrixFunction(std::move(terms), region);
}

}  // namespace rrr
