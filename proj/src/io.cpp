#include "glpath/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace glpath {

Matrix parse_matrix_text(const std::string& text) {
  std::string cleaned = text;
  for (char& c : cleaned) {
    if (c == ';' || c == ',') c = ' ';
  }
  std::istringstream in(cleaned);

  int n = 0;
  if (!(in >> n) || n < 1 || n > kMaxSize) {
    throw std::invalid_argument(
        "parse_matrix_text: expected a size between 1 and 16 first");
  }
  Matrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!(in >> a(i, j))) {
        throw std::invalid_argument("parse_matrix_text: too few entries");
      }
    }
  }
  std::string rest;
  if (in >> rest) {
    throw std::invalid_argument("parse_matrix_text: trailing data after matrix");
  }
  return a;
}

std::string format_matrix_text(const Matrix& a) {
  check_square(a, "format_matrix_text");
  const int n = static_cast<int>(a.rows());
  char buf[64];
  std::string out = std::to_string(n) + "\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", a(i, j));
      out += buf;
      out += (j + 1 < n) ? ' ' : '\n';
    }
  }
  return out;
}

Matrix load_matrix_arg(const std::string& arg) {
  std::ifstream file(arg);
  if (file.good()) {
    std::ostringstream content;
    content << file.rdbuf();
    return parse_matrix_text(content.str());
  }
  return parse_matrix_text(arg);
}

}  // namespace glpath
