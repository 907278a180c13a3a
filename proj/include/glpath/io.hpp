#pragma once
// Plain-text matrix reading and writing for the command line tools.

#include <string>

#include "glpath/types.hpp"

namespace glpath {

// Text form: the size n first, then n*n entries in row-major order, separated
// by any mix of whitespace and ';'.
Matrix parse_matrix_text(const std::string& text);

std::string format_matrix_text(const Matrix& a);

// Reads the named file when it exists, otherwise parses the argument itself
// as an inline literal like "2; 1 0; 0 1".
Matrix load_matrix_arg(const std::string& arg);

}  // namespace glpath
