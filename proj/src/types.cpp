#include "glpath/types.hpp"

#include <stdexcept>
#include <string>

namespace glpath {

void check_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(std::string(who) + ": matrix is " +
                                std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + ", expected square");
  }
  if (a.rows() < 1 || a.rows() > kMaxSize) {
    throw std::invalid_argument(std::string(who) + ": dimension " +
                                std::to_string(a.rows()) + " outside [1, " +
                                std::to_string(kMaxSize) + "]");
  }
  if (!a.allFinite()) {
    throw std::invalid_argument(std::string(who) + ": non-finite entries");
  }
}

void check_same_size(const Matrix& a, const Matrix& b, const char* who) {
  check_square(a, who);
  check_square(b, who);
  if (a.rows() != b.rows()) {
    throw std::invalid_argument(std::string(who) + ": dimensions disagree (" +
                                std::to_string(a.rows()) + " vs " +
                                std::to_string(b.rows()) + ")");
  }
}

}  // namespace glpath
