#pragma once

#include <Eigen/Dense>

namespace glpath {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Desk-scale cap on the matrix dimension.
inline constexpr int kMaxSize = 16;

// Relative singular value cutoff for numerical rank decisions.
inline constexpr double kRankTol = 1e-8;

// Default push-out magnitude relative to the local scale.
inline constexpr double kDefaultEps = 1e-3;

// Throws std::invalid_argument unless a is square, at most kMaxSize, and has
// finite entries. `who` names the operation in the message.
void check_square(const Matrix& a, const char* who);

// As check_square for both, and the dimensions must agree.
void check_same_size(const Matrix& a, const Matrix& b, const char* who);

}  // namespace glpath
