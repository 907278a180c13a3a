#pragma once

#include <vector>

#include "glpath/types.hpp"

namespace glpath {

// Polynomial in the monomial basis, constant coefficient first.
struct DetPolynomial {
  std::vector<double> coeffs;

  double operator()(double t) const;  // Horner evaluation
  double derivative_at(double t) const;
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

// The polynomial t -> det((1-t) a + t b), recovered by evaluating the
// determinant at n+1 Chebyshev nodes of [0, 1] and solving the interpolation
// system. The leading coefficient is det(b - a).
DetPolynomial det_along_segment(const Matrix& a, const Matrix& b);

// Real roots of p inside the open interval (0, 1), ascending. Eigenvalues of
// the companion matrix with imaginary part at most imag_tol count as real;
// clusters closer than merge_tol collapse to their mean, so roots of higher
// multiplicity are reported once.
std::vector<double> real_roots_in_unit_interval(const DetPolynomial& p,
                                                double imag_tol = 1e-6,
                                                double merge_tol = 1e-8);

}  // namespace glpath
