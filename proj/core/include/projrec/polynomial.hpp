#pragma once

#include <cstdint>
#include <vector>

#include "projrec/linalg.hpp"

namespace projrec {

using Exponent = std::vector<int>;

// Exponents of the degree-d monomials in n variables, graded lexicographic:
// x0^d first, x_{n-1}^d last.
const std::vector<Exponent>& monomials(int nvars, int degree);

int monomial_count(int nvars, int degree);

CVector monomial_values(const CVector& x, int degree);

// Rows are monomial_values of the columns of points.
CMatrix monomial_design(const CMatrix& points, int degree);

// Coefficients of the product of two forms in nvars variables.
CVector multiply_forms(const CVector& a, int da, const CVector& b, int db, int nvars);

Complex evaluate_form(const CVector& coeffs, const CVector& x, int degree);

CVector form_gradient(const CVector& coeffs, const CVector& x, int degree);

// A point (t0 : t1) of P^1, unit-normalized, with multiplicity.
struct BinaryRoot {
  Complex t0;
  Complex t1;
  int multiplicity = 1;
};

// Roots of a binary form given in the monomial basis t0^d, t0^{d-1} t1, ...,
// t1^d. Roots closer than cluster_tol (chordal) are merged.
std::vector<BinaryRoot> binary_form_roots(const CVector& coeffs, double cluster_tol = 1e-6);

// Chordal distance |x0 y1 - x1 y0| between unit representatives.
double chordal_distance(const BinaryRoot& a, const BinaryRoot& b);

// Least-squares coefficients of the degree-d form matching values at the
// columns of points.
CVector interpolate_form(const CMatrix& points, const CVector& values, int degree);

// Seeded low-discrepancy complex points (columns) in C^dim: a Halton sequence
// with a random shift, mapped to the square [-1,1]^2 per coordinate.
CMatrix halton_points(int dim, int count, std::uint64_t seed);

}  // namespace projrec
