#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace projrec {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

// Default threshold for rank decisions and projective equality.
inline constexpr double kDefaultTol = 1e-8;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes, grades or ambient dimensions do not line up.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Input is geometrically degenerate (zero, dependent, coincident, ...).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

// Numerical procedure failed to produce an acceptable answer.
class NumericalError : public Error {
 public:
  using Error::Error;
};

long long binomial(int n, int k);

// Seeded source of complex Gaussian samples.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal();
  double uniform();
  Complex complex_normal();
  CVector vector(int n);
  CMatrix matrix(int rows, int cols);
  std::uint64_t next_seed();

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

RVector singular_values(const CMatrix& a);

// Number of singular values above rel_tol times the largest.
int numeric_rank(const CMatrix& a, double rel_tol = kDefaultTol);

// Orthonormal basis (columns) of {x : a x = 0}, thresholded relative to the
// largest singular value. An all-zero matrix has the full space as kernel.
CMatrix null_space(const CMatrix& a, double rel_tol = kDefaultTol);

// Orthonormal basis of the column space of a.
CMatrix column_space(const CMatrix& a, double rel_tol = kDefaultTol);

// Sine of the largest principal angle between two column spans; 1 when the
// dimensions differ.
double subspace_distance(const CMatrix& a, const CMatrix& b);

// Distance between the points of projective space represented by a and b:
// min over unit phases w of |a/|a| - w b/|b||. Throws on zero input.
double proj_distance(const CVector& a, const CVector& b);

// Unit norm, largest-magnitude entry real positive.
CVector canonical_scale(const CVector& v);

// Flattened (column-major) view of a matrix as a vector.
CVector flatten(const CMatrix& a);

// Moore-Penrose pseudo-inverse of a full-row-rank matrix.
CMatrix right_pseudo_inverse(const CMatrix& a);

}  // namespace projrec
