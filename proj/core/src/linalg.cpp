#include "projrec/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace projrec {

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double Rng::normal() { return normal_(engine_); }

double Rng::uniform() { return uniform_(engine_); }

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

CVector Rng::vector(int n) {
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = complex_normal();
  return v;
}

CMatrix Rng::matrix(int rows, int cols) {
  CMatrix a(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) a(i, j) = complex_normal();
  return a;
}

std::uint64_t Rng::next_seed() { return engine_(); }

RVector singular_values(const CMatrix& a) {
  if (a.size() == 0) return RVector();
  Eigen::BDCSVD<CMatrix> svd(a);
  return svd.singularValues();
}

int numeric_rank(const CMatrix& a, double rel_tol) {
  const RVector s = singular_values(a);
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++r;
  return r;
}

CMatrix null_space(const CMatrix& a, double rel_tol) {
  const int n = static_cast<int>(a.cols());
  if (a.rows() == 0) return CMatrix::Identity(n, n);
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  int r = 0;
  if (s.size() > 0 && s(0) > 0.0)
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * s(0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

CMatrix column_space(const CMatrix& a, double rel_tol) {
  if (a.cols() == 0) return CMatrix(a.rows(), 0);
  Eigen::BDCSVD<CMatrix> svd(a, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  int r = 0;
  if (s(0) > 0.0)
    for (int i = 0; i < s.size(); ++i)
      if (s(i) > rel_tol * s(0)) ++r;
  return svd.matrixU().leftCols(r);
}

double subspace_distance(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw DimensionError("subspace_distance: ambient mismatch");
  const CMatrix qa = column_space(a);
  const CMatrix qb = column_space(b);
  if (qa.cols() != qb.cols()) return 1.0;
  if (qa.cols() == 0) return 0.0;
  const CMatrix residual = qb - qa * (qa.adjoint() * qb);
  const RVector s = singular_values(residual);
  return std::min(1.0, s.size() ? s(0) : 0.0);
}

double proj_distance(const CVector& a, const CVector& b) {
  if (a.size() != b.size()) throw DimensionError("proj_distance: length mismatch");
  const double na = a.norm();
  const double nb = b.norm();
  if (na < 1e-300 || nb < 1e-300) throw DegenerateError("proj_distance: zero vector");
  const CVector ua = a / na;
  const CVector ub = b / nb;
  const Complex z = ub.dot(ua);
  const Complex w = std::abs(z) > 0.0 ? z / std::abs(z) : Complex(1.0, 0.0);
  return (ua - w * ub).norm();
}

CVector canonical_scale(const CVector& v) {
  const double n = v.norm();
  if (n < 1e-300) throw DegenerateError("canonical_scale: zero vector");
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  const Complex p = v(imax) / std::abs(v(imax));
  return v / (n * p);
}

CVector flatten(const CMatrix& a) {
  return Eigen::Map<const CVector>(a.data(), a.size());
}

CMatrix right_pseudo_inverse(const CMatrix& a) {
  const CMatrix gram = a * a.adjoint();
  return a.adjoint() * gram.fullPivLu().inverse();
}

}  // namespace projrec
