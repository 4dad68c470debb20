#include "oracles.hpp"

#include <algorithm>

namespace oracle {

namespace {

void rec(int n, int k, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < n; ++i) {
    cur.push_back(i);
    rec(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

CMatrix complement(const CMatrix& a) {
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++r;
  return svd.matrixU().rightCols(a.rows() - r);
}

}  // namespace

std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  rec(n, k, 0, cur, out);
  return out;
}

int permutation_sign(std::vector<int> seq) {
  int sign = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = 0; j + 1 < seq.size() - i; ++j)
      if (seq[j] > seq[j + 1]) {
        std::swap(seq[j], seq[j + 1]);
        sign = -sign;
      }
  return sign;
}

Complex det(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n == 1) return a(0, 0);
  Complex acc = 0.0;
  for (int j = 0; j < n; ++j) {
    CMatrix minor(n - 1, n - 1);
    for (int r = 1; r < n; ++r)
      for (int c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = a(r, c);
    acc += ((j % 2 == 0) ? 1.0 : -1.0) * a(0, j) * det(minor);
  }
  return acc;
}

CVector wedge(const CMatrix& vectors) {
  const int n = static_cast<int>(vectors.rows());
  const int k = static_cast<int>(vectors.cols());
  const auto subs = subsets(n, k);
  CVector out(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    CMatrix sub(k, k);
    for (int r = 0; r < k; ++r) sub.row(r) = vectors.row(subs[i][r]);
    out(i) = det(sub);
  }
  return out;
}

CVector hodge(const CVector& coeffs, int dim, int grade) {
  const auto src = subsets(dim, grade);
  const auto dst = subsets(dim, dim - grade);
  CVector out = CVector::Zero(dst.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::vector<int> rest;
    for (int j = 0; j < dim; ++j)
      if (std::find(src[i].begin(), src[i].end(), j) == src[i].end()) rest.push_back(j);
    std::vector<int> concat = src[i];
    concat.insert(concat.end(), rest.begin(), rest.end());
    const auto pos = std::find(dst.begin(), dst.end(), rest) - dst.begin();
    out(pos) = static_cast<double>(permutation_sign(concat)) * coeffs(i);
  }
  return out;
}

CMatrix intersection(const CMatrix& a, const CMatrix& b) {
  const CMatrix ca = complement(a), cb = complement(b);
  CMatrix stacked(ca.cols() + cb.cols(), a.rows());
  stacked << ca.adjoint(), cb.adjoint();
  if (stacked.rows() == 0) return CMatrix::Identity(a.rows(), a.rows());
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  int r = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10 * svd.singularValues()(0)) ++r;
  return svd.matrixV().rightCols(a.rows() - r);
}

CVector cross(const CVector& a, const CVector& b) {
  CVector c(3);
  c << a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0);
  return c;
}

CMatrix skew(const CVector& t) {
  CMatrix s(3, 3);
  s << 0.0, -t(2), t(1), t(2), 0.0, -t(0), -t(1), t(0), 0.0;
  return s;
}

CMatrix adjugate(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  CMatrix adj(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMatrix minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c)
          if (c != i) minor(rr, cc++) = a(r, c);
        ++rr;
      }
      adj(i, j) = (((i + j) % 2 == 0) ? 1.0 : -1.0) * det(minor);
    }
  return adj;
}

}  // namespace oracle
