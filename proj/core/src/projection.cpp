#include "projrec/projection.hpp"

namespace projrec {

ProjectionOperator::ProjectionOperator(CMatrix entries) : entries_(std::move(entries)) {
  const int m = static_cast<int>(entries_.rows());
  if (m < 2 || entries_.cols() != m + 1)
    throw DimensionError("ProjectionOperator: expected an m x (m+1) matrix with m >= 2");
  const RVector s = singular_values(entries_);
  if (s(0) == 0.0 || s(m - 1) <= 1e-10 * s(0))
    throw DegenerateError("ProjectionOperator: rank below m");
}

CVector center(const ProjectionOperator& p) {
  const CMatrix k = null_space(p.entries(), 1e-10);
  if (k.cols() != 1) throw DegenerateError("center: kernel is not one-dimensional");
  return canonical_scale(k.col(0));
}

CMatrix lift_matrix(const ProjectionOperator& p) { return right_pseudo_inverse(p.entries()); }

CVector canonical_hyperplane(const ProjectionOperator& p) {
  const CMatrix k = null_space(lift_matrix(p).adjoint(), 1e-10);
  if (k.cols() != 1) throw DegenerateError("canonical_hyperplane: kernel is not one-dimensional");
  return canonical_scale(k.col(0));
}

CVector apply(const ProjectionOperator& p, const CVector& x) {
  if (x.size() != p.m() + 1) throw DimensionError("apply: point has wrong length");
  const CVector y = p.entries() * x;
  if (y.norm() <= 1e-12 * p.entries().norm() * x.norm())
    throw DegenerateError("apply: point is the center of projection");
  return y;
}

GradedLinearMap hat_last(const ProjectionOperator& p) {
  const int m = p.m();
  const CMatrix& M = p.entries();
  CMatrix e(binomial(m + 1, 2), m);
  for (int i = 0; i < m; ++i) {
    CMatrix rows(m + 1, m - 1);
    for (int j = 0, c = 0; j < m; ++j)
      if (j != i) rows.col(c++) = M.row(j).transpose();
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    e.col(i) = hodge(wedge_columns(rows)).coeffs() * sign;
  }
  return GradedLinearMap(GradeBasis(m, 1), GradeBasis(m + 1, 2), e);
}

GradedLinearMap hat_k(const ProjectionOperator& p, int k) {
  const int m = p.m();
  if (k < 1 || k > m - 1) throw DimensionError("hat_k: order out of range");
  const GradedLinearMap last = hat_last(p);
  if (k == m - 1) return last;

  // Scale the center so that lift(q) ∧ c reproduces hat_last exactly; the
  // join of several center lines is zero, so the general order wedges the
  // lifted subspace once with c.
  const CMatrix X = lift_matrix(p);
  const MultiVector o = MultiVector::from_vector(center(p));
  const CMatrix through = right_wedge_map(o, 1).entries * X;
  const Complex s = flatten(through).dot(flatten(last.entries)) / flatten(through).squaredNorm();
  const int r = m - k;
  const GradedLinearMap lifted = compound(X, r);
  const GradedLinearMap wedge = right_wedge_map(o * s, r);
  return GradedLinearMap(GradeBasis(m, r), GradeBasis(m + 1, r + 1), wedge.entries * lifted.entries);
}

GradedLinearMap tilde_k(const ProjectionOperator& p, int k) {
  const int m = p.m();
  if (k < 2 || k > m) throw DimensionError("tilde_k: order out of range");
  return compound(p.entries(), m - k + 1);
}

}  // namespace projrec
