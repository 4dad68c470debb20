#include "projrec/epipolar.hpp"

#include <cmath>

namespace projrec {

namespace {

void require_order(int m, int k, const char* what) {
  if (k < 2 || k > m - 1) throw DimensionError(std::string(what) + ": order out of range");
}

// Image of the step-(m-l) extensor with span W under F_l, computed from F_k
// by intersecting images of superspaces (l > k) or summing images of
// subspaces (l < k).
MultiVector converted_image(const FundamentalMatrix& f, const CMatrix& W, int l, Rng& rng) {
  const int m = f.m, k = f.k;
  std::optional<MultiVector> acc;
  if (l > k) {
    const int q = (l - 1 + k - 2) / (k - 1) + 1;
    for (int i = 0; i < q; ++i) {
      CMatrix wi(m, m - k);
      wi << W, rng.matrix(m, l - k);
      const MultiVector img = f.apply(wedge_columns(wi));
      acc = acc ? gen_meet(*acc, img) : img;
    }
  } else {
    const int q = (m - l + m - k - 1) / (m - k) + 1;
    for (int i = 0; i < q; ++i) {
      const CMatrix wi = W * rng.matrix(m - l, m - k);
      const MultiVector img = f.apply(wedge_columns(wi));
      acc = acc ? gen_join(*acc, img) : img;
    }
  }
  return *acc;
}

}  // namespace

FundamentalMatrix::FundamentalMatrix(int m_, int k_, CMatrix e) : m(m_), k(k_), entries(std::move(e)) {
  require_order(m, k, "FundamentalMatrix");
  if (entries.rows() != binomial(m, m - k + 1) || entries.cols() != binomial(m, m - k))
    throw DimensionError("FundamentalMatrix: shape must be C(m,m-k+1) x C(m,m-k)");
}

MultiVector FundamentalMatrix::apply(const MultiVector& w) const {
  if (w.dim() != m || w.grade() != m - k) throw DimensionError("FundamentalMatrix::apply: grade mismatch");
  return MultiVector(m, m - k + 1, entries * w.coeffs());
}

EpipolePair epipoles(const ProjectionOperator& p1, const ProjectionOperator& p2) {
  if (p1.m() != p2.m()) throw DimensionError("epipoles: ambient dimension mismatch");
  const CVector o1 = center(p1), o2 = center(p2);
  if (proj_distance(o1, o2) < 1e-8) throw DegenerateError("epipoles: coincident centers");
  return {canonical_scale(p1.entries() * o2), canonical_scale(p2.entries() * o1)};
}

FundamentalMatrix fundamental(const ProjectionOperator& p1, const ProjectionOperator& p2, int k) {
  if (p1.m() != p2.m()) throw DimensionError("fundamental: ambient dimension mismatch");
  const int m = p1.m();
  require_order(m, k, "fundamental");
  if (proj_distance(center(p1), center(p2)) < 1e-8) throw DegenerateError("fundamental: coincident centers");
  return FundamentalMatrix(m, k, tilde_k(p2, k).entries * hat_k(p1, k).entries);
}

FundamentalMatrix reduced_fundamental(const ProjectionOperator& p1, const ProjectionOperator& p2) {
  if (p1.m() != p2.m()) throw DimensionError("reduced_fundamental: ambient dimension mismatch");
  const int m = p1.m();
  const CMatrix b1 = p1.entries().leftCols(m), b2 = p2.entries().leftCols(m);
  const RVector s1 = singular_values(b1), s2 = singular_values(b2);
  if (s1(m - 1) <= 1e-12 * s1(0) || s2(m - 1) <= 1e-12 * s2(0)) return fundamental(p1, p2, m - 1);
  const CMatrix g = b2 * b1.fullPivLu().inverse();
  const CVector e2 = p2.entries().col(m) - g * p1.entries().col(m);
  if (e2.norm() < 1e-12 * g.norm()) throw DegenerateError("reduced_fundamental: coincident centers");
  return FundamentalMatrix(m, m - 1, left_wedge_map(MultiVector::from_vector(e2), 1).entries * g);
}

CMatrix classical_fundamental(const FundamentalMatrix& f) {
  if (f.m != 3 || f.k != 2) throw DimensionError("classical_fundamental: requires m = 3, k = 2");
  return hodge_map(3, 2).entries * f.entries;
}

CorrespondenceResidual correspondence_residual(const FundamentalMatrix& f, const MultiVector& w1,
                                               const MultiVector& w2, const CVector& e2) {
  if (w2.dim() != f.m || w2.grade() != f.m - f.k || e2.size() != f.m)
    throw DimensionError("correspondence_residual: grade mismatch");
  if (w1.norm() < 1e-300 || w2.norm() < 1e-300 || e2.norm() < 1e-300)
    throw DegenerateError("correspondence_residual: zero input");
  CorrespondenceResidual r;
  const MultiVector fw = f.apply(w1);
  if (fw.norm() <= 1e-10 * f.entries.norm() * w1.norm()) {
    r.epipolar = true;
    r.distance = 1.0;
    return r;
  }
  const MultiVector target = join(MultiVector::from_vector(e2), w2);
  r.distance = target.norm() < 1e-300 ? 1.0 : proj_distance(fw, target);
  if (f.k == f.m - 1) r.incidence = join(w2, fw).norm() / (w2.norm() * fw.norm());
  return r;
}

FundamentalMatrix convert(const FundamentalMatrix& f, int l, std::uint64_t seed) {
  const int m = f.m;
  require_order(m, l, "convert");
  if (l == f.k) return f;
  const int rows = static_cast<int>(binomial(m, m - l + 1));
  const int cols = static_cast<int>(binomial(m, m - l));
  const int count = 2 * cols + 4;
  Rng rng(seed);
  CMatrix system = CMatrix::Zero(static_cast<Eigen::Index>(count) * rows, static_cast<Eigen::Index>(rows) * cols);
  for (int c = 0; c < count; ++c) {
    std::optional<MultiVector> image;
    CMatrix W;
    for (int attempt = 0; attempt < 8 && !image; ++attempt) {
      W = rng.matrix(m, m - l);
      try {
        MultiVector img = converted_image(f, W, l, rng);
        if (img.grade() == m - l + 1 && img.norm() > 0.5) image = img;
      } catch (const DegenerateError&) {
      }
    }
    if (!image) throw NumericalError("convert: degenerate decomposition after 8 retries");
    const CVector w = wedge_columns(W).coeffs();
    const CVector u = image->coeffs().normalized();
    const CMatrix proj = CMatrix::Identity(rows, rows) - u * u.adjoint();
    for (int b = 0; b < cols; ++b)
      system.block(static_cast<Eigen::Index>(c) * rows, static_cast<Eigen::Index>(b) * rows, rows, rows) = proj * w(b);
  }
  Eigen::BDCSVD<CMatrix> svd(system, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const Eigen::Index n = system.cols();
  if (s(n - 2) <= 1e-8 * s(0)) throw NumericalError("convert: solution is not unique");
  const CVector v = svd.matrixV().col(n - 1);
  CMatrix out = Eigen::Map<const CMatrix>(v.data(), rows, cols);
  return FundamentalMatrix(m, l, out);
}

RankProfile rank_profile(const FundamentalMatrix& f, double rel_tol) {
  RankProfile r;
  r.singular_values = singular_values(f.entries);
  r.observed = numeric_rank(f.entries, rel_tol);
  r.expected = static_cast<int>(binomial(f.m - 1, f.m - f.k));
  return r;
}

GradedLinearMap e1_wedge_matrix(const CVector& e1, int m) {
  if (e1.size() != m || m < 3) throw DimensionError("e1_wedge_matrix: expected a point of C^m, m >= 3");
  if (e1.norm() < 1e-300) throw DegenerateError("e1_wedge_matrix: zero epipole");
  return left_wedge_map(MultiVector::from_vector(e1), m - 3);
}

GradedLinearMap e2_annihilator(const CVector& e2, const FundamentalMatrix& f) {
  if (e2.size() != f.m) throw DimensionError("e2_annihilator: epipole length mismatch");
  return left_wedge_map(MultiVector::from_vector(e2), f.m - f.k + 1);
}

long long space_dimension(int m, int k) {
  require_order(m, k, "space_dimension");
  const long long a = binomial(m, m - k + 1), b = binomial(m, m - k), r = binomial(m - 1, m - k);
  return a * b - (a - r) * (b - r) - 1;
}

}  // namespace projrec
