#include "projrec/recovery.hpp"

#include <cmath>
#include <limits>

#include "projrec/polynomial.hpp"
#include "projrec/varieties.hpp"

namespace projrec {

ProjectionPair::ProjectionPair(ProjectionOperator a, ProjectionOperator b) : first(std::move(a)), second(std::move(b)) {
  if (first.m() != second.m()) throw DimensionError("ProjectionPair: ambient dimension mismatch");
  if (proj_distance(center(first), center(second)) < 1e-8) throw DegenerateError("ProjectionPair: coincident centers");
}

ProjectionPair pgl_act(const CMatrix& a, const ProjectionPair& pair) {
  const int n = pair.m() + 1;
  if (a.rows() != n || a.cols() != n) throw DimensionError("pgl_act: matrix must be (m+1) x (m+1)");
  const RVector s = singular_values(a);
  if (s(n - 1) <= 1e-12 * s(0)) throw DegenerateError("pgl_act: singular transformation");
  const CMatrix inv = a.fullPivLu().inverse();
  return ProjectionPair(ProjectionOperator(pair.first.entries() * inv), ProjectionOperator(pair.second.entries() * inv));
}

CanonicalPair canonical_pair(const FundamentalMatrix& f) {
  const int m = f.m;
  if (f.k != m - 1) throw DimensionError("canonical_pair: requires the order m-1 matrix");
  const RankProfile rp = rank_profile(f);
  if (rp.observed != rp.expected) throw DegenerateError("canonical_pair: rank pattern violated");

  // e2 ∧ f_j = 0 for every column.
  const int per = static_cast<int>(binomial(m, 3));
  CMatrix stacked(static_cast<Eigen::Index>(per) * m, m);
  for (int j = 0; j < m; ++j) {
    const MultiVector col(m, 2, f.entries.col(j));
    stacked.middleRows(static_cast<Eigen::Index>(j) * per, per) = right_wedge_map(col, 1).entries;
  }
  const CMatrix ker = null_space(stacked);
  if (ker.cols() != 1) throw DegenerateError("canonical_pair: second epipole is ambiguous");
  const CVector e2 = canonical_scale(ker.col(0));

  const MultiVector plane = hodge(MultiVector::from_vector(e2));
  CMatrix h(m, m);
  for (int j = 0; j < m; ++j) h.col(j) = meet(plane, MultiVector(m, 2, f.entries.col(j))).coeffs();
  Eigen::Index r = 0, c = 0;
  h.cwiseAbs().maxCoeff(&r, &c);
  h /= h(r, c);

  CMatrix first = CMatrix::Zero(m, m + 1);
  first.leftCols(m).setIdentity();
  CMatrix second(m, m + 1);
  second << h, e2;
  return {ProjectionPair(ProjectionOperator(first), ProjectionOperator(second)), h, e2};
}

Alignment align_pair(const ProjectionPair& pair) {
  const int m = pair.m();
  const CMatrix& M1 = pair.first.entries();
  const CMatrix& M2 = pair.second.entries();
  const CMatrix b1 = M1.leftCols(m), b2 = M2.leftCols(m);
  const CVector t1 = M1.col(m), t2 = M2.col(m);
  const RVector s = singular_values(b1);
  if (s(m - 1) <= 1e-12 * s(0)) throw DegenerateError("align_pair: singular leading block");

  Alignment out;
  const CMatrix g = b2 * b1.fullPivLu().inverse();
  out.e2 = t2 - g * t1;
  const Complex ee = (out.e2.transpose() * out.e2)(0);
  if (std::abs(ee) < 1e-10 * out.e2.squaredNorm()) throw DegenerateError("align_pair: isotropic epipole");
  const CMatrix proj = CMatrix::Identity(m, m) - out.e2 * out.e2.transpose() / ee;
  out.H = proj * g;
  out.lambda = ((out.e2.transpose() * t2)(0) - (out.e2.transpose() * out.H * t1)(0)) / ee;
  out.v = ((out.e2.transpose() * (b2 - out.H * b1)) / ee).transpose();

  out.B = CMatrix(m + 1, m + 1);
  out.B.topLeftCorner(m, m) = b1;
  out.B.topRightCorner(m, 1) = t1;
  out.B.bottomLeftCorner(1, m) = out.v.transpose();
  out.B(m, m) = out.lambda;
  out.A = out.B.fullPivLu().inverse();

  out.eq1_residual = (b2 - (out.H * b1 + out.e2 * out.v.transpose())).norm() / b2.norm();
  out.eq2_residual = (t2 - (out.H * t1 + out.lambda * out.e2)).norm() / std::max(t2.norm(), out.e2.norm());
  return out;
}

bool pairs_equivalent(const ProjectionPair& a, const ProjectionPair& b, double tol) {
  if (a.m() != b.m()) return false;
  const FundamentalMatrix fa = reduced_fundamental(a.first, a.second);
  const FundamentalMatrix fb = reduced_fundamental(b.first, b.second);
  return proj_distance(flatten(fa.entries), flatten(fb.entries)) < tol;
}

namespace {

double form_residual(const ImplicitVariety& y, const CVector& x) {
  const CVector u = x.normalized();
  double worst = 0.0;
  for (const auto& f : y.forms) worst = std::max(worst, std::abs(evaluate_form(f, u, y.degree)));
  return worst;
}

}  // namespace

LiftResult lift_projection(const CMatrix& theta, const CMatrix& gamma, const CVector& c1, const CVector& c2,
                           const CVector& probe, const ImplicitVariety& y, double tol) {
  const int m = static_cast<int>(theta.cols());
  if (theta.rows() != m - 1 || gamma.rows() != m - 1 || gamma.cols() != m + 1 || c1.size() != m + 1 ||
      c2.size() != m + 1 || probe.size() != m + 1 || y.dim != m - 1)
    throw DimensionError("lift_projection: inconsistent shapes");
  if (numeric_rank(theta) != m - 1 || numeric_rank(gamma) != m - 1)
    throw DegenerateError("lift_projection: Theta and Gamma must have full rank");

  // Unknown vec(P), column-major; rows {Θ P = Γ} then {P c1 = 0}.
  const int unknowns = m * (m + 1);
  CMatrix a = CMatrix::Zero((m - 1) * (m + 1) + m, unknowns);
  CVector rhs = CVector::Zero(a.rows());
  for (int b = 0; b < m + 1; ++b)
    for (int i = 0; i < m - 1; ++i) {
      for (int r = 0; r < m; ++r) a(b * (m - 1) + i, r + m * b) = theta(i, r);
      rhs(b * (m - 1) + i) = gamma(i, b);
    }
  for (int r = 0; r < m; ++r)
    for (int b = 0; b < m + 1; ++b) a((m - 1) * (m + 1) + r, r + m * b) = c1(b);
  const CVector x = a.completeOrthogonalDecomposition().solve(rhs);
  LiftResult out{ProjectionOperator(CMatrix::Identity(m, m + 1)), 0.0, 0.0, 0.0};
  out.system_residual = (a * x - rhs).norm() / rhs.norm();
  if (out.system_residual > 1e-1) throw NumericalError("lift_projection: inconsistent linear system");
  const CMatrix p0 = Eigen::Map<const CMatrix>(x.data(), m, m + 1);

  const CMatrix ker = null_space(theta);
  if (ker.cols() != 1) throw DegenerateError("lift_projection: Theta kernel is not a point");
  const CVector n = ker.col(0);
  const Complex gauge = c2.dot(c1) / c1.squaredNorm();
  const CVector u = c2.conjugate() - gauge * c1.conjugate();

  const CVector base = p0 * probe;
  const CVector dir = n * (u.transpose() * probe)(0);
  Complex best_lambda = 0.0;
  double best = form_residual(y, base);
  if (dir.norm() > 1e-12 * base.norm()) {
    // Restrict each form to the line base + λ dir and collect candidate roots.
    const int d = y.degree;
    const double rho = base.norm() / dir.norm();
    CMatrix vander(d + 1, d + 1);
    std::vector<Complex> nodes(d + 1);
    for (int j = 0; j <= d; ++j) {
      nodes[j] = rho * std::polar(1.0, 2.0 * M_PI * j / (d + 1));
      for (int e = 0; e <= d; ++e) vander(j, e) = std::pow(nodes[j], e);
    }
    const auto lu = vander.fullPivLu();
    best = std::numeric_limits<double>::infinity();
    for (const auto& f : y.forms) {
      CVector vals(d + 1);
      for (int j = 0; j <= d; ++j) vals(j) = evaluate_form(f, base + nodes[j] * dir, d);
      const CVector poly = lu.solve(vals);  // poly(e) multiplies λ^e
      if (poly.cwiseAbs().maxCoeff() <= 1e-12 * vals.cwiseAbs().maxCoeff()) continue;
      CVector binary(d + 1);
      for (int i = 0; i <= d; ++i) binary(i) = poly(d - i);
      for (const auto& root : binary_form_roots(binary)) {
        if (std::abs(root.t1) < 1e-12) continue;
        const Complex lambda = root.t0 / root.t1;
        const double res = form_residual(y, base + lambda * dir);
        if (res < best - 1e-15 || (std::abs(res - best) <= 1e-15 && std::abs(lambda) < std::abs(best_lambda))) {
          best = res;
          best_lambda = lambda;
        }
      }
    }
  }
  out.lambda = best_lambda;
  out.probe_residual = best;
  if (!(best <= tol)) throw DegenerateError("lift_projection: probe point is not on the cone");
  out.projection = ProjectionOperator(p0 + best_lambda * n * u.transpose());
  return out;
}

}  // namespace projrec
