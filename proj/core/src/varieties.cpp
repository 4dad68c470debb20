#include "projrec/varieties.hpp"

#include <algorithm>
#include <cmath>

namespace projrec {

namespace {

int monomial_index(int nvars, const Exponent& e) {
  int degree = 0;
  for (int x : e) degree += x;
  const auto& mons = monomials(nvars, degree);
  const auto it = std::find(mons.begin(), mons.end(), e);
  if (it == mons.end()) throw DimensionError("monomial_index: exponent not found");
  return static_cast<int>(it - mons.begin());
}

CMatrix adjugate(const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 1) return CMatrix::Ones(1, 1);
  CMatrix adj(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      CMatrix minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      adj(i, j) = sign * minor.fullPivLu().determinant();
    }
  return adj;
}

}  // namespace

ParametricVariety::ParametricVariety(int n_, int m_, int d_, CMatrix c) : n(n_), m(m_), d(d_), coeffs(std::move(c)) {
  if (n < 1 || m < n || d < 1) throw DimensionError("ParametricVariety: invalid dimensions");
  if (coeffs.rows() != m + 1 || coeffs.cols() != monomial_count(n + 1, d))
    throw DimensionError("ParametricVariety: coefficient shape mismatch");
}

CVector ParametricVariety::evaluate(const CVector& t) const {
  if (t.size() != n + 1) throw DimensionError("ParametricVariety::evaluate: parameter length mismatch");
  return coeffs * monomial_values(t, d);
}

CMatrix ParametricVariety::jacobian(const CVector& t) const {
  if (t.size() != n + 1) throw DimensionError("ParametricVariety::jacobian: parameter length mismatch");
  CMatrix j(m + 1, n + 1);
  for (int i = 0; i <= m; ++i) j.row(i) = form_gradient(coeffs.row(i).transpose(), t, d).transpose();
  return j;
}

double ImplicitVariety::residual(const CVector& x) const {
  const CVector u = x.normalized();
  double worst = 0.0;
  for (const auto& f : forms) worst = std::max(worst, std::abs(evaluate_form(f, u, degree)));
  return worst;
}

Quadric::Quadric(int d, CMatrix q) : dim(d), Q(std::move(q)) {
  if (Q.rows() != dim + 1 || Q.cols() != dim + 1) throw DimensionError("Quadric: matrix size must be dim+1");
  Q = 0.5 * (Q + Q.transpose()).eval();
}

CVector sample(const ParametricVariety& v, const CVector& t) {
  const CVector x = v.evaluate(t);
  if (x.norm() <= 1e-10 * v.coeffs.norm() * std::pow(t.norm(), v.d))
    throw DegenerateError("sample: parameter is a base point");
  return x.normalized();
}

CMatrix sample_points(const ParametricVariety& v, int count, Rng& rng) {
  CMatrix pts(v.m + 1, count);
  for (int i = 0; i < count; ++i) {
    for (int attempt = 0;; ++attempt) {
      try {
        pts.col(i) = sample(v, rng.vector(v.n + 1));
        break;
      } catch (const DegenerateError&) {
        if (attempt > 16) throw;
      }
    }
  }
  return pts;
}

ImplicitVariety implicit_fit(const CMatrix& samples, int degree, int dim, double rel_tol) {
  if (samples.rows() != dim + 1) throw DimensionError("implicit_fit: samples have the wrong length");
  if (samples.cols() < 2 * binomial(dim + degree, degree)) throw DimensionError("implicit_fit: insufficient samples");
  CMatrix unit(samples.rows(), samples.cols());
  for (int i = 0; i < samples.cols(); ++i) unit.col(i) = samples.col(i).normalized();
  const CMatrix ker = null_space(monomial_design(unit, degree), rel_tol);
  if (ker.cols() == 0) throw DegenerateError("implicit_fit: no form of this degree vanishes on the samples");
  ImplicitVariety out{dim, degree, {}};
  for (int j = 0; j < ker.cols(); ++j) out.forms.push_back(ker.col(j));
  return out;
}

ImplicitVariety implicit_model(const ParametricVariety& v, std::uint64_t seed) {
  Rng rng(seed);
  const int count = static_cast<int>(4 * binomial(v.m + v.d, v.d));
  return implicit_fit(sample_points(v, count, rng), v.d, v.m);
}

ParametricVariety project_variety(const ProjectionOperator& p, const ParametricVariety& v) {
  if (p.m() != v.m) throw DimensionError("project_variety: ambient dimension mismatch");
  const ImplicitVariety model = implicit_model(v, 0x5eedULL);
  if (model.residual(center(p)) < 1e-8) throw DegenerateError("project_variety: center lies on the variety");
  return ParametricVariety(v.n, v.m - 1, v.d, p.entries() * v.coeffs);
}

Quadric quadric_from_form(const CVector& coeffs, int dim) {
  const auto& mons = monomials(dim + 1, 2);
  if (coeffs.size() != static_cast<Eigen::Index>(mons.size())) throw DimensionError("quadric_from_form: length mismatch");
  CMatrix q = CMatrix::Zero(dim + 1, dim + 1);
  for (std::size_t k = 0; k < mons.size(); ++k) {
    std::vector<int> idx;
    for (int i = 0; i <= dim; ++i)
      for (int e = 0; e < mons[k][i]; ++e) idx.push_back(i);
    if (idx[0] == idx[1]) {
      q(idx[0], idx[0]) = coeffs(k);
    } else {
      q(idx[0], idx[1]) = 0.5 * coeffs(k);
      q(idx[1], idx[0]) = 0.5 * coeffs(k);
    }
  }
  return Quadric(dim, q);
}

CVector quadric_to_form(const Quadric& q) {
  const auto& mons = monomials(q.dim + 1, 2);
  CVector c(mons.size());
  for (std::size_t k = 0; k < mons.size(); ++k) {
    std::vector<int> idx;
    for (int i = 0; i <= q.dim; ++i)
      for (int e = 0; e < mons[k][i]; ++e) idx.push_back(i);
    c(k) = idx[0] == idx[1] ? q.Q(idx[0], idx[0]) : 2.0 * q.Q(idx[0], idx[1]);
  }
  return c;
}

Quadric hypersurface_quadric(const ParametricVariety& v) {
  if (v.d != 2 || v.m != v.n + 1) throw DimensionError("hypersurface_quadric: expects a quadric hypersurface");
  const int size = v.m + 1;
  const int nvars = v.n + 1;
  // One unknown per upper-triangular entry of Q; off-diagonal ones appear twice.
  CMatrix system(monomial_count(nvars, 4), size * (size + 1) / 2);
  int col = 0;
  std::vector<std::pair<int, int>> entries;
  for (int i = 0; i < size; ++i)
    for (int j = i; j < size; ++j) {
      const CVector prod = multiply_forms(v.coeffs.row(i).transpose(), 2, v.coeffs.row(j).transpose(), 2, nvars);
      system.col(col++) = (i == j ? 1.0 : 2.0) * prod;
      entries.emplace_back(i, j);
    }
  const CMatrix ker = null_space(system, 1e-10);
  if (ker.cols() != 1) throw DegenerateError("hypersurface_quadric: image is not a unique quadric");
  CMatrix q(size, size);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    q(entries[k].first, entries[k].second) = ker(static_cast<Eigen::Index>(k), 0);
    q(entries[k].second, entries[k].first) = ker(static_cast<Eigen::Index>(k), 0);
  }
  return Quadric(v.m, q);
}

Quadric dual_quadric(const Quadric& c) { return Quadric(c.dim, adjugate(c.Q)); }

MultiVector tangent_extensor(const ParametricVariety& v, const CVector& t) {
  const CVector x = v.evaluate(t);
  const CMatrix j = v.jacobian(t);
  // Euler: J t = d x, so the partial along the dominant parameter is redundant.
  Eigen::Index skip = 0;
  t.cwiseAbs().maxCoeff(&skip);
  CMatrix span(v.m + 1, v.n + 1);
  span.col(0) = x;
  for (int i = 0, c = 1; i <= v.n; ++i)
    if (i != skip) span.col(c++) = j.col(i);
  const MultiVector w = wedge_columns(span);
  double scale = 1.0;
  for (int c = 0; c < span.cols(); ++c) scale *= span.col(c).norm();
  if (w.norm() <= 1e-10 * scale) throw DegenerateError("tangent_extensor: singular Jacobian");
  return w * (1.0 / w.norm());
}

ClassCount class_count_quadric(const Quadric& c, const CVector& h0, const CVector& h1) {
  if (h0.size() != c.dim + 1 || h1.size() != c.dim + 1) throw DimensionError("class_count_quadric: pencil length mismatch");
  const RVector s = singular_values(c.Q);
  if (s(0) == 0.0 || s(c.dim) <= 1e-10 * s(0)) throw DegenerateError("class_count_quadric: quadric is singular");
  const CMatrix dual = adjugate(c.Q);
  CVector form(3);
  form << (h0.transpose() * dual * h0)(0), 2.0 * (h0.transpose() * dual * h1)(0), (h1.transpose() * dual * h1)(0);
  if (form.cwiseAbs().maxCoeff() <= 1e-12 * dual.norm() * h0.norm() * h1.norm())
    throw DegenerateError("class_count_quadric: degenerate pencil");
  ClassCount out;
  out.roots = binary_form_roots(form);
  for (const auto& r : out.roots) out.count += r.multiplicity;
  return out;
}

ClassCount degree_check(const ParametricVariety& v, const CVector& h) {
  if (v.n != 1) throw DimensionError("degree_check: requires a curve");
  if (h.size() != v.m + 1) throw DimensionError("degree_check: hyperplane length mismatch");
  const CVector form = (h.transpose() * v.coeffs).transpose();
  if (form.cwiseAbs().maxCoeff() <= 1e-12 * v.coeffs.norm() * h.norm())
    throw DegenerateError("degree_check: hyperplane contains the curve");
  ClassCount out;
  out.roots = binary_form_roots(form);
  for (const auto& r : out.roots) out.count += r.multiplicity;
  return out;
}

ParametricVariety rational_normal_curve(int d) {
  return ParametricVariety(1, d, d, CMatrix::Identity(d + 1, d + 1));
}

ParametricVariety veronese_conic() { return rational_normal_curve(2); }

ParametricVariety embed(const ParametricVariety& v, const CMatrix& a) {
  if (a.cols() != v.m + 1) throw DimensionError("embed: matrix width mismatch");
  return ParametricVariety(v.n, static_cast<int>(a.rows()) - 1, v.d, a * v.coeffs);
}

ParametricVariety random_conic(int m, Rng& rng) {
  if (m < 2) throw DimensionError("random_conic: requires m >= 2");
  return embed(veronese_conic(), rng.matrix(m + 1, 3));
}

ParametricVariety random_rational_curve(int m, int d, Rng& rng) {
  if (m < d) throw DimensionError("random_rational_curve: requires m >= d");
  return embed(rational_normal_curve(d), rng.matrix(m + 1, d + 1));
}

ParametricVariety random_quadric(int m, Rng& rng) {
  if (m < 4) throw DimensionError("random_quadric: requires m >= 4 (codimension at least 2)");
  const int n = m - 2;
  // x0 = u0², x_i = u0 u_i, x_{n+1} = Σ u_i²: the smooth quadric x0 x_{n+1} = Σ x_i².
  CMatrix base = CMatrix::Zero(n + 2, monomial_count(n + 1, 2));
  Exponent e(n + 1, 0);
  e[0] = 2;
  base(0, monomial_index(n + 1, e)) = 1.0;
  for (int i = 1; i <= n; ++i) {
    Exponent f(n + 1, 0);
    f[0] = 1;
    f[i] = 1;
    base(i, monomial_index(n + 1, f)) = 1.0;
    Exponent g(n + 1, 0);
    g[i] = 2;
    base(n + 1, monomial_index(n + 1, g)) = 1.0;
  }
  return embed(ParametricVariety(n, n + 1, 2, base), rng.matrix(m + 1, n + 2));
}

}  // namespace projrec
