#include "projrec/kruppa.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace projrec {

DualPolynomial::DualPolynomial(int d, int deg, CVector c) : dim(d), degree(deg), coeffs(std::move(c)) {
  if (coeffs.size() != monomial_count(dim + 1, degree)) throw DimensionError("DualPolynomial: coefficient length mismatch");
  if (coeffs.norm() < 1e-300) throw DegenerateError("DualPolynomial: zero form");
}

Complex DualPolynomial::evaluate(const CVector& covector) const {
  if (covector.size() != dim + 1) throw DimensionError("DualPolynomial::evaluate: covector length mismatch");
  return evaluate_form(coeffs, covector, degree);
}

DualPolynomial dual_polynomial(const Quadric& c) {
  return DualPolynomial(c.dim, 2, quadric_to_form(dual_quadric(c)));
}

std::pair<DualPolynomial, DualPolynomial> image_duals(const ProjectionPair& pair, const ParametricVariety& x) {
  if (x.d != 2 || x.n != pair.m() - 2) throw DimensionError("image_duals: expects a quadric of dimension m-2");
  const Quadric c1 = hypersurface_quadric(project_variety(pair.first, x));
  const Quadric c2 = hypersurface_quadric(project_variety(pair.second, x));
  return {dual_polynomial(c1), dual_polynomial(c2)};
}

CVector hyperplane_covector(const MultiVector& h) {
  if (h.grade() != h.dim() - 1) throw DimensionError("hyperplane_covector: expected a step D-1 extensor");
  return hodge_inverse(h).coeffs();
}

MultiVector gamma_map(const CVector& e1, const MultiVector& w) {
  if (w.grade() != w.dim() - 2) throw DimensionError("gamma_map: expected a step m-2 extensor");
  return join(MultiVector::from_vector(e1), w);
}

MultiVector xi_map(const FundamentalMatrix& f, const MultiVector& w) {
  if (f.k != 2) throw DimensionError("xi_map: expects the order-2 matrix");
  return f.apply(w);
}

MultiVector slice_parametrization(const CMatrix& h, const CVector& x) {
  const int m = static_cast<int>(h.rows());
  if (h.cols() != m - 1 || x.size() != m - 1) throw DimensionError("slice_parametrization: shape mismatch");
  const RVector s = singular_values(h);
  if (s(m - 2) <= 1e-10 * s(0)) throw DegenerateError("slice_parametrization: dependent basis");
  if (x.norm() < 1e-300) throw DegenerateError("slice_parametrization: zero parameter");
  const CMatrix left = (h.adjoint() * h).fullPivLu().solve(h.adjoint());  // left * h = I
  return interior(left.transpose() * x, wedge_columns(h));
}

namespace {

CMatrix covector_matrix(int m) {
  const double sign = ((m - 1) & 1) ? -1.0 : 1.0;  // hodge_inverse on grade m-1
  return hodge_map(m, m - 1).entries * sign;
}

CMatrix slice_matrix(const CMatrix& h) {
  const int m = static_cast<int>(h.rows());
  CMatrix s(binomial(m, m - 2), m - 1);
  for (int i = 0; i < m - 1; ++i) s.col(i) = slice_parametrization(h, CVector::Unit(m - 1, i)).coeffs();
  return s;
}

struct Evaluator {
  const KruppaSystem& sys;
  CMatrix samples;    // slice_map * lattice
  CMatrix covectors;  // hyperplane extensor → covector

  explicit Evaluator(const KruppaSystem& s)
      : sys(s), samples(s.slice_map * s.lattice), covectors(covector_matrix(s.m)) {}

  KruppaCoefficients coefficients(const CMatrix& f, const CVector& e1, const DualPolynomial& p1,
                                  const DualPolynomial& p2) const {
    const int c = p1.degree;
    const CMatrix xi = covectors * (f * samples);
    const CMatrix ga = covectors * (left_wedge_map(MultiVector::from_vector(e1), sys.m - 2).entries * samples);
    CVector va(samples.cols()), vb(samples.cols());
    for (int j = 0; j < samples.cols(); ++j) {
      va(j) = p2.evaluate(xi.col(j));
      vb(j) = p1.evaluate(ga.col(j));
    }
    return {sys.interpolators.at(c) * va, sys.interpolators.at(c) * vb};
  }
};

CVector cross_products(const CVector& a, const CVector& b) {
  const Eigen::Index n = a.size();
  CVector out(n * (n - 1) / 2);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) out(k++) = a(i) * b(j) - a(j) * b(i);
  return out;
}

// Unknowns z = (e1, vec F, e2).
struct Layout {
  int m;
  int fr;
  int fc;
  int size() const { return 2 * m + fr * fc; }
};

Layout layout_for(int m) { return {m, m, static_cast<int>(binomial(m, m - 2))}; }

CVector pack(const KruppaState& s) {
  const Layout l = layout_for(s.f.m);
  CVector z(l.size());
  z << s.e1, flatten(s.f.entries), s.e2;
  return z;
}

KruppaState unpack(const CVector& z, const Layout& l) {
  const CVector e1 = z.head(l.m);
  const CMatrix f = Eigen::Map<const CMatrix>(z.data() + l.m, l.fr, l.fc);
  const CVector e2 = z.tail(l.m);
  return {e1, FundamentalMatrix(l.m, 2, f), e2};
}

CVector normalize_blocks(CVector z, const Layout& l) {
  const int nf = l.fr * l.fc;
  z.head(l.m).normalize();
  z.segment(l.m, nf).normalize();
  z.tail(l.m).normalize();
  return z;
}

CVector kruppa_rows(const CVector& z, const Layout& l, const Evaluator& ev, const std::vector<double>& weights) {
  const KruppaState s = unpack(z, l);
  std::vector<CVector> parts;
  Eigen::Index total = 0;
  for (std::size_t i = 0; i < ev.sys.duals.size(); ++i) {
    const auto& [p1, p2] = ev.sys.duals[i];
    const KruppaCoefficients k = ev.coefficients(s.f.entries, s.e1, p1, p2);
    parts.push_back(cross_products(k.a, k.b) * weights[i]);
    total += parts.back().size();
  }
  CVector out(total);
  Eigen::Index off = 0;
  for (const auto& p : parts) {
    out.segment(off, p.size()) = p;
    off += p.size();
  }
  return out;
}

CVector constraint_rows(const CVector& z, const Layout& l) {
  const KruppaState s = unpack(z, l);
  const CMatrix fe1 = s.f.entries * e1_wedge_matrix(s.e1, l.m).entries;
  const CMatrix e2f = e2_annihilator(s.e2, s.f).entries * s.f.entries;
  CVector out(fe1.size() + e2f.size());
  out << flatten(fe1), flatten(e2f);
  return out;
}

std::vector<double> component_weights(const CVector& z, const Layout& l, const Evaluator& ev) {
  const KruppaState s = unpack(z, l);
  std::vector<double> w;
  for (const auto& [p1, p2] : ev.sys.duals) {
    const KruppaCoefficients k = ev.coefficients(s.f.entries, s.e1, p1, p2);
    const double n = k.a.norm() * k.b.norm();
    if (n < 1e-300) throw DegenerateError("kruppa: zero coefficient vector");
    w.push_back(1.0 / n);
  }
  return w;
}

// Five-point stencil; exact up to rounding for polynomials of degree ≤ 4 in
// each coordinate, which covers classes up to 2 on both sides.
CMatrix jacobian(const std::function<CVector(const CVector&)>& fn, const CVector& z) {
  const double h = 1e-3;
  const CVector r0 = fn(z);
  CMatrix j(r0.size(), z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    CVector zp = z;
    auto at = [&](double t) {
      zp(i) = z(i) + t;
      return fn(zp);
    };
    j.col(i) = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
  }
  return j;
}

CMatrix gauge_rows(const CVector& z, const Layout& l) {
  const int nf = l.fr * l.fc;
  CMatrix g = CMatrix::Zero(3, z.size());
  g.block(0, 0, 1, l.m) = z.head(l.m).adjoint();
  g.block(1, l.m, 1, nf) = z.segment(l.m, nf).adjoint();
  g.block(2, l.m + nf, 1, l.m) = z.tail(l.m).adjoint();
  return g;
}

IsolationReport isolation_at(const CVector& z, const Layout& l, const Evaluator& ev) {
  const std::vector<double> w = component_weights(z, l, ev);
  const CMatrix jk = jacobian([&](const CVector& x) { return kruppa_rows(x, l, ev, w); }, z);
  const CMatrix jc = jacobian([&](const CVector& x) { return constraint_rows(x, l); }, z);
  const CMatrix g = gauge_rows(z, l);
  CMatrix stacked(jc.rows() + g.rows(), z.size());
  stacked << jc, g;
  const CMatrix t = null_space(stacked, 1e-8);
  IsolationReport r;
  r.tangent_dim = static_cast<int>(t.cols());
  if (t.cols() == 0) {
    r.isolated = true;
    return r;
  }
  const RVector s = singular_values(jk * t);
  r.largest_singular_value = s.size() ? s(0) : 0.0;
  r.smallest_singular_value = s.size() < t.cols() ? 0.0 : s(t.cols() - 1);
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > 1e-6 * r.largest_singular_value) ++r.restricted_rank;
  r.isolated = r.largest_singular_value > 0.0 && r.smallest_singular_value > 1e-6 * r.largest_singular_value;
  return r;
}

}  // namespace

KruppaSystem make_kruppa_system(int m, std::vector<std::pair<DualPolynomial, DualPolynomial>> duals,
                                const CVector& e1, std::uint64_t seed) {
  if (m < 3) throw DimensionError("make_kruppa_system: requires m >= 3");
  if (e1.size() != m) throw DimensionError("make_kruppa_system: epipole length mismatch");
  int max_degree = 0;
  for (const auto& [p1, p2] : duals) {
    if (p1.dim != m - 1 || p2.dim != m - 1) throw DimensionError("make_kruppa_system: dual dimension mismatch");
    if (p1.degree != p2.degree) throw DimensionError("make_kruppa_system: classes differ within a pair");
    max_degree = std::max(max_degree, p1.degree);
  }
  if (duals.empty()) throw DimensionError("make_kruppa_system: no components");

  Rng rng(seed);
  KruppaSystem sys{m, std::move(duals), CMatrix(), CMatrix(), CMatrix(), {}};
  for (int attempt = 0;; ++attempt) {
    if (attempt > 32) throw NumericalError("make_kruppa_system: could not draw a slice avoiding e1");
    const CMatrix h = rng.matrix(m, m - 1);
    const CMatrix q = column_space(h);
    const CVector u = e1.normalized();
    if (q.cols() == m - 1 && (u - q * (q.adjoint() * u)).norm() > 1e-6) {
      sys.slice_basis = h;
      break;
    }
  }
  sys.slice_map = slice_matrix(sys.slice_basis);

  const int count = 2 * monomial_count(m - 1, max_degree) + 2;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 32) throw NumericalError("make_kruppa_system: interpolation lattice is ill-conditioned");
    sys.lattice = halton_points(m - 1, count, rng.next_seed());
    bool ok = true;
    sys.interpolators.assign(max_degree + 1, CMatrix());
    for (int c = 1; c <= max_degree && ok; ++c) {
      const CMatrix design = monomial_design(sys.lattice, c);
      const RVector s = singular_values(design);
      if (s(s.size() - 1) <= 1e-10 * s(0)) {
        ok = false;
        break;
      }
      sys.interpolators[c] = design.completeOrthogonalDecomposition().pseudoInverse();
    }
    if (ok) break;
  }
  return sys;
}

KruppaCoefficients kruppa_coefficients(const FundamentalMatrix& f, const CVector& e1, const DualPolynomial& phi1,
                                       const DualPolynomial& phi2, const KruppaSystem& system) {
  if (f.m != system.m || f.k != 2 || e1.size() != system.m) throw DimensionError("kruppa_coefficients: shape mismatch");
  if (phi1.degree != phi2.degree) throw DimensionError("kruppa_coefficients: classes differ");
  if (phi1.degree >= static_cast<int>(system.interpolators.size()) || system.interpolators[phi1.degree].size() == 0)
    throw DimensionError("kruppa_coefficients: lattice does not support this class");
  return Evaluator(system).coefficients(f.entries, e1, phi1, phi2);
}

double proportionality_residual(const CVector& a, const CVector& b) {
  const double n = a.norm() * b.norm();
  if (n < 1e-300) throw DegenerateError("proportionality_residual: zero coefficient vector");
  return cross_products(a, b).norm() / n;
}

double kruppa_residual(const FundamentalMatrix& f, const CVector& e1, const KruppaSystem& system) {
  double total = 0.0;
  const Evaluator ev(system);
  for (const auto& [p1, p2] : system.duals) {
    const KruppaCoefficients k = ev.coefficients(f.entries, e1, p1, p2);
    total += proportionality_residual(k.a, k.b);
  }
  return total;
}

double classical_kruppa_residual(const CMatrix& f, const CVector& e2, const CMatrix& c1_dual, const CMatrix& c2_dual) {
  if (f.rows() != 3 || f.cols() != 3 || e2.size() != 3) throw DimensionError("classical_kruppa_residual: requires m = 3");
  CMatrix ex(3, 3);
  ex << 0.0, -e2(2), e2(1), e2(2), 0.0, -e2(0), -e2(1), e2(0), 0.0;
  const CMatrix x = ex * c2_dual * ex.transpose();
  const CMatrix y = f * c1_dual * f.transpose();
  if (x.norm() < 1e-300 || y.norm() < 1e-300) throw DegenerateError("classical_kruppa_residual: zero matrix");
  const CVector xv = flatten(x), yv = flatten(y);
  const Complex lambda = yv.dot(xv) / yv.squaredNorm();
  return (xv - lambda * yv).norm() / xv.norm();
}

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::converged:
      return "converged";
    case SolverStatus::max_iterations:
      return "max_iterations";
    case SolverStatus::diverged:
      return "diverged";
  }
  return "unknown";
}

KruppaState kruppa_state(const ProjectionPair& pair) {
  const EpipolePair ep = epipoles(pair.first, pair.second);
  return {ep.e1, fundamental(pair.first, pair.second, 2), ep.e2};
}

double constraint_residual(const KruppaState& s) {
  const Layout l = layout_for(s.f.m);
  return constraint_rows(normalize_blocks(pack(s), l), l).norm();
}

SolveResult kruppa_solve(const KruppaState& initial, const KruppaSystem& system, const SolverOptions& options) {
  if (initial.f.m != system.m || initial.f.k != 2) throw DimensionError("kruppa_solve: expects the order-2 matrix");
  const Layout l = layout_for(system.m);
  const Evaluator ev(system);
  CVector z = normalize_blocks(pack(initial), l);

  auto stacked = [&](const CVector& x, const std::vector<double>& w) {
    const CVector a = kruppa_rows(x, l, ev, w);
    const CVector b = constraint_rows(x, l);
    CVector r(a.size() + b.size());
    r << a, b;
    return r;
  };

  SolveRecord rec;
  std::vector<double> w = component_weights(z, l, ev);
  CVector r = stacked(z, w);
  rec.residuals.push_back(r.norm());
  double mu = options.damping;
  int rejected = 0;
  bool done = r.norm() < options.tolerance;
  if (done) rec.status = SolverStatus::converged;

  for (int it = 1; it <= options.max_iterations && !done; ++it) {
    w = component_weights(z, l, ev);
    r = stacked(z, w);
    const CMatrix j = jacobian([&](const CVector& x) { return stacked(x, w); }, z);
    const CMatrix g = gauge_rows(z, l);
    const CMatrix n = j.adjoint() * j + g.adjoint() * g;
    const CVector grad = -(j.adjoint() * r);
    const RVector diag = n.diagonal().real();
    const double floor = 1e-12 * diag.maxCoeff();

    bool accepted = false;
    while (!accepted) {
      CMatrix damped = n;
      for (Eigen::Index i = 0; i < damped.rows(); ++i) damped(i, i) += mu * (diag(i) + floor);
      const CVector step = damped.ldlt().solve(grad);
      const CVector candidate = normalize_blocks(z + step, l);
      const CVector rc = stacked(candidate, w);
      if (rc.norm() < r.norm()) {
        z = candidate;
        r = rc;
        mu = std::max(mu / 3.0, 1e-15);
        rejected = 0;
        accepted = true;
      } else {
        mu *= 4.0;
        if (++rejected >= options.patience) break;
      }
    }
    rec.iterations = it;
    rec.residuals.push_back(r.norm());
    if (r.norm() < options.tolerance) {
      rec.status = SolverStatus::converged;
      done = true;
    } else if (!accepted) {
      rec.status = SolverStatus::diverged;
      done = true;
    }
  }

  SolveResult out{unpack(z, l), {}};
  rec.final_residual = rec.residuals.back();
  const RankProfile rp = rank_profile(out.solution.f, 1e-6);
  const CMatrix ker = null_space(out.solution.f.entries, 1e-6);
  rec.valid = rp.observed == system.m - 1 &&
              subspace_distance(ker, e1_wedge_matrix(out.solution.e1, system.m).entries) < 1e-6;
  rec.isolation = isolation_at(z, l, ev);
  out.record = rec;
  return out;
}

DimensionReport dimension_report(int m, int c_total) {
  if (m < 3 || c_total < 1) throw DimensionError("dimension_report: requires m >= 3 and c >= 1");
  DimensionReport r;
  r.m = m;
  r.c_total = c_total;
  r.n = space_dimension(m, 2);
  r.coefficient_count = binomial(m - 2 + c_total, c_total);
  r.lower_bound = r.n - r.coefficient_count + 1;
  r.class_threshold = static_cast<long long>(m + 2) * (m + 1) / 2;
  r.threshold_met = c_total >= r.class_threshold;
  return r;
}

IsolationReport isolation_test(const KruppaState& truth, const KruppaSystem& system) {
  if (truth.f.m != system.m || truth.f.k != 2) throw DimensionError("isolation_test: expects the order-2 matrix");
  const Layout l = layout_for(system.m);
  const CVector z = normalize_blocks(pack(truth), l);
  const KruppaState s = unpack(z, l);
  if (kruppa_residual(s.f, s.e1, system) > 1e-8 || constraint_rows(z, l).norm() > 1e-8)
    throw DegenerateError("isolation_test: ground truth is inconsistent");
  return isolation_at(z, l, Evaluator(system));
}

}  // namespace projrec
