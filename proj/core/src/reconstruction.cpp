#include "projrec/reconstruction.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace projrec {

namespace {

CMatrix forms_matrix(const ImplicitVariety& v) {
  CMatrix f(v.forms.front().size(), static_cast<Eigen::Index>(v.forms.size()));
  for (std::size_t i = 0; i < v.forms.size(); ++i) f.col(static_cast<Eigen::Index>(i)) = v.forms[i];
  return f;
}

// Whether the line through a and b meets the variety cut out by v.
bool line_meets(const ImplicitVariety& v, const CVector& a, const CVector& b, Rng& rng) {
  const int d = v.degree;
  CVector mix = CVector::Zero(v.forms.front().size());
  for (const auto& f : v.forms) mix += rng.complex_normal() * f;
  CMatrix vander(d + 1, d + 1);
  CVector vals(d + 1);
  for (int j = 0; j <= d; ++j) {
    const Complex s = std::polar(1.0, 2.0 * M_PI * j / (d + 1));
    for (int e = 0; e <= d; ++e) vander(j, e) = std::pow(s, e);
    vals(j) = evaluate_form(mix, s * a + b, d);
  }
  const CVector poly = vander.fullPivLu().solve(vals);
  if (poly.cwiseAbs().maxCoeff() <= 1e-12) return true;
  CVector binary(d + 1);
  for (int i = 0; i <= d; ++i) binary(i) = poly(d - i);
  for (const auto& r : binary_form_roots(binary))
    if (v.residual(r.t0 * a + r.t1 * b) < 1e-8) return true;
  return false;
}

}  // namespace

SceneCones make_scene_cones(const ProjectionPair& pair, const ParametricVariety& x, std::uint64_t seed) {
  ParametricVariety y1 = project_variety(pair.first, x);
  ParametricVariety y2 = project_variety(pair.second, x);
  ImplicitVariety f1 = implicit_model(y1, seed + 1);
  ImplicitVariety f2 = implicit_model(y2, seed + 2);
  ImplicitVariety fx = implicit_model(x, seed + 3);
  return {pair, x, std::move(y1), std::move(y2), std::move(f1), std::move(f2), std::move(fx)};
}

bool cone_membership(const ProjectionOperator& p, const ImplicitVariety& y, const CVector& q, double tol) {
  return y.residual(apply(p, q)) < tol;
}

JoinSetup geometric_join_setup(const ProjectionPair& pair, int n, std::uint64_t seed, const SceneCones* cones) {
  const int m = pair.m();
  if (n < 1 || n > m - 2) throw DimensionError("geometric_join_setup: requires 1 <= n <= m-2");
  const EpipolePair ep = epipoles(pair.first, pair.second);
  const CVector o1 = center(pair.first), o2 = center(pair.second);
  Rng rng(seed);
  for (int attempt = 0; attempt < 16; ++attempt) {
    JoinSetup s;
    s.n = n;
    s.w = rng.matrix(m + 1, m - n - 2);
    CMatrix zr(m + 1, m - n);
    zr << s.w, o1, o2;
    s.z = column_space(zr);
    CMatrix z1r(m, m - n - 1), z2r(m, m - n - 1);
    z1r << pair.first.entries() * s.w, ep.e1;
    z2r << pair.second.entries() * s.w, ep.e2;
    s.z1 = column_space(z1r);
    s.z2 = column_space(z2r);
    if (s.z.cols() != m - n || s.z1.cols() != m - n - 1 || s.z2.cols() != m - n - 1) continue;
    s.chart = null_space(s.z.adjoint());
    if (cones) {
      bool generic = true;
      for (int i = 0; i < 8 && generic; ++i) {
        if (cones->y1.residual(s.z1 * rng.vector(m - n - 1)) < 1e-6) generic = false;
        if (cones->y2.residual(s.z2 * rng.vector(m - n - 1)) < 1e-6) generic = false;
      }
      if (generic && n == m - 2) generic = !line_meets(cones->x_implicit, o1, o2, rng);
      if (!generic) continue;
    }
    return s;
  }
  throw DegenerateError("geometric_join_setup: genericity violated after resampling");
}

Triangulation triangulate(const ProjectionPair& pair, const FundamentalMatrix& f, const CVector& y1, const CVector& y2,
                          double tol) {
  const int m = pair.m();
  if (f.k != m - 1 || y1.size() != m || y2.size() != m) throw DimensionError("triangulate: shape mismatch");
  if (y1.norm() < 1e-300 || y2.norm() < 1e-300) throw DegenerateError("triangulate: zero image point");
  Triangulation out;
  const CVector fy = f.entries * y1;
  if (fy.norm() <= 1e-10 * f.entries.norm() * y1.norm()) throw DegenerateError("triangulate: first point is the epipole");
  out.incidence = join(MultiVector::from_vector(y2), MultiVector(m, 2, fy)).norm() / (y2.norm() * fy.norm());
  if (out.incidence > tol) throw EpipolarViolation("triangulate: points are not in correspondence");

  const CVector u1 = y1.normalized(), u2 = y2.normalized();
  const CMatrix id = CMatrix::Identity(m, m);
  CMatrix a(2 * m, m + 1);
  a << (id - u1 * u1.adjoint()) * pair.first.entries(), (id - u2 * u2.adjoint()) * pair.second.entries();
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  if (s(m - 1) <= 1e-8 * s(0)) throw DegenerateError("triangulate: rays coincide with the baseline");
  out.point = canonical_scale(svd.matrixV().col(m));
  const CVector p1 = pair.first.entries() * out.point, p2 = pair.second.entries() * out.point;
  if (p1.norm() < 1e-10 || p2.norm() < 1e-10) throw DegenerateError("triangulate: point is a center of projection");
  out.reprojection = std::max(proj_distance(p1, y1), proj_distance(p2, y2));
  return out;
}

Triangulation triangulate(const ProjectionPair& pair, const CVector& y1, const CVector& y2, double tol) {
  return triangulate(pair, fundamental(pair.first, pair.second, pair.m() - 1), y1, y2, tol);
}

std::string to_string(Label l) {
  switch (l) {
    case Label::true_point:
      return "true";
    case Label::ghost:
      return "ghost";
    case Label::ambiguous:
      return "ambiguous";
  }
  return "unknown";
}

FiberRecord epipolar_fiber(const SceneCones& cones, const JoinSetup& setup, const CVector& t,
                           const LabelThresholds& thresholds) {
  const int m = cones.pair.m();
  const int d = cones.x_param.d;
  if (cones.x_param.n != 1 || setup.n != 1 || m != 3)
    throw DimensionError("epipolar_fiber: implemented for curves in P^3 (n = m-2 = 1)");
  if (t.size() != setup.n + 1) throw DimensionError("epipolar_fiber: pencil parameter length mismatch");

  const CVector u = setup.chart * t;
  const FundamentalMatrix f = fundamental(cones.pair.first, cones.pair.second, m - 1);
  std::vector<CVector> pts[2];
  const ProjectionOperator* ops[2] = {&cones.pair.first, &cones.pair.second};
  const CMatrix* zs[2] = {&setup.z1, &setup.z2};
  const ParametricVariety* ys[2] = {&cones.y1_param, &cones.y2_param};
  for (int i = 0; i < 2; ++i) {
    CMatrix plane(m, zs[i]->cols() + 1);
    plane << *zs[i], ops[i]->entries() * u;
    const CMatrix c = null_space(plane.transpose());
    if (c.cols() != 1) throw BranchFiber("epipolar_fiber: degenerate epipolar plane");
    const CVector form = (c.col(0).transpose() * ys[i]->coeffs).transpose();
    const auto roots = binary_form_roots(form, thresholds.collision_tol);
    if (static_cast<int>(roots.size()) != d) throw BranchFiber("epipolar_fiber: root collision");
    for (const auto& r : roots) {
      CVector s(2);
      s << r.t0, r.t1;
      pts[i].push_back(sample(*ys[i], s));
    }
  }

  FiberRecord rec;
  rec.t = t;
  for (const auto& y1 : pts[0]) {
    for (const auto& y2 : pts[1]) {
      Triangulation tr;
      try {
        tr = triangulate(cones.pair, f, y1, y2, kDefaultTol);
      } catch (const DegenerateError& e) {
        throw BranchFiber(std::string("epipolar_fiber: ") + e.what());
      }
      Candidate c{tr.point, Label::ambiguous, cones.x_implicit.residual(tr.point), tr.reprojection};
      if (c.x_residual < thresholds.true_tol) {
        c.label = Label::true_point;
        ++rec.n_true;
      } else if (c.x_residual > thresholds.ghost_tol) {
        c.label = Label::ghost;
        ++rec.n_ghost;
      } else {
        throw BranchFiber("epipolar_fiber: label in the dead band");
      }
      rec.candidates.push_back(std::move(c));
    }
  }
  return rec;
}

CensusSummary component_census(const SceneCones& cones, int num_fibers, std::uint64_t seed,
                               const LabelThresholds& thresholds) {
  const int d = cones.x_param.d;
  const int m = cones.pair.m();
  const JoinSetup setup = geometric_join_setup(cones.pair, cones.x_param.n, seed, &cones);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  CensusSummary out;
  out.degree = d;
  out.fibers = num_fibers;
  out.degree_two_caveat = d == 2;
  std::map<std::pair<int, int>, int> patterns;
  std::vector<CVector> truths;
  for (int i = 0; i < num_fibers; ++i) {
    const CVector t = rng.vector(setup.n + 1);
    try {
      const FiberRecord rec = epipolar_fiber(cones, setup, t, thresholds);
      ++out.clean;
      ++patterns[{rec.n_true, rec.n_ghost}];
      for (const auto& c : rec.candidates)
        if (c.label == Label::true_point) truths.push_back(c.point);
    } catch (const BranchFiber&) {
      ++out.discarded;
    }
  }
  if (2 * out.clean < num_fibers) throw NumericalError("component_census: fewer than half the fibers are clean");

  int best = -1;
  for (const auto& [key, count] : patterns)
    if (count > best) {
      best = count;
      out.modal_true = key.first;
      out.modal_ghost = key.second;
    }
  out.matching = patterns[{d, d * (d - 1)}];
  out.fraction = static_cast<double>(out.matching) / out.clean;
  out.modal_matches = out.modal_true == d && out.modal_ghost == d * (d - 1);
  out.true_points = static_cast<int>(truths.size());

  if (out.true_points >= 2 * binomial(m + d, d)) {
    CMatrix pts(m + 1, out.true_points);
    for (int i = 0; i < out.true_points; ++i) pts.col(i) = truths[i];
    const ImplicitVariety refit = implicit_fit(pts, d, m);
    out.refit_distance = subspace_distance(forms_matrix(refit), forms_matrix(cones.x_implicit));
  }
  return out;
}

}  // namespace projrec
