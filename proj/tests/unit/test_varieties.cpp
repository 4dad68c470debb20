#include <doctest.h>

#include <projrec/varieties.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace projrec;

namespace {

CVector vec(std::initializer_list<Complex> xs) {
  CVector v(xs.size());
  int i = 0;
  for (Complex x : xs) v(i++) = x;
  return v;
}

// The quadric surface x0 x3 = x1² + x2² in P^3, parametrized by
// (u0², u0 u1, u0 u2, u1² + u2²).
ParametricVariety quadric_surface() {
  CMatrix c = CMatrix::Zero(4, 6);  // monomials u0², u0u1, u0u2, u1², u1u2, u2²
  c(0, 0) = 1.0;
  c(1, 1) = 1.0;
  c(2, 2) = 1.0;
  c(3, 3) = 1.0;
  c(3, 5) = 1.0;
  return ParametricVariety(2, 3, 2, c);
}

CMatrix quadric_surface_matrix() {
  CMatrix q = CMatrix::Zero(4, 4);
  q(0, 3) = q(3, 0) = 0.5;
  q(1, 1) = q(2, 2) = -1.0;
  return q;
}

CMatrix random_symmetric(int n, Rng& rng) {
  const CMatrix a = rng.matrix(n, n);
  return a + a.transpose();
}

}  // namespace

TEST_CASE("sampling") {
  const CVector p = sample(rational_normal_curve(3), vec({1.0, 0.0}));
  CHECK((p - CVector::Unit(4, 0)).norm() < 1e-15);
  const CVector q = sample(veronese_conic(), vec({1.0, 1.0}));
  CHECK((q - CVector::Ones(3) / std::sqrt(3.0)).norm() < 1e-15);
  CHECK_THROWS_AS(sample(veronese_conic(), vec({0.0, 0.0})), DegenerateError);
  CHECK_THROWS_AS(sample(veronese_conic(), vec({1.0})), DimensionError);
}

TEST_CASE("implicit models vanish on every shipped scene model") {
  Rng rng(401);
  const std::vector<ParametricVariety> models = {
      veronese_conic(),      rational_normal_curve(3),   random_conic(3, rng), random_rational_curve(3, 3, rng),
      random_quadric(4, rng), random_rational_curve(4, 4, rng), quadric_surface()};
  for (const auto& v : models) {
    const ImplicitVariety y = implicit_model(v, 7);
    CHECK_FALSE(y.forms.empty());
    const CMatrix pts = sample_points(v, 50, rng);
    for (int i = 0; i < pts.cols(); ++i) CHECK(y.residual(pts.col(i)) < 1e-8);
    CHECK(y.residual(rng.vector(v.m + 1)) > 1e-3);
  }
}

TEST_CASE("implicit fit examples") {
  Rng rng(403);
  // Plane conic x0 x2 - x1² from 12 samples.
  const ImplicitVariety conic = implicit_fit(sample_points(veronese_conic(), 12, rng), 2, 2);
  REQUIRE(conic.forms.size() == 1);
  CMatrix truth = CMatrix::Zero(3, 3);
  truth(0, 2) = truth(2, 0) = 0.5;
  truth(1, 1) = -1.0;
  CHECK(proj_distance(flatten(quadric_from_form(conic.forms[0], 2).Q), flatten(truth)) < 1e-10);

  // A line in the plane, degree 1: one form, the line coordinates.
  const CVector a = rng.vector(3), b = rng.vector(3);
  CMatrix line(3, 6);
  for (int i = 0; i < 6; ++i) line.col(i) = a + rng.complex_normal() * b;
  const ImplicitVariety lin = implicit_fit(line, 1, 2);
  REQUIRE(lin.forms.size() == 1);
  CHECK(proj_distance(lin.forms[0], oracle::cross(a, b)) < 1e-10);

  // Twisted cubic: three independent quadrics.
  const ImplicitVariety tc = implicit_fit(sample_points(random_rational_curve(3, 3, rng), 40, rng), 2, 3);
  CHECK(tc.forms.size() == 3);

  CHECK_THROWS_AS(implicit_fit(sample_points(veronese_conic(), 5, rng), 2, 2), DimensionError);
  CHECK_THROWS_AS(implicit_fit(rng.matrix(3, 20), 2, 2), DegenerateError);
}

TEST_CASE("projection of varieties") {
  // [I|0] projects from (0,0,0,1), the image of t = 0 on the twisted cubic
  // (t³, t²s, ts², s³): every curve whose first three components share a
  // zero passes through it.
  const ProjectionOperator drop(fixture::identity_operator(3));
  CHECK_THROWS_AS(project_variety(drop, rational_normal_curve(3)), DegenerateError);
  // The conic (t², ts, s², t² + s²) avoids it and drops to the Veronese conic.
  CMatrix lifted = CMatrix::Zero(4, 3);
  lifted.topRows(3).setIdentity();
  lifted(3, 0) = lifted(3, 2) = 1.0;
  const ParametricVariety y = project_variety(drop, ParametricVariety(1, 3, 2, lifted));
  CHECK(y.m == 2);
  CHECK((y.coeffs - veronese_conic().coeffs).norm() == 0.0);

  Rng rng(405);
  for (int s = 0; s < 20; ++s) {
    const ParametricVariety curve = s % 2 == 0 ? random_conic(3, rng) : random_rational_curve(3, 3, rng);
    const ParametricVariety image = project_variety(fixture::random_operator(3, rng), curve);
    CHECK(degree_check(curve, rng.vector(4)).count == curve.d);
    CHECK(degree_check(image, rng.vector(3)).count == curve.d);
    const ImplicitVariety model = implicit_model(image, 11);
    if (curve.d == 2) {
      REQUIRE(model.forms.size() == 1);
      CHECK(numeric_rank(quadric_from_form(model.forms[0], 2).Q) == 3);
    } else {
      CHECK(model.forms.size() == 1);  // a plane cubic
    }
  }
}

TEST_CASE("dual quadrics") {
  CHECK((dual_quadric(Quadric(2, CMatrix::Identity(3, 3))).Q - CMatrix::Identity(3, 3)).norm() == 0.0);
  CMatrix d = CMatrix::Zero(3, 3);
  d.diagonal() << 1.0, 2.0, 3.0;
  CMatrix expected = CMatrix::Zero(3, 3);
  expected.diagonal() << 6.0, 3.0, 2.0;
  CHECK((dual_quadric(Quadric(2, d)).Q - expected).norm() < 1e-14);

  Rng rng(407);
  for (int n = 2; n <= 5; ++n) {
    const CMatrix q = random_symmetric(n + 1, rng);
    const CMatrix adj = dual_quadric(Quadric(n, q)).Q;
    CHECK((adj - oracle::adjugate(q)).norm() < 1e-10 * adj.norm());
    CHECK(proj_distance(flatten(adj), flatten(CMatrix(q.inverse()))) < 1e-10);
  }

  // Tangent line at a point of a smooth conic: h = C x satisfies hᵀ C* h = 0.
  for (int s = 0; s < 20; ++s) {
    const Quadric c(2, random_symmetric(3, rng));
    // A point on the conic: restrict to a random line and take a root.
    const CVector a = rng.vector(3), b = rng.vector(3);
    CVector form(3);
    form << (a.transpose() * c.Q * a)(0), 2.0 * (a.transpose() * c.Q * b)(0), (b.transpose() * c.Q * b)(0);
    const BinaryRoot r = binary_form_roots(form).front();
    const CVector x = (r.t0 * a + r.t1 * b).normalized();
    const CVector h = (c.Q * x).normalized();
    CHECK(std::abs((h.transpose() * dual_quadric(c).Q * h)(0)) < 1e-10 * dual_quadric(c).Q.norm());
  }
}

TEST_CASE("form and matrix round trip") {
  Rng rng(409);
  for (int n = 1; n <= 4; ++n) {
    const CVector f = rng.vector(monomial_count(n + 1, 2));
    CHECK((quadric_to_form(quadric_from_form(f, n)) - f).norm() < 1e-14);
    const CVector x = rng.vector(n + 1);
    const Quadric q = quadric_from_form(f, n);
    CHECK(std::abs((x.transpose() * q.Q * x)(0) - evaluate_form(f, x, 2)) < 1e-12);
  }
  CHECK_THROWS_AS(quadric_from_form(CVector::Ones(4), 2), DimensionError);
}

TEST_CASE("tangent extensors") {
  // Plane conic at (1,0): the tangent line through (1,0,0) and (0,1,0).
  const MultiVector t = tangent_extensor(veronese_conic(), vec({1.0, 0.0}));
  CHECK(proj_equal(t, MultiVector::basis_element(3, {0, 1})));

  Rng rng(411);
  // Quadric surface: tangent plane is the covector Q x.
  const ParametricVariety qs = quadric_surface();
  for (int s = 0; s < 20; ++s) {
    const CVector u = rng.vector(3);
    const CVector x = qs.evaluate(u);
    const MultiVector plane = tangent_extensor(qs, u);
    CHECK(plane.grade() == 3);
    CHECK(proj_distance(hodge_inverse(plane).coeffs(), quadric_surface_matrix() * x) < 1e-10);
  }

  // A line has constant Gauss value.
  const ParametricVariety line = embed(ParametricVariety(1, 1, 1, CMatrix::Identity(2, 2)), rng.matrix(4, 2));
  const MultiVector g0 = tangent_extensor(line, rng.vector(2));
  for (int s = 0; s < 5; ++s) CHECK(proj_equal(tangent_extensor(line, rng.vector(2)), g0));

  // The Hodge dual of the Gauss value of a plane conic is a tangent covector.
  for (int s = 0; s < 20; ++s) {
    const ParametricVariety conic = embed(veronese_conic(), rng.matrix(3, 3));
    const ImplicitVariety model = implicit_model(conic, 3);
    const Quadric c = quadric_from_form(model.forms[0], 2);
    const CVector h = hodge_inverse(tangent_extensor(conic, rng.vector(2))).coeffs();
    CHECK(std::abs((h.transpose() * dual_quadric(c).Q * h)(0)) / dual_quadric(c).Q.norm() < 1e-9);
  }

  // (t², s², 2s²) maps onto a line and ramifies at s = 0, where the Jacobian drops rank.
  CMatrix ram = CMatrix::Zero(3, 3);
  ram(0, 0) = 1.0;
  ram(1, 2) = 1.0;
  ram(2, 2) = 2.0;
  CHECK_THROWS_AS(tangent_extensor(ParametricVariety(1, 2, 2, ram), vec({1.0, 0.0})), DegenerateError);
}

TEST_CASE("class of smooth quadrics") {
  Rng rng(413);
  for (int n = 2; n <= 4; ++n)
    for (int s = 0; s < 10; ++s) {
      const Quadric c(n, random_symmetric(n + 1, rng));
      const ClassCount cc = class_count_quadric(c, rng.vector(n + 1), rng.vector(n + 1));
      CHECK(cc.count == 2);
      CHECK(cc.roots.size() == 2);
    }

  // Lines through a point of the conic form a pencil tangent to the dual conic.
  const Quadric c(2, random_symmetric(3, rng));
  const CVector a = rng.vector(3), b = rng.vector(3);
  CVector form(3);
  form << (a.transpose() * c.Q * a)(0), 2.0 * (a.transpose() * c.Q * b)(0), (b.transpose() * c.Q * b)(0);
  const BinaryRoot r = binary_form_roots(form).front();
  const CVector x = r.t0 * a + r.t1 * b;
  const ClassCount tangential = class_count_quadric(c, oracle::cross(x, rng.vector(3)), oracle::cross(x, rng.vector(3)));
  CHECK(tangential.count == 2);
  CHECK(tangential.roots.size() == 1);
  CHECK(tangential.roots[0].multiplicity == 2);

  CMatrix sing = CMatrix::Identity(3, 3);
  sing(2, 2) = 0.0;
  CHECK_THROWS_AS(class_count_quadric(Quadric(2, sing), rng.vector(3), rng.vector(3)), DegenerateError);
}

TEST_CASE("degree check") {
  Rng rng(415);
  CHECK(degree_check(rational_normal_curve(3), rng.vector(4)).count == 3);
  CHECK(degree_check(random_conic(3, rng), rng.vector(4)).count == 2);

  // A hyperplane through a sampled point recovers its parameter among the roots.
  const ParametricVariety tc = random_rational_curve(3, 3, rng);
  const CVector t = rng.vector(2);
  const CVector p = tc.evaluate(t);
  CMatrix others(4, 3);
  others << p, rng.vector(4), rng.vector(4);
  const CVector h = null_space(others.transpose()).col(0);
  const ClassCount dc = degree_check(tc, h);
  CHECK(dc.count == 3);
  BinaryRoot target{t(0) / t.norm(), t(1) / t.norm(), 1};
  double best = 1.0;
  for (const auto& r : dc.roots) best = std::min(best, chordal_distance(r, target));
  CHECK(best < 1e-10);

  // A hyperplane containing a plane conic.
  const ParametricVariety plane_conic = embed(veronese_conic(), CMatrix::Identity(4, 3));
  CHECK_THROWS_AS(degree_check(plane_conic, CVector::Unit(4, 3)), DegenerateError);
  CHECK_THROWS_AS(degree_check(quadric_surface(), rng.vector(4)), DimensionError);
}
