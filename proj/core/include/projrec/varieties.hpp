#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "projrec/exterior.hpp"
#include "projrec/polynomial.hpp"
#include "projrec/projection.hpp"

namespace projrec {

// Homogeneous degree-d map P^n → P^m; row i of coeffs holds component i in
// the graded-lex monomial basis of n+1 variables.
struct ParametricVariety {
  int n;
  int m;
  int d;
  CMatrix coeffs;

  ParametricVariety(int n, int m, int d, CMatrix coeffs);

  CVector evaluate(const CVector& t) const;
  // (m+1) × (n+1) matrix of partial derivatives.
  CMatrix jacobian(const CVector& t) const;
};

struct ImplicitVariety {
  int dim;
  int degree;
  std::vector<CVector> forms;  // unit-norm coefficient vectors

  // Largest |f(x̂)| over the forms at the unit-normalized point.
  double residual(const CVector& x) const;
};

struct Quadric {
  int dim;
  CMatrix Q;

  Quadric(int dim, CMatrix q);
};

// Unit-normalized V(t); throws DegenerateError at a base point.
CVector sample(const ParametricVariety& v, const CVector& t);

// Unit-normalized samples at seeded Gaussian parameters (columns).
CMatrix sample_points(const ParametricVariety& v, int count, Rng& rng);

ParametricVariety project_variety(const ProjectionOperator& p, const ParametricVariety& v);

ImplicitVariety implicit_fit(const CMatrix& samples, int degree, int dim, double rel_tol = kDefaultTol);

// Fit from 4·C(m+d, d) seeded samples of v at its own degree.
ImplicitVariety implicit_model(const ParametricVariety& v, std::uint64_t seed);

Quadric quadric_from_form(const CVector& coeffs, int dim);
CVector quadric_to_form(const Quadric& q);

// The quadric containing a parametrized quadric hypersurface (m = n+1, d = 2),
// read off exactly from the coefficient identity V(t)ᵀ Q V(t) ≡ 0.
Quadric hypersurface_quadric(const ParametricVariety& v);

// Adjugate.
Quadric dual_quadric(const Quadric& c);

MultiVector tangent_extensor(const ParametricVariety& v, const CVector& t);

struct ClassCount {
  int count = 0;  // with multiplicity
  std::vector<BinaryRoot> roots;
};

ClassCount class_count_quadric(const Quadric& c, const CVector& h0, const CVector& h1);

ClassCount degree_check(const ParametricVariety& v, const CVector& h);

// Scene catalog.
ParametricVariety rational_normal_curve(int d);
ParametricVariety veronese_conic();
ParametricVariety embed(const ParametricVariety& v, const CMatrix& a);  // a: (m'+1) × (m+1)
ParametricVariety random_conic(int m, Rng& rng);
ParametricVariety random_rational_curve(int m, int d, Rng& rng);
// Smooth (m-2)-dimensional quadric spanning a hyperplane of P^m (m ≥ 4).
ParametricVariety random_quadric(int m, Rng& rng);

}  // namespace projrec
