#pragma once

#include "projrec/epipolar.hpp"

namespace projrec {

class ImplicitVariety;

struct ProjectionPair {
  ProjectionOperator first;
  ProjectionOperator second;

  ProjectionPair(ProjectionOperator a, ProjectionOperator b);
  int m() const { return first.m(); }
};

// (M1 A⁻¹, M2 A⁻¹).
ProjectionPair pgl_act(const CMatrix& a, const ProjectionPair& pair);

struct CanonicalPair {
  ProjectionPair pair;  // ([I|0], [H|e2])
  CMatrix H;
  CVector e2;
};

CanonicalPair canonical_pair(const FundamentalMatrix& f);

struct Alignment {
  CMatrix A;  // pair = canonical pair acted on by A
  CMatrix B;  // A⁻¹
  CMatrix H;
  CVector e2;
  Complex lambda;
  CVector v;
  double eq1_residual = 0.0;  // |M̄2 - (H M̄1 + e2 vᵀ)| / |M̄2|
  double eq2_residual = 0.0;  // |m2 - (H m1 + λ e2)| / |m2|
};

Alignment align_pair(const ProjectionPair& pair);

bool pairs_equivalent(const ProjectionPair& a, const ProjectionPair& b, double tol = kDefaultTol);

struct LiftResult {
  ProjectionOperator projection;
  double system_residual = 0.0;  // least-squares residual of {Θ P = Γ, P c1 = 0}
  double probe_residual = 0.0;   // forms of Y at P·Q
  Complex lambda;                // coordinate on the remaining one-parameter family
};

// Solves Θ P = Γ for a projection P of P^m whose center is c1, where c1 and
// c2 span the kernel line of Γ. The remaining freedom P0 + λ n uᵀ (n spanning
// ker Θ, uᵀc1 = 0) is fixed by requiring P·Q to lie on Y.
LiftResult lift_projection(const CMatrix& theta, const CMatrix& gamma, const CVector& c1, const CVector& c2,
                           const CVector& probe, const ImplicitVariety& y, double tol = 1e-6);

}  // namespace projrec
