#pragma once

#include <cstdint>
#include <optional>

#include "projrec/projection.hpp"

namespace projrec {

// F_k: step-(m-k) extensors of the first image to step-(m-k+1) extensors of
// the second image, C(m, m-k+1) × C(m, m-k).
struct FundamentalMatrix {
  int m;
  int k;
  CMatrix entries;

  FundamentalMatrix(int m, int k, CMatrix entries);

  GradeBasis src() const { return GradeBasis(m, m - k); }
  GradeBasis dst() const { return GradeBasis(m, m - k + 1); }
  MultiVector apply(const MultiVector& w) const;
};

struct EpipolePair {
  CVector e1;  // image of the second center in the first view
  CVector e2;  // image of the first center in the second view
};

EpipolePair epipoles(const ProjectionOperator& p1, const ProjectionOperator& p2);

FundamentalMatrix fundamental(const ProjectionOperator& p1, const ProjectionOperator& p2, int k);

// Closed form [e2]_∧ M̄2 M̄1⁻¹ of order m-1; falls back to the composed form
// when a leading block is singular.
FundamentalMatrix reduced_fundamental(const ProjectionOperator& p1, const ProjectionOperator& p2);

// m = 3 only: the 3×3 matrix sending a point of the first image to the
// covector of its epipolar line.
CMatrix classical_fundamental(const FundamentalMatrix& f);

struct CorrespondenceResidual {
  double distance = 0.0;         // projective distance of F·w1 and e2 ∧ w2
  double incidence = 0.0;        // |w2 ∧ F w1| normalized; order m-1 only
  bool epipolar = false;         // F·w1 vanished: w1 lies in the epipolar pencil
};

CorrespondenceResidual correspondence_residual(const FundamentalMatrix& f, const MultiVector& w1,
                                               const MultiVector& w2, const CVector& e2);

// Order conversion F_k → F_l through random decompositions of the source
// extensors; retries a degenerate draw at most 8 times.
FundamentalMatrix convert(const FundamentalMatrix& f, int l, std::uint64_t seed = 1);

struct RankProfile {
  int observed = 0;
  int expected = 0;
  RVector singular_values;
};

RankProfile rank_profile(const FundamentalMatrix& f, double rel_tol = kDefaultTol);

// Matrix of w ↦ e1 ∧ w from step m-3 to step m-2 over C^m.
GradedLinearMap e1_wedge_matrix(const CVector& e1, int m);

// Matrix of v ↦ e2 ∧ v on the image grade of F; annihilates F for a
// consistent pair.
GradedLinearMap e2_annihilator(const CVector& e2, const FundamentalMatrix& f);

long long space_dimension(int m, int k);

}  // namespace projrec
