#pragma once

#include "projrec/exterior.hpp"

namespace projrec {

// Linear projection P^m ⇢ P^{m-1} from its center, given by a full-rank
// m × (m+1) matrix whose rows are the covectors Γ_i.
class ProjectionOperator {
 public:
  explicit ProjectionOperator(CMatrix entries);

  int m() const { return static_cast<int>(entries_.rows()); }
  const CMatrix& entries() const { return entries_; }

 private:
  CMatrix entries_;
};

// Unit kernel vector, largest entry real positive.
CVector center(const ProjectionOperator& p);

// Kernel of the conjugate transpose of the pseudo-inverse, read as a dual point.
CVector canonical_hyperplane(const ProjectionOperator& p);

// Moore-Penrose pseudo-inverse, (m+1) × m.
CMatrix lift_matrix(const ProjectionOperator& p);

// M·x; throws DegenerateError at the center.
CVector apply(const ProjectionOperator& p, const CVector& x);

// Points of P^{m-1} to the lines through the center (grade 1 over C^m to
// grade 2 over C^{m+1}).
GradedLinearMap hat_last(const ProjectionOperator& p);

// Step-(m-k) extensors over C^m to step-(m-k+1) extensors over C^{m+1}: the
// preimage cone of a subspace, joined with the center.
GradedLinearMap hat_k(const ProjectionOperator& p, int k);

// Step-(m-k+1) extensors over C^{m+1} to the same step over C^m: the image
// of a subspace; zero on subspaces through the center.
GradedLinearMap tilde_k(const ProjectionOperator& p, int k);

}  // namespace projrec
