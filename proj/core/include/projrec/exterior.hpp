#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "projrec/linalg.hpp"

namespace projrec {

namespace detail {
struct BasisTable;
}

// Canonical basis of the k-th exterior power of C^D: sorted k-subsets of
// {0..D-1} in lexicographic order. Subsets are carried as bit masks.
class GradeBasis {
 public:
  GradeBasis(int dim, int grade);

  int dim() const { return dim_; }
  int grade() const { return grade_; }
  int size() const;

  std::uint32_t mask(int index) const;
  std::vector<int> subset(int index) const;
  int index_of(std::uint32_t mask) const;
  int index_of(const std::vector<int>& subset) const;

  bool operator==(const GradeBasis& o) const { return dim_ == o.dim_ && grade_ == o.grade_; }

 private:
  int dim_;
  int grade_;
  std::shared_ptr<const detail::BasisTable> table_;
};

// Sign of the permutation sorting the concatenation (S, T); 0 if S and T meet.
int concat_sign(std::uint32_t s, std::uint32_t t);

class MultiVector {
 public:
  MultiVector(int dim, int grade);
  MultiVector(int dim, int grade, CVector coeffs);

  static MultiVector from_vector(const CVector& v);
  static MultiVector scalar(int dim, Complex value);
  static MultiVector basis_element(int dim, const std::vector<int>& subset);

  int dim() const { return dim_; }
  int grade() const { return grade_; }
  GradeBasis basis() const { return GradeBasis(dim_, grade_); }
  const CVector& coeffs() const { return coeffs_; }
  Complex coeff(const std::vector<int>& subset) const;
  double norm() const { return coeffs_.norm(); }

  MultiVector operator+(const MultiVector& o) const;
  MultiVector operator-(const MultiVector& o) const;
  MultiVector operator*(Complex s) const;

 private:
  int dim_;
  int grade_;
  CVector coeffs_;
};

// Matrix acting on coefficient vectors between two graded bases.
struct GradedLinearMap {
  GradeBasis src;
  GradeBasis dst;
  CMatrix entries;

  GradedLinearMap(GradeBasis s, GradeBasis d, CMatrix e);
  MultiVector apply(const MultiVector& w) const;
  GradedLinearMap compose(const GradedLinearMap& inner) const;  // this ∘ inner
};

MultiVector join(const MultiVector& a, const MultiVector& b);
MultiVector meet(const MultiVector& a, const MultiVector& b);
MultiVector hodge(const MultiVector& a);
MultiVector hodge_inverse(const MultiVector& a);

// Contraction by a covector x: the adjoint of x ∧ (.) under the bilinear
// coefficient pairing.
MultiVector interior(const CVector& x, const MultiVector& a);

// Wedge of the columns of pts, in order. Zero columns give the scalar 1.
MultiVector wedge_columns(const CMatrix& pts);

// Matrices of x ↦ a ∧ x and x ↦ x ∧ a for x of the given grade.
GradedLinearMap left_wedge_map(const MultiVector& a, int grade);
GradedLinearMap right_wedge_map(const MultiVector& a, int grade);

// Matrix of the Hodge star on a grade.
GradedLinearMap hodge_map(int dim, int grade);

// r-th compound of a: the induced map on r-th exterior powers.
GradedLinearMap compound(const CMatrix& a, int r);

bool is_decomposable(const MultiVector& a, double tol = kDefaultTol);
MultiVector span_to_extensor(const CMatrix& points, double tol = kDefaultTol);
CMatrix extensor_to_span(const MultiVector& a, double tol = kDefaultTol);

MultiVector gen_join(const MultiVector& a, const MultiVector& b, double tol = kDefaultTol);
MultiVector gen_meet(const MultiVector& a, const MultiVector& b, double tol = kDefaultTol);

double proj_distance(const MultiVector& a, const MultiVector& b);
bool proj_equal(const MultiVector& a, const MultiVector& b, double tol = kDefaultTol);

}  // namespace projrec
