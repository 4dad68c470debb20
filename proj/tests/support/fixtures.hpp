#pragma once

#include <projrec/kruppa.hpp>
#include <projrec/recovery.hpp>

namespace fixture {

using namespace projrec;

inline ProjectionOperator random_operator(int m, Rng& rng) { return ProjectionOperator(rng.matrix(m, m + 1)); }

inline ProjectionPair random_pair(int m, Rng& rng) {
  return ProjectionPair(random_operator(m, rng), random_operator(m, rng));
}

// [I | 0] of size m × (m+1).
inline CMatrix identity_operator(int m) {
  CMatrix a = CMatrix::Zero(m, m + 1);
  a.leftCols(m).setIdentity();
  return a;
}

inline MultiVector random_extensor(int dim, int grade, Rng& rng) {
  return wedge_columns(rng.matrix(dim, grade));
}

inline MultiVector random_multivector(int dim, int grade, Rng& rng) {
  return MultiVector(dim, grade, rng.vector(GradeBasis(dim, grade).size()));
}

// A pair with `components` random quadrics of dimension m-2 (conics when m = 3)
// and the matching Kruppa system.
struct KruppaScene {
  ProjectionPair pair;
  std::vector<ParametricVariety> components;
  KruppaState truth;
  KruppaSystem system;
};

inline KruppaScene kruppa_scene(int m, int components, Rng& rng) {
  ProjectionPair pair = random_pair(m, rng);
  std::vector<ParametricVariety> xs;
  std::vector<std::pair<DualPolynomial, DualPolynomial>> duals;
  for (int i = 0; i < components; ++i) {
    xs.push_back(m == 3 ? random_conic(3, rng) : random_quadric(m, rng));
    duals.push_back(image_duals(pair, xs.back()));
  }
  KruppaState truth = kruppa_state(pair);
  KruppaSystem system = make_kruppa_system(m, std::move(duals), truth.e1, rng.next_seed());
  return {std::move(pair), std::move(xs), std::move(truth), std::move(system)};
}

}  // namespace fixture
