#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "projrec/recovery.hpp"
#include "projrec/varieties.hpp"

namespace projrec {

struct SceneCones {
  ProjectionPair pair;
  ParametricVariety x_param;
  ParametricVariety y1_param;
  ParametricVariety y2_param;
  ImplicitVariety y1;
  ImplicitVariety y2;
  ImplicitVariety x_implicit;  // ground truth, used for labeling only
};

SceneCones make_scene_cones(const ProjectionPair& pair, const ParametricVariety& x, std::uint64_t seed);

// Whether every form of y vanishes at P·Q within tol.
bool cone_membership(const ProjectionOperator& p, const ImplicitVariety& y, const CVector& q, double tol = kDefaultTol);

// Z = W + L and Z_i = W_i + e_i as orthonormal bases; the pencil of
// (m-n)-planes through Z is charted by t ↦ Z + chart·t.
struct JoinSetup {
  int n = 0;
  CMatrix w;      // (m+1) × (m-n-2); no columns when n = m-2
  CMatrix z;      // (m+1) × (m-n)
  CMatrix z1;     // m × (m-n-1)
  CMatrix z2;     // m × (m-n-1)
  CMatrix chart;  // (m+1) × (n+1)
};

// With cones given, also checks that Z misses X and Z_i misses Y_i
// (exactly for n = m-2, where Z is the baseline).
JoinSetup geometric_join_setup(const ProjectionPair& pair, int n, std::uint64_t seed, const SceneCones* cones = nullptr);

struct Triangulation {
  CVector point;
  double reprojection = 0.0;  // largest projective distance of M_i Q to y_i
  double incidence = 0.0;     // |y2 ∧ F y1| normalized
};

class EpipolarViolation : public DegenerateError {
 public:
  using DegenerateError::DegenerateError;
};

Triangulation triangulate(const ProjectionPair& pair, const FundamentalMatrix& f, const CVector& y1, const CVector& y2,
                          double tol = kDefaultTol);
Triangulation triangulate(const ProjectionPair& pair, const CVector& y1, const CVector& y2, double tol = kDefaultTol);

enum class Label { true_point, ghost, ambiguous };
std::string to_string(Label l);

struct Candidate {
  CVector point;
  Label label = Label::ambiguous;
  double x_residual = 0.0;
  double reprojection = 0.0;
};

struct FiberRecord {
  CVector t;
  std::vector<Candidate> candidates;
  int n_true = 0;
  int n_ghost = 0;
};

struct LabelThresholds {
  double true_tol = 1e-6;
  double ghost_tol = 1e-3;
  double collision_tol = 1e-6;
};

class BranchFiber : public DegenerateError {
 public:
  using DegenerateError::DegenerateError;
};

// Curves with n = m-2 only. Throws BranchFiber on root collisions,
// dead-band labels, or degenerate triangulations.
FiberRecord epipolar_fiber(const SceneCones& cones, const JoinSetup& setup, const CVector& t,
                           const LabelThresholds& thresholds = {});

struct CensusSummary {
  int degree = 0;
  int fibers = 0;
  int clean = 0;
  int discarded = 0;
  int matching = 0;  // clean fibers with counts (d, d(d-1))
  int modal_true = 0;
  int modal_ghost = 0;
  double fraction = 0.0;  // matching / clean
  bool modal_matches = false;
  bool degree_two_caveat = false;  // for d = 2 both components are conics and either could be X
  int true_points = 0;
  double refit_distance = 1.0;  // forms re-fitted from true candidates vs X_implicit
};

CensusSummary component_census(const SceneCones& cones, int num_fibers, std::uint64_t seed,
                               const LabelThresholds& thresholds = {});

}  // namespace projrec
