#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "projrec/epipolar.hpp"
#include "projrec/recovery.hpp"
#include "projrec/varieties.hpp"

namespace projrec {

// Homogeneous form of degree c (the class) in the m dual coordinates of a
// projection space P^{m-1}; vanishes on tangent hyperplanes.
struct DualPolynomial {
  int dim;
  int degree;
  CVector coeffs;

  DualPolynomial(int dim, int degree, CVector coeffs);
  Complex evaluate(const CVector& covector) const;
};

// Dual form of a smooth quadric: the adjugate read as a form on covectors.
DualPolynomial dual_polynomial(const Quadric& c);

// Covector of a hyperplane given as a step-(D-1) extensor.
CVector hyperplane_covector(const MultiVector& h);

// Exact dual forms (φ1, φ2) of the two images of a variety whose projections
// are quadric hypersurfaces: conics in P^3, quadric surfaces in P^4, ...
std::pair<DualPolynomial, DualPolynomial> image_duals(const ProjectionPair& pair, const ParametricVariety& x);

struct KruppaSystem {
  int m;
  std::vector<std::pair<DualPolynomial, DualPolynomial>> duals;  // (φ1, φ2) per component
  CMatrix slice_basis;  // m × (m-1), spans the slice hyperplane H
  CMatrix lattice;      // (m-1) × L sample points on the dual of H
  CMatrix slice_map;    // x ↦ w(x), C(m, m-2) × (m-1)
  std::vector<CMatrix> interpolators;  // per degree: coefficients = interpolators[c] * values
};

// Draws the slice hyperplane (re-drawn while e1 lies within 1e-6 of it) and a
// well-conditioned lattice from the seed.
KruppaSystem make_kruppa_system(int m, std::vector<std::pair<DualPolynomial, DualPolynomial>> duals,
                                const CVector& e1, std::uint64_t seed);

MultiVector gamma_map(const CVector& e1, const MultiVector& w);
MultiVector xi_map(const FundamentalMatrix& f, const MultiVector& w);

// interior(x̃, h1 ∧ ... ∧ h_{m-1}) with x̃ᵀ h_i = x_i.
MultiVector slice_parametrization(const CMatrix& h, const CVector& x);

struct KruppaCoefficients {
  CVector a;  // of x ↦ φ2(F w(x))
  CVector b;  // of x ↦ φ1(e1 ∧ w(x))
};

KruppaCoefficients kruppa_coefficients(const FundamentalMatrix& f, const CVector& e1, const DualPolynomial& phi1,
                                       const DualPolynomial& phi2, const KruppaSystem& system);

// |a ∧ b| / (|a| |b|): pairwise cross products a_i b_j - a_j b_i.
double proportionality_residual(const CVector& a, const CVector& b);

double kruppa_residual(const FundamentalMatrix& f, const CVector& e1, const KruppaSystem& system);

double classical_kruppa_residual(const CMatrix& f, const CVector& e2, const CMatrix& c1_dual, const CMatrix& c2_dual);

struct KruppaState {
  CVector e1;
  FundamentalMatrix f;
  CVector e2;
};

// Ground truth (e1, F_2, e2) of a pair.
KruppaState kruppa_state(const ProjectionPair& pair);

struct SolverOptions {
  int max_iterations = 100;
  double damping = 1e-3;
  double tolerance = 1e-10;  // on the stacked residual norm
  int patience = 10;         // consecutive rejected steps before declaring divergence
};

enum class SolverStatus { converged, max_iterations, diverged };

std::string to_string(SolverStatus s);

struct IsolationReport {
  int tangent_dim = 0;        // dimension of the constraint tangent space
  int restricted_rank = 0;    // rank of the Kruppa Jacobian on that space
  double smallest_singular_value = 0.0;
  double largest_singular_value = 0.0;
  bool isolated = false;
};

struct SolveRecord {
  SolverStatus status = SolverStatus::max_iterations;
  int iterations = 0;
  std::vector<double> residuals;  // stacked residual norm per iteration, starting point first
  double final_residual = 0.0;
  bool valid = false;  // rank(F) = m-1 and ker F = im [e1]
  IsolationReport isolation;
};

struct SolveResult {
  KruppaState solution;
  SolveRecord record;
};

SolveResult kruppa_solve(const KruppaState& initial, const KruppaSystem& system, const SolverOptions& options = {});

struct DimensionReport {
  int m = 0;
  int c_total = 0;
  long long n = 0;
  long long coefficient_count = 0;
  long long lower_bound = 0;
  long long class_threshold = 0;
  bool threshold_met = false;
};

DimensionReport dimension_report(int m, int c_total);

IsolationReport isolation_test(const KruppaState& truth, const KruppaSystem& system);

// Stacked constraint residual |F [e1]| + |e2 ∧ F| for unit-norm blocks.
double constraint_residual(const KruppaState& s);

}  // namespace projrec
