#include "projrec/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include <Eigen/Eigenvalues>

namespace projrec {

namespace {

void enumerate(int nvars, int remaining, Exponent& cur, int pos, std::vector<Exponent>& out) {
  if (pos == nvars - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    enumerate(nvars, remaining - e, cur, pos + 1, out);
  }
}

std::vector<std::vector<Complex>> power_table(const CVector& x, int degree) {
  std::vector<std::vector<Complex>> p(x.size(), std::vector<Complex>(degree + 1, 1.0));
  for (int j = 0; j < x.size(); ++j)
    for (int e = 1; e <= degree; ++e) p[j][e] = p[j][e - 1] * x(j);
  return p;
}

}  // namespace

const std::vector<Exponent>& monomials(int nvars, int degree) {
  if (nvars < 1 || degree < 0) throw DimensionError("monomials: invalid shape");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<std::vector<Exponent>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{nvars, degree}];
  if (!slot) {
    slot = std::make_unique<std::vector<Exponent>>();
    Exponent cur(nvars, 0);
    enumerate(nvars, degree, cur, 0, *slot);
  }
  return *slot;
}

int monomial_count(int nvars, int degree) {
  return static_cast<int>(binomial(nvars - 1 + degree, degree));
}

CVector monomial_values(const CVector& x, int degree) {
  const auto& mons = monomials(static_cast<int>(x.size()), degree);
  const auto p = power_table(x, degree);
  CVector v(mons.size());
  for (std::size_t i = 0; i < mons.size(); ++i) {
    Complex acc = 1.0;
    for (std::size_t j = 0; j < mons[i].size(); ++j) acc *= p[j][mons[i][j]];
    v(i) = acc;
  }
  return v;
}

CVector multiply_forms(const CVector& a, int da, const CVector& b, int db, int nvars) {
  const auto& ma = monomials(nvars, da);
  const auto& mb = monomials(nvars, db);
  const auto& mc = monomials(nvars, da + db);
  if (a.size() != static_cast<Eigen::Index>(ma.size()) || b.size() != static_cast<Eigen::Index>(mb.size()))
    throw DimensionError("multiply_forms: coefficient length mismatch");
  std::map<Exponent, int> index;
  for (std::size_t i = 0; i < mc.size(); ++i) index[mc[i]] = static_cast<int>(i);
  CVector out = CVector::Zero(mc.size());
  Exponent e(nvars);
  for (std::size_t i = 0; i < ma.size(); ++i) {
    if (a(i) == 0.0) continue;
    for (std::size_t j = 0; j < mb.size(); ++j) {
      for (int v = 0; v < nvars; ++v) e[v] = ma[i][v] + mb[j][v];
      out(index.at(e)) += a(i) * b(j);
    }
  }
  return out;
}

CMatrix monomial_design(const CMatrix& points, int degree) {
  const int n = monomial_count(static_cast<int>(points.rows()), degree);
  CMatrix d(points.cols(), n);
  for (int i = 0; i < points.cols(); ++i) d.row(i) = monomial_values(points.col(i), degree).transpose();
  return d;
}

Complex evaluate_form(const CVector& coeffs, const CVector& x, int degree) {
  const CVector v = monomial_values(x, degree);
  if (v.size() != coeffs.size()) throw DimensionError("evaluate_form: coefficient length mismatch");
  return (coeffs.transpose() * v)(0);
}

CVector form_gradient(const CVector& coeffs, const CVector& x, int degree) {
  const auto& mons = monomials(static_cast<int>(x.size()), degree);
  if (static_cast<int>(mons.size()) != coeffs.size())
    throw DimensionError("form_gradient: coefficient length mismatch");
  const auto p = power_table(x, degree);
  CVector g = CVector::Zero(x.size());
  for (std::size_t i = 0; i < mons.size(); ++i) {
    if (coeffs(i) == 0.0) continue;
    for (int j = 0; j < x.size(); ++j) {
      if (mons[i][j] == 0) continue;
      Complex acc = coeffs(i) * static_cast<double>(mons[i][j]);
      for (int l = 0; l < x.size(); ++l) acc *= p[l][mons[i][l] - (l == j ? 1 : 0)];
      g(j) += acc;
    }
  }
  return g;
}

double chordal_distance(const BinaryRoot& a, const BinaryRoot& b) {
  return std::abs(a.t0 * b.t1 - a.t1 * b.t0);
}

std::vector<BinaryRoot> binary_form_roots(const CVector& coeffs, double cluster_tol) {
  const int d = static_cast<int>(coeffs.size()) - 1;
  if (d < 1) throw DimensionError("binary_form_roots: degree must be at least 1");
  const double scale = coeffs.cwiseAbs().maxCoeff();
  if (scale < 1e-300) throw DegenerateError("binary_form_roots: zero form");
  const CVector a = coeffs / scale;

  // Leading vanishing coefficients of t0 are roots at (1 : 0).
  int at_infinity = 0;
  while (at_infinity < d && std::abs(a(at_infinity)) < 1e-13) ++at_infinity;

  std::vector<BinaryRoot> raw;
  for (int i = 0; i < at_infinity; ++i) raw.push_back({1.0, 0.0, 1});

  const int deg = d - at_infinity;
  if (deg > 0) {
    // p(z) = sum_i a_i z^{d-i} with z = t0/t1; leading coefficient a_{at_infinity}.
    const Complex lead = a(at_infinity);
    CMatrix comp = CMatrix::Zero(deg, deg);
    for (int j = 0; j < deg; ++j) comp(0, j) = -a(at_infinity + 1 + j) / lead;
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
    const CVector z = es.eigenvalues();
    for (int r = 0; r < deg; ++r) {
      Complex root = z(r);
      // A few Newton steps on the dehomogenized polynomial.
      for (int it = 0; it < 3; ++it) {
        Complex p = 0.0, dp = 0.0;
        for (int i = at_infinity; i <= d; ++i) {
          dp = dp * root + p;
          p = p * root + a(i);
        }
        if (std::abs(dp) < 1e-300) break;
        const Complex step = p / dp;
        if (!std::isfinite(std::abs(step)) || std::abs(step) > 1e-6 * (1.0 + std::abs(root))) break;
        root -= step;
      }
      const double n = std::sqrt(std::norm(root) + 1.0);
      raw.push_back({root / n, 1.0 / n, 1});
    }
  }

  std::vector<BinaryRoot> out;
  for (const auto& r : raw) {
    bool merged = false;
    for (auto& o : out) {
      if (chordal_distance(o, r) < cluster_tol) {
        o.multiplicity += r.multiplicity;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back(r);
  }
  return out;
}

CVector interpolate_form(const CMatrix& points, const CVector& values, int degree) {
  const CMatrix design = monomial_design(points, degree);
  if (design.rows() < design.cols()) throw NumericalError("interpolate_form: too few points");
  return design.colPivHouseholderQr().solve(values);
}

CMatrix halton_points(int dim, int count, std::uint64_t seed) {
  static const int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  if (2 * dim > static_cast<int>(std::size(primes))) throw DimensionError("halton_points: dimension too large");
  Rng rng(seed);
  std::vector<double> shift(2 * dim);
  for (auto& s : shift) s = rng.uniform();
  CMatrix pts(dim, count);
  for (int i = 0; i < count; ++i) {
    for (int c = 0; c < 2 * dim; ++c) {
      const int base = primes[c];
      double f = 1.0, h = 0.0;
      for (int k = i + 1; k > 0; k /= base) {
        f /= base;
        h += f * (k % base);
      }
      double u = h + shift[c];
      u -= std::floor(u);
      const double coord = 2.0 * u - 1.0;
      if (c % 2 == 0)
        pts(c / 2, i).real(coord);
      else
        pts(c / 2, i).imag(coord);
    }
  }
  return pts;
}

}  // namespace projrec
