#include "projrec/exterior.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <utility>

namespace projrec {

namespace detail {

struct BasisTable {
  std::vector<std::uint32_t> masks;
  std::vector<int> index;  // indexed by mask, -1 when the popcount differs
};

namespace {

void enumerate(int dim, int grade, int start, std::uint32_t acc, std::vector<std::uint32_t>& out) {
  if (grade == 0) {
    out.push_back(acc);
    return;
  }
  for (int i = start; i <= dim - grade; ++i)
    enumerate(dim, grade - 1, i + 1, acc | (1u << i), out);
}

std::shared_ptr<const BasisTable> table_for(int dim, int grade) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const BasisTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find({dim, grade});
  if (it != cache.end()) return it->second;
  auto t = std::make_shared<BasisTable>();
  enumerate(dim, grade, 0, 0u, t->masks);
  t->index.assign(std::size_t{1} << dim, -1);
  for (std::size_t i = 0; i < t->masks.size(); ++i) t->index[t->masks[i]] = static_cast<int>(i);
  cache.emplace(std::make_pair(dim, grade), t);
  return t;
}

}  // namespace
}  // namespace detail

namespace {

constexpr int kMaxDim = 16;

void require_same_dim(const MultiVector& a, const MultiVector& b, const char* what) {
  if (a.dim() != b.dim()) throw DimensionError(std::string(what) + ": dimension mismatch");
}

}  // namespace

GradeBasis::GradeBasis(int dim, int grade) : dim_(dim), grade_(grade) {
  if (dim < 0 || dim > kMaxDim) throw DimensionError("GradeBasis: unsupported dimension");
  if (grade < 0 || grade > dim) throw DimensionError("GradeBasis: grade out of range");
  table_ = detail::table_for(dim, grade);
}

int GradeBasis::size() const { return static_cast<int>(table_->masks.size()); }

std::uint32_t GradeBasis::mask(int index) const { return table_->masks.at(index); }

std::vector<int> GradeBasis::subset(int index) const {
  std::vector<int> s;
  const std::uint32_t m = mask(index);
  for (int i = 0; i < dim_; ++i)
    if (m & (1u << i)) s.push_back(i);
  return s;
}

int GradeBasis::index_of(std::uint32_t mask) const {
  if (mask >= table_->index.size()) return -1;
  return table_->index[mask];
}

int GradeBasis::index_of(const std::vector<int>& subset) const {
  std::uint32_t m = 0;
  for (int i : subset) {
    if (i < 0 || i >= dim_ || (m & (1u << i))) return -1;
    m |= 1u << i;
  }
  if (static_cast<int>(subset.size()) != grade_) return -1;
  return index_of(m);
}

int concat_sign(std::uint32_t s, std::uint32_t t) {
  if (s & t) return 0;
  int inversions = 0;
  while (t) {
    const int j = std::countr_zero(t);
    t &= t - 1;
    inversions += std::popcount(s >> (j + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

MultiVector::MultiVector(int dim, int grade)
    : dim_(dim), grade_(grade), coeffs_(CVector::Zero(GradeBasis(dim, grade).size())) {}

MultiVector::MultiVector(int dim, int grade, CVector coeffs)
    : dim_(dim), grade_(grade), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != GradeBasis(dim, grade).size())
    throw DimensionError("MultiVector: coefficient length does not match C(dim, grade)");
}

MultiVector MultiVector::from_vector(const CVector& v) {
  return MultiVector(static_cast<int>(v.size()), 1, v);
}

MultiVector MultiVector::scalar(int dim, Complex value) {
  CVector c(1);
  c(0) = value;
  return MultiVector(dim, 0, c);
}

MultiVector MultiVector::basis_element(int dim, const std::vector<int>& subset) {
  const int grade = static_cast<int>(subset.size());
  MultiVector out(dim, grade);
  std::uint32_t m = 0;
  for (int i : subset) {
    if (i < 0 || i >= dim || (m & (1u << i))) throw DimensionError("basis_element: invalid subset");
    m |= 1u << i;
  }
  // Sign of sorting the given order.
  int inversions = 0;
  for (std::size_t i = 0; i < subset.size(); ++i)
    for (std::size_t j = i + 1; j < subset.size(); ++j)
      if (subset[i] > subset[j]) ++inversions;
  out.coeffs_(GradeBasis(dim, grade).index_of(m)) = (inversions & 1) ? -1.0 : 1.0;
  return out;
}

Complex MultiVector::coeff(const std::vector<int>& subset) const {
  const int idx = basis().index_of(subset);
  if (idx < 0) throw DimensionError("MultiVector::coeff: subset not in basis");
  return coeffs_(idx);
}

MultiVector MultiVector::operator+(const MultiVector& o) const {
  if (dim_ != o.dim_ || grade_ != o.grade_) throw DimensionError("MultiVector +: basis mismatch");
  return MultiVector(dim_, grade_, coeffs_ + o.coeffs_);
}

MultiVector MultiVector::operator-(const MultiVector& o) const {
  if (dim_ != o.dim_ || grade_ != o.grade_) throw DimensionError("MultiVector -: basis mismatch");
  return MultiVector(dim_, grade_, coeffs_ - o.coeffs_);
}

MultiVector MultiVector::operator*(Complex s) const { return MultiVector(dim_, grade_, coeffs_ * s); }

GradedLinearMap::GradedLinearMap(GradeBasis s, GradeBasis d, CMatrix e)
    : src(std::move(s)), dst(std::move(d)), entries(std::move(e)) {
  if (entries.rows() != dst.size() || entries.cols() != src.size())
    throw DimensionError("GradedLinearMap: shape does not match bases");
}

MultiVector GradedLinearMap::apply(const MultiVector& w) const {
  if (!(w.basis() == src)) throw DimensionError("GradedLinearMap::apply: source basis mismatch");
  return MultiVector(dst.dim(), dst.grade(), entries * w.coeffs());
}

GradedLinearMap GradedLinearMap::compose(const GradedLinearMap& inner) const {
  if (!(inner.dst == src)) throw DimensionError("GradedLinearMap::compose: basis mismatch");
  return GradedLinearMap(inner.src, dst, entries * inner.entries);
}

MultiVector join(const MultiVector& a, const MultiVector& b) {
  require_same_dim(a, b, "join");
  const int dim = a.dim();
  const int grade = a.grade() + b.grade();
  if (grade > dim) throw DimensionError("join: grade overflow");
  const GradeBasis ba = a.basis(), bb = b.basis(), out = GradeBasis(dim, grade);
  CVector c = CVector::Zero(out.size());
  for (int i = 0; i < ba.size(); ++i) {
    const Complex ai = a.coeffs()(i);
    if (ai == 0.0) continue;
    const std::uint32_t s = ba.mask(i);
    for (int j = 0; j < bb.size(); ++j) {
      const std::uint32_t t = bb.mask(j);
      const int sign = concat_sign(s, t);
      if (sign == 0) continue;
      c(out.index_of(s | t)) += static_cast<double>(sign) * ai * b.coeffs()(j);
    }
  }
  return MultiVector(dim, grade, c);
}

MultiVector hodge(const MultiVector& a) {
  const int dim = a.dim();
  const GradeBasis src = a.basis(), dst(dim, dim - a.grade());
  const std::uint32_t all = (1u << dim) - 1u;
  CVector c = CVector::Zero(dst.size());
  for (int i = 0; i < src.size(); ++i) {
    const std::uint32_t s = src.mask(i);
    c(dst.index_of(all & ~s)) = static_cast<double>(concat_sign(s, all & ~s)) * a.coeffs()(i);
  }
  return MultiVector(dim, dim - a.grade(), c);
}

MultiVector hodge_inverse(const MultiVector& a) {
  const int g = a.grade();
  const double sign = ((g * (a.dim() - g)) & 1) ? -1.0 : 1.0;
  return hodge(a) * sign;
}

MultiVector meet(const MultiVector& a, const MultiVector& b) {
  require_same_dim(a, b, "meet");
  if (a.grade() + b.grade() < a.dim()) throw DimensionError("meet: grade underflow");
  return hodge(join(hodge_inverse(a), hodge_inverse(b)));
}

MultiVector interior(const CVector& x, const MultiVector& a) {
  if (x.size() != a.dim()) throw DimensionError("interior: covector length mismatch");
  if (a.grade() < 1) throw DimensionError("interior: grade must be at least 1");
  const GradeBasis src = a.basis(), dst(a.dim(), a.grade() - 1);
  CVector c = CVector::Zero(dst.size());
  for (int i = 0; i < src.size(); ++i) {
    const Complex ai = a.coeffs()(i);
    if (ai == 0.0) continue;
    std::uint32_t rest = src.mask(i);
    std::uint32_t s = rest;
    while (s) {
      const int j = std::countr_zero(s);
      s &= s - 1;
      const std::uint32_t bit = 1u << j;
      const std::uint32_t t = rest & ~bit;
      c(dst.index_of(t)) += static_cast<double>(concat_sign(bit, t)) * x(j) * ai;
    }
  }
  return MultiVector(a.dim(), a.grade() - 1, c);
}

MultiVector wedge_columns(const CMatrix& pts) {
  const int dim = static_cast<int>(pts.rows());
  MultiVector acc = MultiVector::scalar(dim, 1.0);
  for (int j = 0; j < pts.cols(); ++j) acc = join(acc, MultiVector::from_vector(pts.col(j)));
  return acc;
}

GradedLinearMap left_wedge_map(const MultiVector& a, int grade) {
  const int dim = a.dim();
  const GradeBasis src(dim, grade), dst(dim, grade + a.grade());
  CMatrix e(dst.size(), src.size());
  for (int j = 0; j < src.size(); ++j) {
    CVector unit = CVector::Zero(src.size());
    unit(j) = 1.0;
    e.col(j) = join(a, MultiVector(dim, grade, unit)).coeffs();
  }
  return GradedLinearMap(src, dst, e);
}

GradedLinearMap right_wedge_map(const MultiVector& a, int grade) {
  const int dim = a.dim();
  const GradeBasis src(dim, grade), dst(dim, grade + a.grade());
  CMatrix e(dst.size(), src.size());
  for (int j = 0; j < src.size(); ++j) {
    CVector unit = CVector::Zero(src.size());
    unit(j) = 1.0;
    e.col(j) = join(MultiVector(dim, grade, unit), a).coeffs();
  }
  return GradedLinearMap(src, dst, e);
}

GradedLinearMap hodge_map(int dim, int grade) {
  const GradeBasis src(dim, grade), dst(dim, dim - grade);
  CMatrix e = CMatrix::Zero(dst.size(), src.size());
  for (int j = 0; j < src.size(); ++j) {
    CVector unit = CVector::Zero(src.size());
    unit(j) = 1.0;
    e.col(j) = hodge(MultiVector(dim, grade, unit)).coeffs();
  }
  return GradedLinearMap(src, dst, e);
}

GradedLinearMap compound(const CMatrix& a, int r) {
  const int rows = static_cast<int>(a.rows());
  const int cols = static_cast<int>(a.cols());
  const GradeBasis src(cols, r), dst(rows, r);
  CMatrix e(dst.size(), src.size());
  for (int j = 0; j < src.size(); ++j) {
    const std::vector<int> s = src.subset(j);
    CMatrix pick(rows, r);
    for (int i = 0; i < r; ++i) pick.col(i) = a.col(s[i]);
    e.col(j) = wedge_columns(pick).coeffs();
  }
  return GradedLinearMap(src, dst, e);
}

namespace {

// Orthonormal basis of {v : v ∧ a = 0}.
CMatrix annihilator(const MultiVector& a, double tol) {
  if (a.grade() == a.dim()) return CMatrix::Identity(a.dim(), a.dim());
  return null_space(right_wedge_map(a, 1).entries, tol);
}

}  // namespace

bool is_decomposable(const MultiVector& a, double tol) {
  const int k = a.grade();
  if (k <= 1 || k == a.dim()) return true;
  if (a.norm() < 1e-300) return false;
  return annihilator(a, tol).cols() == k;
}

MultiVector span_to_extensor(const CMatrix& points, double tol) {
  const int k = static_cast<int>(points.cols());
  if (k > 0) {
    const RVector s = singular_values(points);
    if (s.size() < k || s(0) == 0.0 || s(k - 1) <= tol * s(0))
      throw DegenerateError("span_to_extensor: dependent points");
  }
  return wedge_columns(points);
}

CMatrix extensor_to_span(const MultiVector& a, double tol) {
  if (a.norm() < 1e-300) throw DegenerateError("extensor_to_span: zero multivector");
  if (a.grade() == 0) return CMatrix(a.dim(), 0);
  const CMatrix n = annihilator(a, tol);
  if (n.cols() != a.grade()) throw DegenerateError("extensor_to_span: not decomposable");
  return n;
}

MultiVector gen_join(const MultiVector& a, const MultiVector& b, double tol) {
  require_same_dim(a, b, "gen_join");
  const CMatrix sa = extensor_to_span(a, tol);
  const CMatrix sb = extensor_to_span(b, tol);
  CMatrix both(a.dim(), sa.cols() + sb.cols());
  both << sa, sb;
  return wedge_columns(column_space(both, tol));
}

MultiVector gen_meet(const MultiVector& a, const MultiVector& b, double tol) {
  require_same_dim(a, b, "gen_meet");
  const CMatrix sa = extensor_to_span(a, tol);
  const CMatrix sb = extensor_to_span(b, tol);
  if (sa.cols() == 0 || sb.cols() == 0) return MultiVector::scalar(a.dim(), 1.0);
  CMatrix stacked(a.dim(), sa.cols() + sb.cols());
  stacked << sa, -sb;
  const CMatrix coef = null_space(stacked, tol);
  if (coef.cols() == 0) return MultiVector::scalar(a.dim(), 1.0);
  const CMatrix inter = sa * coef.topRows(sa.cols());
  return wedge_columns(column_space(inter, tol));
}

double proj_distance(const MultiVector& a, const MultiVector& b) {
  if (!(a.basis() == b.basis())) throw DimensionError("proj_distance: basis mismatch");
  return proj_distance(a.coeffs(), b.coeffs());
}

bool proj_equal(const MultiVector& a, const MultiVector& b, double tol) {
  return proj_distance(a, b) < tol;
}

}  // namespace projrec
