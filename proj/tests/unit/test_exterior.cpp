#include <doctest.h>

#include <projrec/exterior.hpp>

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace projrec;

namespace {

MultiVector e(int dim, std::vector<int> s) { return MultiVector::basis_element(dim, s); }

MultiVector vec(std::initializer_list<Complex> xs) {
  CVector v(xs.size());
  int i = 0;
  for (Complex x : xs) v(i++) = x;
  return MultiVector::from_vector(v);
}

}  // namespace

TEST_CASE("grade basis is a lexicographic bijection") {
  for (int dim = 0; dim <= 7; ++dim)
    for (int k = 0; k <= dim; ++k) {
      const GradeBasis b(dim, k);
      const auto expected = oracle::subsets(dim, k);
      REQUIRE(b.size() == static_cast<int>(expected.size()));
      for (int i = 0; i < b.size(); ++i) {
        CHECK(b.subset(i) == expected[i]);
        CHECK(b.index_of(b.subset(i)) == i);
      }
    }
}

TEST_CASE("concat sign matches the permutation oracle") {
  for (std::uint32_t s = 0; s < 64; ++s)
    for (std::uint32_t t = 0; t < 64; ++t) {
      if (s & t) {
        CHECK(concat_sign(s, t) == 0);
        continue;
      }
      std::vector<int> seq;
      for (int i = 0; i < 6; ++i)
        if (s & (1u << i)) seq.push_back(i);
      for (int i = 0; i < 6; ++i)
        if (t & (1u << i)) seq.push_back(i);
      CHECK(concat_sign(s, t) == oracle::permutation_sign(seq));
    }
}

TEST_CASE("join on basis vectors and the bilinear example") {
  const MultiVector e12 = join(e(3, {0}), e(3, {1}));
  CHECK(e12.coeff({0, 1}) == Complex(1.0));
  CHECK(e12.norm() == doctest::Approx(1.0));

  const MultiVector a = vec({1, 1, 0, 0});
  const MultiVector b = vec({0, 0, 1, 2});
  const MultiVector ab = join(a, b);
  CHECK(ab.coeff({0, 2}) == Complex(1.0));
  CHECK(ab.coeff({0, 3}) == Complex(2.0));
  CHECK(ab.coeff({1, 2}) == Complex(1.0));
  CHECK(ab.coeff({1, 3}) == Complex(2.0));
  CHECK(ab.coeff({0, 1}) == Complex(0.0));
  CHECK(ab.coeff({2, 3}) == Complex(0.0));
}

TEST_CASE("join agrees with determinant minors and is graded anticommutative") {
  Rng rng(11);
  for (int dim = 2; dim <= 6; ++dim)
    for (int k = 1; k < dim; ++k)
      for (int l = 1; k + l <= dim; ++l) {
        const CMatrix va = rng.matrix(dim, k), vb = rng.matrix(dim, l);
        const MultiVector a = wedge_columns(va), b = wedge_columns(vb);
        CMatrix both(dim, k + l);
        both << va, vb;
        CHECK((join(a, b).coeffs() - oracle::wedge(both)).norm() < 1e-12);
        const double sign = ((k * l) % 2 == 0) ? 1.0 : -1.0;
        CHECK((join(a, b).coeffs() - sign * join(b, a).coeffs()).norm() < 1e-12);
      }
}

TEST_CASE("join of an extensor with itself vanishes") {
  Rng rng(3);
  for (int dim = 2; dim <= 6; ++dim)
    for (int k = 1; 2 * k <= dim; ++k) {
      const MultiVector a = fixture::random_extensor(dim, k, rng);
      CHECK(join(a, a).norm() < 1e-12);
    }
}

TEST_CASE("join errors") {
  CHECK_THROWS_AS(join(e(3, {0}), e(4, {0})), DimensionError);
  CHECK_THROWS_AS(join(e(3, {0, 1}), e(3, {1, 2})), DimensionError);
}

TEST_CASE("hodge star signs") {
  CHECK(hodge(e(3, {0, 1})).coeff({2}) == Complex(1.0));
  CHECK(hodge(e(3, {0, 2})).coeff({1}) == Complex(-1.0));
  CHECK(hodge(e(3, {1, 2})).coeff({0}) == Complex(1.0));

  Rng rng(5);
  for (int dim = 1; dim <= 6; ++dim)
    for (int k = 0; k <= dim; ++k) {
      const MultiVector a = fixture::random_multivector(dim, k, rng);
      CHECK((hodge(a).coeffs() - oracle::hodge(a.coeffs(), dim, k)).norm() < 1e-14);
      const double sign = ((k * (dim - k)) % 2 == 0) ? 1.0 : -1.0;
      CHECK((hodge(hodge(a)).coeffs() - sign * a.coeffs()).norm() < 1e-12 * a.norm());
      CHECK((hodge_inverse(hodge(a)).coeffs() - a.coeffs()).norm() < 1e-12 * a.norm());
    }
}

TEST_CASE("hyperplane covector convention: x ∧ *c = (cᵀx) e_all") {
  Rng rng(17);
  for (int dim = 2; dim <= 6; ++dim) {
    const CVector c = rng.vector(dim), x = rng.vector(dim);
    const MultiVector top = join(MultiVector::from_vector(x), hodge(MultiVector::from_vector(c)));
    CHECK(std::abs(top.coeffs()(0) - (c.transpose() * x)(0)) < 1e-12);
  }
}

TEST_CASE("meet examples") {
  const MultiVector l1 = join(e(3, {0}), e(3, {1}));
  const MultiVector l2 = join(e(3, {0}), e(3, {2}));
  CHECK(proj_equal(meet(l1, l2), e(3, {0})));
  CHECK(meet(l1, l1).norm() < 1e-14);

  const MultiVector p1 = wedge_columns(CMatrix::Identity(4, 4).leftCols(3));
  const MultiVector p2 = wedge_columns(CMatrix::Identity(4, 4).rightCols(3));
  CHECK(proj_equal(meet(p1, p2), e(4, {1, 2})));
  CHECK_THROWS_AS(meet(e(3, {0}), e(3, {1})), DimensionError);
}

TEST_CASE("meet in dimension 3 is the cross product of dual lines") {
  Rng rng(7);
  for (int i = 0; i < 50; ++i) {
    const CVector a = rng.vector(3), b = rng.vector(3);
    // Lines with covectors a, b meet at a × b.
    const MultiVector la = hodge(MultiVector::from_vector(a)), lb = hodge(MultiVector::from_vector(b));
    CHECK(proj_distance(meet(la, lb).coeffs(), oracle::cross(a, b)) < 1e-12);
  }
}

TEST_CASE("duality between join and meet") {
  Rng rng(19);
  for (int dim = 2; dim <= 6; ++dim)
    for (int k = 0; k <= dim; ++k)
      for (int l = 0; k + l <= dim; ++l)
        for (int s = 0; s < 10; ++s) {
          const MultiVector x = fixture::random_multivector(dim, k, rng);
          const MultiVector y = fixture::random_multivector(dim, l, rng);
          const MultiVector lhs = hodge(join(x, y));
          const MultiVector rhs = meet(hodge(x), hodge(y));
          CHECK((lhs.coeffs() - rhs.coeffs()).norm() < 1e-12 * (1.0 + lhs.norm()));
        }
}

TEST_CASE("meet of extensors matches the intersection oracle") {
  Rng rng(23);
  for (int dim = 3; dim <= 6; ++dim)
    for (int k = 1; k < dim; ++k)
      for (int l = dim - k + 1; l < dim; ++l) {
        const CMatrix a = rng.matrix(dim, k), b = rng.matrix(dim, l);
        const MultiVector m = meet(wedge_columns(a), wedge_columns(b));
        const CMatrix inter = oracle::intersection(a, b);
        REQUIRE(inter.cols() == k + l - dim);
        CHECK(proj_distance(m.coeffs(), oracle::wedge(inter)) < 1e-10);
      }
}

TEST_CASE("interior product") {
  CHECK(proj_equal(interior(CVector::Unit(3, 0), join(e(3, {0}), e(3, {1}))), e(3, {1})));
  CHECK((interior(CVector::Unit(3, 0), join(e(3, {0}), e(3, {1}))).coeffs() - e(3, {1}).coeffs()).norm() == 0.0);

  Rng rng(29);
  const CVector x = rng.vector(4), v = rng.vector(4);
  CHECK(std::abs(interior(x, MultiVector::from_vector(v)).coeffs()(0) - (x.transpose() * v)(0)) < 1e-14);

  for (int dim = 2; dim <= 6; ++dim)
    for (int k = 1; k <= dim; ++k) {
      const CVector cx = rng.vector(dim);
      const MultiVector a = fixture::random_multivector(dim, k, rng);
      const MultiVector b = fixture::random_multivector(dim, k - 1, rng);
      const Complex lhs = (join(MultiVector::from_vector(cx), b).coeffs().transpose() * a.coeffs())(0);
      const Complex rhs = (b.coeffs().transpose() * interior(cx, a).coeffs())(0);
      CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(lhs)));
      if (k >= 2) CHECK(interior(cx, interior(cx, a)).norm() < 1e-12 * (1.0 + a.norm()));
    }
  CHECK_THROWS_AS(interior(CVector::Unit(3, 0), e(4, {0})), DimensionError);
}

TEST_CASE("decomposability") {
  Rng rng(31);
  for (int dim = 2; dim <= 6; ++dim)
    for (int k = 1; k <= dim; ++k) CHECK(is_decomposable(fixture::random_extensor(dim, k, rng)));
  CHECK_FALSE(is_decomposable(join(e(4, {0}), e(4, {1})) + join(e(4, {2}), e(4, {3}))));
  CHECK_FALSE(is_decomposable(join(e(5, {0}), e(5, {1})) + join(e(5, {2}), e(5, {3}))));
  CHECK(is_decomposable(fixture::random_multivector(5, 1, rng)));
  CHECK(is_decomposable(fixture::random_multivector(5, 5, rng)));
  CHECK(is_decomposable(fixture::random_multivector(5, 4, rng)));
}

TEST_CASE("span and extensor round trip") {
  Rng rng(37);
  const CVector p = rng.vector(4);
  CHECK(proj_equal(span_to_extensor(p), MultiVector::from_vector(p)));
  CMatrix e12 = CMatrix::Identity(4, 2);
  CHECK((span_to_extensor(e12).coeffs() - e(4, {0, 1}).coeffs()).norm() == 0.0);

  for (int dim = 2; dim <= 6; ++dim)
    for (int k = 1; k <= dim; ++k) {
      const CMatrix pts = rng.matrix(dim, k);
      const MultiVector a = span_to_extensor(pts);
      const CMatrix span = extensor_to_span(a);
      CHECK(subspace_distance(span, pts) < 1e-10);
      CHECK(proj_equal(span_to_extensor(span), a, 1e-10));
    }
  CMatrix dependent(4, 2);
  dependent << p, 2.0 * p;
  CHECK_THROWS_AS(span_to_extensor(dependent), DegenerateError);
  CHECK_THROWS_AS(extensor_to_span(join(e(4, {0}), e(4, {1})) + join(e(4, {2}), e(4, {3}))), DegenerateError);
  CHECK_THROWS_AS(extensor_to_span(MultiVector(4, 2)), DegenerateError);
}

TEST_CASE("generalized join and meet") {
  Rng rng(41);
  for (int dim = 3; dim <= 6; ++dim)
    for (int k = 1; k < dim; ++k) {
      const MultiVector a = fixture::random_extensor(dim, k, rng);
      CHECK(proj_equal(gen_meet(a, a), a));
      CHECK(proj_equal(gen_join(a, a), a));
      for (int l = 1; l < dim; ++l) {
        const MultiVector b = fixture::random_extensor(dim, l, rng);
        if (k + l <= dim) CHECK(proj_distance(gen_join(a, b), join(a, b)) < 1e-10);
        if (k + l > dim) CHECK(proj_distance(gen_meet(a, b), meet(a, b)) < 1e-10);
      }
    }
  // Nested subspaces: the classical join vanishes, the generalized operators do not.
  const CMatrix big = rng.matrix(5, 3);
  const MultiVector inner = wedge_columns(big.leftCols(2)), outer = wedge_columns(big);
  CHECK(join(inner, wedge_columns(big.col(0))).norm() < 1e-12);
  CHECK(proj_equal(gen_meet(inner, outer), inner));
  CHECK(proj_equal(gen_join(inner, outer), outer));
  // Two lines meeting in a point of P^3 span a plane.
  const CMatrix pts = rng.matrix(4, 3);
  CMatrix l1(4, 2), l2(4, 2);
  l1 << pts.col(0), pts.col(1);
  l2 << pts.col(0), pts.col(2);
  CHECK(gen_join(wedge_columns(l1), wedge_columns(l2)).grade() == 3);
  CHECK(proj_distance(gen_meet(wedge_columns(l1), wedge_columns(l2)).coeffs(), pts.col(0)) < 1e-10);
}

TEST_CASE("projective equality") {
  Rng rng(43);
  const MultiVector a = fixture::random_extensor(5, 2, rng);
  CHECK(proj_equal(a, a * Complex(0.0, 3.0)));
  CHECK_FALSE(proj_equal(e(3, {0}), e(3, {1})));
  const MultiVector noise = fixture::random_multivector(5, 2, rng);
  CHECK(proj_equal(a, a + noise * (1e-12 / noise.norm()) * a.norm(), 1e-8));
  CHECK_THROWS_AS(proj_equal(a, MultiVector(5, 2)), DegenerateError);
  CHECK_THROWS_AS(proj_equal(a, MultiVector(5, 3)), DimensionError);
}

TEST_CASE("compound matrices are multiplicative") {
  Rng rng(47);
  const CMatrix a = rng.matrix(4, 5), b = rng.matrix(5, 3);
  for (int r = 0; r <= 3; ++r) {
    const CMatrix lhs = compound(a * b, r).entries;
    const CMatrix rhs = compound(a, r).entries * compound(b, r).entries;
    CHECK((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
  }
}
