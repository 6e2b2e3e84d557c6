#include <doctest.h>

#include "lufact/conditions.hpp"
#include "lufact/decompositions.hpp"
#include "lufact/oracle.hpp"
#include "support/random_matrix.hpp"

using namespace lufact;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F5 = FieldSpec::prime(5);

const Matrix& as_matrix(const Factor& f) { return std::get<Matrix>(f); }

bool rank_equalities_hold(const Matrix& c) {
  const std::size_t n = c.rows();
  for (std::size_t k = 1; k <= n; ++k) {
    if (rank(leading(c, k)) != rank(submatrix(c, {1, n}, {1, k}))) return false;
  }
  return true;
}

bool entries_are_binary(const Matrix& m) {
  for (std::size_t i = 1; i <= m.rows(); ++i) {
    for (std::size_t j = 1; j <= m.cols(); ++j) {
      if (!m.at(i, j).is_zero() && !m.at(i, j).is_one()) return false;
    }
  }
  return true;
}

void check_all_decompositions(const Matrix& a) {
  const auto t = ulu_transform(a);
  CHECK(is_unit_upper_triangular(t.M));
  CHECK(entries_are_binary(t.M));
  CHECK(multiply(t.M, a) == t.C);
  CHECK(rank_equalities_hold(t.C));
  CHECK(condition_report(t.C).satisfies);

  const Permutation p0 = plu_permutation(a);
  const Matrix pc = p0.apply_rows(a);
  CHECK(rank_equalities_hold(pc));
  CHECK(condition_report(pc).satisfies);

  for (const auto& d : {ulu(a), lul(a), plu(a), lup(a)}) {
    CHECK(d.product(a.field()) == a);
    CHECK(d.shapes_match_kind());
  }
  CHECK(ulu(a).shapes[0].invertible);
  CHECK(lul(a).shapes[2].invertible);
  CHECK(plu(a).shapes[0].permutation);
  CHECK(lup(a).shapes[2].permutation);
}

}  // namespace

TEST_CASE("ulu_transform examples") {
  const auto t = ulu_transform(Matrix::from_ints(Q, {{0, 1}, {1, 0}}));
  CHECK(t.M == Matrix::from_ints(Q, {{1, 1}, {0, 1}}));
  CHECK(t.C == Matrix::from_ints(Q, {{1, 1}, {1, 0}}));

  const Matrix lower = Matrix::from_ints(Q, {{2, 0, 0}, {1, 3, 0}, {4, 5, 6}});
  CHECK(ulu_transform(lower).M == Matrix::identity(Q, 3));
  CHECK(ulu_transform(lower).C == lower);

  // A zero on the diagonal breaks the rank equality at k = 2: row 3 is added to row 2.
  const Matrix singular = Matrix::from_ints(Q, {{2, 0, 0}, {1, 0, 0}, {4, 5, 6}});
  const auto s = ulu_transform(singular);
  CHECK(s.M == Matrix::from_ints(Q, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}}));
  CHECK(s.C == Matrix::from_ints(Q, {{2, 0, 0}, {5, 5, 6}, {4, 5, 6}}));

  const auto z = ulu_transform(Matrix(F5, 3, 3));
  CHECK(z.M == Matrix::identity(F5, 3));
  CHECK(z.C.is_zero());
  CHECK_THROWS_AS(ulu_transform(Matrix(Q, 2, 3)), UsageError);
}

TEST_CASE("ulu and lul on the exchange matrix") {
  const Matrix cx = Matrix::from_ints(Q, {{0, 1}, {1, 0}});
  const auto d = ulu(cx);
  CHECK(d.kind == DecompositionKind::ULU);
  CHECK(as_matrix(d.factors[0]) == Matrix::from_ints(Q, {{1, -1}, {0, 1}}));
  CHECK(as_matrix(d.factors[1]) == Matrix::from_ints(Q, {{1, 0}, {1, -1}}));
  CHECK(as_matrix(d.factors[2]) == Matrix::from_ints(Q, {{1, 1}, {0, 1}}));
  CHECK(d.product(Q) == cx);

  // cx is symmetric, so lul is the transposed ulu with the factor order reversed.
  const auto e = lul(cx);
  CHECK(as_matrix(e.factors[0]) == transpose(as_matrix(d.factors[2])));
  CHECK(as_matrix(e.factors[1]) == transpose(as_matrix(d.factors[1])));
  CHECK(as_matrix(e.factors[2]) == transpose(as_matrix(d.factors[0])));
  CHECK(e.product(Q) == cx);
}

TEST_CASE("plu and lup on the exchange matrix") {
  const Matrix cx = Matrix::from_ints(Q, {{0, 1}, {1, 0}});
  CHECK(plu_permutation(cx) == Permutation::from_images({2, 1}));
  CHECK(plu_permutation(cx).apply_rows(cx) == Matrix::identity(Q, 2));

  const auto d = plu(cx);
  CHECK(std::get<Permutation>(d.factors[0]) == Permutation::from_images({2, 1}));
  CHECK(as_matrix(d.factors[1]) == Matrix::identity(Q, 2));
  CHECK(as_matrix(d.factors[2]) == Matrix::identity(Q, 2));
  CHECK(d.product(Q) == cx);

  const auto e = lup(cx);
  CHECK(std::get<Permutation>(e.factors[2]) == Permutation::from_images({2, 1}));
  CHECK(e.product(Q) == cx);
}

TEST_CASE("trivial inputs") {
  for (std::size_t n = 1; n <= 5; ++n) {
    const Matrix id = Matrix::identity(Q, n);
    CHECK(plu_permutation(id).is_identity());
    CHECK(std::get<Permutation>(plu(id).factors[0]).is_identity());
    CHECK(as_matrix(plu(id).factors[1]) == id);
    CHECK(as_matrix(plu(id).factors[2]) == id);
  }
  const Matrix upper = Matrix::from_ints(Q, {{1, 2, 3}, {0, 4, 5}, {0, 0, 6}});
  CHECK(std::get<Permutation>(lup(upper).factors[2]).is_identity());
  CHECK(ulu(upper).product(Q) == upper);
  const Matrix lower = transpose(upper);
  CHECK(lul(lower).product(Q) == lower);
  CHECK_THROWS_AS(plu(Matrix(Q, 3, 2)), UsageError);
  CHECK_THROWS_AS(lup(Matrix(Q, 3, 2)), UsageError);
}

TEST_CASE("unit_upper_inverse") {
  testing::Rng rng(51);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng() % 6;
    Matrix m = Matrix::identity(Q, n);
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) m.set(i, j, testing::random_scalar(rng, Q, 0.4));
    }
    const Matrix inv = unit_upper_inverse(m);
    CHECK(multiply(m, inv) == Matrix::identity(Q, n));
    CHECK(is_unit_upper_triangular(inv));
  }
  CHECK_THROWS_AS(unit_upper_inverse(Matrix::from_ints(Q, {{2, 0}, {0, 1}})), UsageError);
}

TEST_CASE("permutations") {
  const Permutation p = Permutation::from_images({3, 1, 2});
  CHECK(p.to_string() == "[3 1 2]");
  CHECK(Permutation::parse("[3 1 2]") == p);
  CHECK(p.then(p.inverse()).is_identity());
  CHECK(p.inverse().then(p).is_identity());
  const Matrix a = Matrix::from_ints(Q, {{1, 2}, {3, 4}, {5, 6}});
  CHECK(p.apply_rows(a) == multiply(p.to_matrix(Q), a));
  CHECK(p.apply_rows(a) == Matrix::from_ints(Q, {{5, 6}, {1, 2}, {3, 4}}));
  CHECK(p.inverse().apply_rows(p.apply_rows(a)) == a);
  CHECK(multiply(p.to_matrix(Q), p.inverse().to_matrix(Q)) == Matrix::identity(Q, 3));
  CHECK(p.then(p.inverse()).to_matrix(Q) == multiply(p.to_matrix(Q), p.inverse().to_matrix(Q)));
  CHECK(transpose(p.to_matrix(Q)) == p.inverse().to_matrix(Q));
  CHECK_THROWS_AS(Permutation::from_images({1, 1}), UsageError);
  CHECK_THROWS_AS(Permutation::from_images({0, 1}), UsageError);
  CHECK_THROWS(Permutation::parse("[1 2"));
  CHECK_THROWS(Permutation::parse("[2 2]"));
}

TEST_CASE("exhaustive over F2 up to order 3") {
  for (std::size_t n = 1; n <= 3; ++n) oracle::for_each_matrix(F2, n, check_all_decompositions);
}

TEST_CASE("random reconstruction over Q and F5") {
  testing::Rng rng(52);
  for (const FieldSpec field : {Q, F5}) {
    for (int t = 0; t < 150; ++t) {
      const std::size_t n = 1 + rng() % 8;
      check_all_decompositions(testing::planted_rank_matrix(rng, field, n, rng() % (n + 1)));
    }
  }
}
