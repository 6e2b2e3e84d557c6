#include <doctest.h>

#include "lufact/conditions.hpp"
#include "lufact/factor.hpp"
#include "lufact/oracle.hpp"
#include "support/random_matrix.hpp"

using namespace lufact;

namespace {

const FieldSpec Q = FieldSpec::rationals();
const FieldSpec F2 = FieldSpec::prime(2);
const FieldSpec F3 = FieldSpec::prime(3);

}  // namespace

TEST_CASE("enumeration domain") {
  CHECK(oracle::EnumerationDomain(F2, 3, 0).free_left() == 6);
  CHECK(oracle::EnumerationDomain(F2, 3, 0).free_right() == 6);
  CHECK(oracle::EnumerationDomain(F2, 3, 0).size() == 4096);
  CHECK(oracle::EnumerationDomain(F2, 3, 1).free_left() == 8);
  CHECK(oracle::EnumerationDomain(F3, 2, 1).size() == 6561);
  CHECK_THROWS_AS(oracle::EnumerationDomain(Q, 2, 0), UsageError);
  CHECK_THROWS_AS(oracle::EnumerationDomain(FieldSpec::prime(5), 2, 0), UsageError);
  CHECK_THROWS_AS(oracle::EnumerationDomain(F2, 4, 0), UsageError);
  CHECK_THROWS_AS(oracle::EnumerationDomain(F2, 0, 0), UsageError);
}

TEST_CASE("brute-force existence examples") {
  const Matrix cx = Matrix::from_ints(F2, {{0, 1}, {1, 0}});
  CHECK_FALSE(oracle::exists_lu_bruteforce(cx));
  CHECK(oracle::min_extra_diagonals_bruteforce(cx) == 1);
  const auto w = oracle::find_banded_witness(cx, 1);
  REQUIRE(w);
  CHECK(multiply(w->left, w->right) == cx);

  CHECK(oracle::exists_lu_bruteforce(Matrix(F2, 3, 3)));
  CHECK(oracle::min_extra_diagonals_bruteforce(Matrix(F3, 2, 2)) == 0);
  CHECK(oracle::exists_lu_bruteforce(Matrix::identity(F3, 3)));

  // 3x3 anti-diagonal: deficiency 1 at k = 1 and k = 2, so one extra diagonal suffices.
  const Matrix anti = Matrix::from_ints(F2, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  CHECK(oracle::min_extra_diagonals_bruteforce(anti) == 1);
  CHECK_FALSE(oracle::find_banded_witness(anti, 0).has_value());
}

TEST_CASE("witnesses are banded, reproduce A, and are deterministic") {
  for (std::size_t n = 1; n <= 3; ++n) {
    oracle::for_each_matrix(F2, n, [&](const Matrix& a) {
      for (std::size_t m = 0; m < n; ++m) {
        const auto w = oracle::find_banded_witness(a, m);
        if (!w) continue;
        CHECK(multiply(w->left, w->right) == a);
        CHECK(superdiagonal_extent(w->left) <= m);
        CHECK(subdiagonal_extent(w->right) <= m);
        const auto again = oracle::find_banded_witness(a, m);
        CHECK(again->left == w->left);
        CHECK(again->right == w->right);
      }
    });
  }
}

TEST_CASE("theory agrees with enumeration on every small matrix") {
  std::size_t checked = 0;
  const std::vector<std::pair<FieldSpec, std::size_t>> domains = {{F2, 1}, {F2, 2}, {F2, 3}, {F3, 1}, {F3, 2}};
  for (const auto& [field, n] : domains) {
    oracle::for_each_matrix(field, n, [&](const Matrix& a) {
      ++checked;
      CHECK(satisfies_lu_conditions(a) == oracle::exists_lu_bruteforce(a));
      if (field.modulus() == 2) CHECK(failure_degree(a) == oracle::min_extra_diagonals_bruteforce(a));
    });
  }
  CHECK(checked == 2 + 16 + 512 + 3 + 81);
}

TEST_CASE("frobenius bounds") {
  const Matrix x = Matrix::from_ints(Q, {{1, 0}, {0, 0}});
  const Matrix y = Matrix::from_ints(Q, {{0, 0}, {0, 1}});
  CHECK(oracle::frobenius_rank_bounds_check(x, y));
  CHECK(oracle::frobenius_rank_bounds_check(Matrix::identity(Q, 3), Matrix::identity(Q, 3)));
  CHECK_THROWS_AS(oracle::frobenius_rank_bounds_check(Matrix(Q, 2, 3), Matrix(Q, 2, 3)), UsageError);
  CHECK_THROWS_AS(oracle::frobenius_rank_bounds_check(Matrix(Q, 2, 2), Matrix(F3, 2, 2)), UsageError);

  testing::Rng rng(61);
  for (const FieldSpec field : {Q, FieldSpec::prime(5)}) {
    for (int t = 0; t < 100; ++t) {
      const std::size_t r = 1 + rng() % 6, k = 1 + rng() % 6, c = 1 + rng() % 6;
      CHECK(oracle::frobenius_rank_bounds_check(testing::random_matrix(rng, field, r, k, 0.5),
                                                testing::random_matrix(rng, field, k, c, 0.5)));
    }
  }
}

TEST_CASE("selftest sweeps pass") {
  for (const auto& sweep : oracle::run_selftest_sweeps()) {
    INFO(sweep.name);
    CHECK(sweep.checked > 0);
    CHECK(sweep.passed());
  }
}
