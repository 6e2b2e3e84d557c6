#pragma once

#include <cstddef>
#include <vector>

#include "lufact/matrix.hpp"

namespace lufact {

/// Ranks entering the LU existence test at one k (1-based).
struct RankRecord {
  std::size_t k;
  std::size_t rank_leading;    // rank A[{1..k}]
  std::size_t rank_row_block;  // rank A[{1..k},{1..n}]
  std::size_t rank_col_block;  // rank A[{1..n},{1..k}]
  // rank_row_block + rank_col_block - rank_leading - k; the test fails at k when positive.
  long deficiency;

  friend bool operator==(const RankRecord&, const RankRecord&) = default;
};

struct ConditionReport {
  std::size_t n = 0;
  std::vector<RankRecord> per_k;
  bool satisfies = true;
  /// max(0, max_k deficiency): the least m the matrix fails the conditions by.
  std::size_t failure_degree = 0;
};

/// Evaluates rank A[{1..k}] + k >= rank A[{1..k},{1..n}] + rank A[{1..n},{1..k}]
/// for every k = 1..n. Throws UsageError for non-square input.
ConditionReport condition_report(const Matrix& a);
bool satisfies_lu_conditions(const Matrix& a);
std::size_t failure_degree(const Matrix& a);

/// Prepends m zero rows and m zero columns: the result C has C[{m+1..n+m}] = A.
Matrix border(const Matrix& a, std::size_t m);

/// For invertible A: every leading principal submatrix is nonsingular.
/// Throws UsageError if A is singular or non-square.
bool invertible_shortcut(const Matrix& a);

}  // namespace lufact
