#include "lufact/conditions.hpp"

#include <algorithm>

namespace lufact {

namespace {

void require_square(const Matrix& a, const char* op) {
  if (!a.is_square()) {
    throw UsageError(std::string(op) + ": matrix must be square, got " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()));
  }
}

}  // namespace

ConditionReport condition_report(const Matrix& a) {
  require_square(a, "condition_report");
  const std::size_t n = a.rows();
  ConditionReport report;
  report.n = n;
  report.per_k.reserve(n);
  long worst = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    RankRecord rec{};
    rec.k = k;
    rec.rank_leading = rank(leading(a, k));
    rec.rank_row_block = rank(submatrix(a, {1, k}, {1, n}));
    rec.rank_col_block = rank(submatrix(a, {1, n}, {1, k}));
    rec.deficiency = static_cast<long>(rec.rank_row_block + rec.rank_col_block) -
                     static_cast<long>(rec.rank_leading + k);
    worst = std::max(worst, rec.deficiency);
    report.per_k.push_back(rec);
  }
  report.failure_degree = static_cast<std::size_t>(worst);
  report.satisfies = report.failure_degree == 0;
  return report;
}

bool satisfies_lu_conditions(const Matrix& a) { return condition_report(a).satisfies; }

std::size_t failure_degree(const Matrix& a) { return condition_report(a).failure_degree; }

Matrix border(const Matrix& a, std::size_t m) {
  require_square(a, "border");
  if (m == 0) return a;
  const std::size_t n = a.rows();
  return a.visit([&](const auto& ops, const auto& d) {
    using Elem = typename std::decay_t<decltype(d)>::value_type;
    detail::Dense<Elem> out(n + m, n + m, ops.zero());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out(m + i, m + j) = d(i, j);
    }
    return Matrix::adopt(a.field(), std::move(out));
  });
}

bool invertible_shortcut(const Matrix& a) {
  require_square(a, "invertible_shortcut");
  const std::size_t n = a.rows();
  if (rank(a) != n) throw UsageError("invertible_shortcut: matrix is singular");
  for (std::size_t k = 1; k <= n; ++k) {
    if (rank(leading(a, k)) != k) return false;
  }
  return true;
}

}  // namespace lufact
