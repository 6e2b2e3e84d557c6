#include "lufact/factor.hpp"

#include <utility>

namespace lufact {

namespace {

void require_square(const Matrix& a, const char* op) {
  if (!a.is_square()) {
    throw UsageError(std::string(op) + ": matrix must be square, got " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()));
  }
}

// 0-based positions in increasing priority; (i,j) precedes its mirror (j,i).
std::vector<std::pair<std::size_t, std::size_t>> scan_order(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> order;
  order.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      order.emplace_back(i, j);
      if (j != i) order.emplace_back(j, i);
    }
  }
  return order;
}

template <class Ops>
FactorPair run_priority_pivot(const FieldSpec& field, const Ops& ops,
                              const detail::Dense<typename Ops::Elem>& a) {
  using Elem = typename Ops::Elem;
  const std::size_t n = a.rows;
  detail::Dense<Elem> residual = a;
  detail::Dense<Elem> l(n, n, ops.zero());
  detail::Dense<Elem> u(n, n, ops.zero());
  const auto order = scan_order(n);
  std::vector<PivotStep> trace;
  trace.reserve(n);

  bool exhausted = false;
  for (std::size_t k = 0; k < n; ++k) {
    const std::pair<std::size_t, std::size_t>* found = nullptr;
    if (!exhausted) {
      for (const auto& pos : order) {
        if (!Ops::is_zero(residual(pos.first, pos.second))) {
          found = &pos;
          break;
        }
      }
    }
    if (found == nullptr) {
      // Zero residual: column k of L and row k of U stay zero.
      exhausted = true;
      trace.push_back({k + 1, std::nullopt, 0});
      continue;
    }

    const auto [pr, pc] = *found;
    for (std::size_t i = 0; i < n; ++i) l(i, k) = residual(i, pc);
    ops.scale(u.row(k), residual.row(pr), ops.inv(residual(pr, pc)));
    for (std::size_t i = 0; i < n; ++i) {
      if (Ops::is_zero(l(i, k))) continue;
      ops.axpy(residual.row(i), std::span<const Elem>(u.row(k)), ops.neg(l(i, k)));
    }
    trace.push_back({k + 1, Position{pr + 1, pc + 1}, priority(pr + 1, pc + 1, n)});
  }

  FactorPair out{Matrix::adopt(field, std::move(l)), Matrix::adopt(field, std::move(u)), 0, 0,
                 std::move(trace)};
  out.extra_lower = superdiagonal_extent(out.L);
  out.extra_upper = subdiagonal_extent(out.U);
  return out;
}

}  // namespace

std::size_t priority(std::size_t i, std::size_t j, std::size_t n) {
  if (i < 1 || j < 1 || i > n || j > n) {
    throw UsageError("priority: position (" + std::to_string(i) + "," + std::to_string(j) +
                     ") outside order " + std::to_string(n));
  }
  if (i > j) std::swap(i, j);
  return (i - 1) * n - (i - 1) * (i - 2) / 2 + (j - i + 1);
}

FactorPair priority_pivot_factor(const Matrix& a) {
  require_square(a, "priority_pivot_factor");
  return a.visit([&](const auto& ops, const auto& d) { return run_priority_pivot(a.field(), ops, d); });
}

Outcome<FactorPair> lu(const Matrix& a) {
  require_square(a, "lu");
  FactorPair pair = priority_pivot_factor(a);
  if (pair.extra_lower == 0 && pair.extra_upper == 0) return pair;
  return NoFactorization{condition_report(a), std::move(pair)};
}

Outcome<FactorPair> kw_factor(const Matrix& a, std::size_t m) {
  require_square(a, "kw_factor");
  FactorPair pair = priority_pivot_factor(a);

  if (m > 0) {
    const std::size_t n = a.rows();
    const FactorPair bordered = priority_pivot_factor(border(a, m));
    const Matrix k = submatrix(bordered.L, {m + 1, n + m}, {1, n});
    const Matrix w = submatrix(bordered.U, {1, n}, {m + 1, n + m});
    if (!(k == pair.L) || !(w == pair.U)) {
      throw InvariantViolation("kw_factor: direct and bordered factorizations disagree");
    }
  }

  if (pair.extra_lower <= m && pair.extra_upper <= m) return pair;
  return NoFactorization{condition_report(a), std::move(pair)};
}

Outcome<HVFactorization> hv_factor(const Matrix& a, std::size_t m) {
  require_square(a, "hv_factor");
  const std::size_t n = a.rows();
  FactorPair pair = priority_pivot_factor(border(a, m));

  // Zero leading rows and columns of the input survive into the factors.
  if (m > 0) {
    if (!submatrix(pair.L, {1, m}, {1, n + m}).is_zero() ||
        !submatrix(pair.U, {1, n + m}, {1, m}).is_zero()) {
      throw InvariantViolation("hv_factor: bordered factors lost their zero border");
    }
  }

  ConditionReport report = condition_report(a);
  if (report.failure_degree > m) return NoFactorization{std::move(report), std::move(pair)};

  HVFactorization hv{m, submatrix(pair.L, {m + 1, n + m}, {1, n + m}),
                     submatrix(pair.U, {1, n + m}, {m + 1, n + m})};
  if (!is_lower_triangular(submatrix(hv.H, {1, n}, {m + 1, n + m})) ||
      !is_upper_triangular(submatrix(hv.V, {m + 1, n + m}, {1, n}))) {
    throw InvariantViolation("hv_factor: factors miss the extra-column shape although failure degree " +
                             std::to_string(report.failure_degree) + " <= " + std::to_string(m));
  }
  if (!(multiply(hv.H, hv.V) == a)) throw InvariantViolation("hv_factor: H * V != A");
  return hv;
}

}  // namespace lufact
