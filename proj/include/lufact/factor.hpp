#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "lufact/conditions.hpp"
#include "lufact/matrix.hpp"

namespace lufact {

/// 1-based matrix position.
struct Position {
  std::size_t row;
  std::size_t col;

  friend bool operator==(const Position&, const Position&) = default;
};

struct PivotStep {
  std::size_t step;               // k, 1-based
  std::optional<Position> pivot;  // empty when the residual was already zero
  std::size_t priority = 0;       // priority of the pivot position, 0 without pivot
};

/// A = L * U with L, U square. The extents measure how far each factor is from
/// the intended triangular shape.
struct FactorPair {
  Matrix L;
  Matrix U;
  std::size_t extra_lower = 0;  // occupied diagonals above L's main diagonal
  std::size_t extra_upper = 0;  // occupied diagonals below U's main diagonal
  std::vector<PivotStep> trace;
};

/// A = H * V with H of shape n x (n+m) and V of shape (n+m) x n; the last n
/// columns of H form a lower triangular block, the last n rows of V an upper one.
struct HVFactorization {
  std::size_t m = 0;
  Matrix H;
  Matrix V;
};

/// The requested factorization does not exist. Carries the rank diagnostics and,
/// where the algorithm ran, the non-conforming pair it produced.
struct NoFactorization {
  ConditionReport report;
  std::optional<FactorPair> raw;
};

template <class T>
class Outcome {
 public:
  Outcome(T value) : state_(std::move(value)) {}
  Outcome(NoFactorization failure) : state_(std::move(failure)) {}

  bool ok() const noexcept { return std::holds_alternative<T>(state_); }
  explicit operator bool() const noexcept { return ok(); }

  const T& value() const {
    if (!ok()) throw std::logic_error("Outcome::value() on NoFactorization");
    return std::get<T>(state_);
  }
  const NoFactorization& failure() const {
    if (ok()) throw std::logic_error("Outcome::failure() on success");
    return std::get<NoFactorization>(state_);
  }

 private:
  std::variant<T, NoFactorization> state_;
};

/// Scan rank of position (i, j) in an n x n matrix. Mirror positions share a
/// value; positions are numbered row by row over the upper triangle:
///   n=4:  1  2  3  4
///         2  5  6  7
///         3  6  8  9
///         4  7  9 10
std::size_t priority(std::size_t i, std::size_t j, std::size_t n);

/// Rank-one update factorizer. At step k it picks the nonzero residual entry of
/// least priority (the upper position wins a tie with its mirror), peels off
/// column k of L and row k of U through that pivot, and subtracts their product.
/// L * U == A holds for every square A; the factors are triangular exactly when
/// A admits an LU factorization.
FactorPair priority_pivot_factor(const Matrix& a);

/// LU factorization, or the rank report explaining why none exists.
Outcome<FactorPair> lu(const Matrix& a);

/// A = K * W with K zero above its m-th superdiagonal and W zero below its m-th
/// subdiagonal. Exists iff failure_degree(a) <= m.
Outcome<FactorPair> kw_factor(const Matrix& a, std::size_t m);

/// A = H * V with m extra columns/rows, obtained from the factorization of the
/// matrix bordered by m zero rows and columns.
Outcome<HVFactorization> hv_factor(const Matrix& a, std::size_t m);

}  // namespace lufact
