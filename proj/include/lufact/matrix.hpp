#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "lufact/detail/dense.hpp"
#include "lufact/errors.hpp"
#include "lufact/field.hpp"

namespace lufact {

/// Inclusive 1-based index interval {first..last}.
struct IndexRange {
  std::size_t first;
  std::size_t last;

  std::size_t size() const noexcept { return last >= first ? last - first + 1 : 0; }
};

/// Dense rows x cols matrix over a single field. All public indexing is 1-based.
class Matrix {
 public:
  using PrimeStorage = detail::Dense<std::uint32_t>;
  using RationalStorage = detail::Dense<mpq_class>;

  /// Zero matrix. Throws UsageError when either dimension is zero.
  Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols);

  static Matrix identity(const FieldSpec& field, std::size_t n);
  static Matrix from_rows(const FieldSpec& field, const std::vector<std::vector<Scalar>>& rows);
  static Matrix from_ints(const FieldSpec& field, std::initializer_list<std::initializer_list<long>> rows);
  /// Entries in parse_scalar syntax.
  static Matrix from_strings(const FieldSpec& field,
                             const std::vector<std::vector<std::string>>& rows);

  const FieldSpec& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Scalar at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Scalar& value);
  bool is_zero_at(std::size_t i, std::size_t j) const;
  bool is_zero() const;

  friend bool operator==(const Matrix& a, const Matrix& b);

  /// Calls fn(ops, storage) with the field-specific arithmetic policy and the
  /// typed backing array. Internal algorithms are written against this.
  template <class Fn>
  decltype(auto) visit(Fn&& fn) const {
    if (auto* s = std::get_if<PrimeStorage>(&storage_)) {
      return fn(detail::PrimeOps{field_.modulus()}, *s);
    }
    return fn(detail::RationalOps{}, std::get<RationalStorage>(storage_));
  }
  template <class Fn>
  decltype(auto) visit(Fn&& fn) {
    if (auto* s = std::get_if<PrimeStorage>(&storage_)) {
      return fn(detail::PrimeOps{field_.modulus()}, *s);
    }
    return fn(detail::RationalOps{}, std::get<RationalStorage>(storage_));
  }

  /// Typed backing array; Elem must match the field kind.
  template <class Elem>
  const detail::Dense<Elem>& dense() const {
    return std::get<detail::Dense<Elem>>(storage_);
  }

  /// Wraps typed storage produced by an internal algorithm.
  template <class Elem>
  static Matrix adopt(const FieldSpec& field, detail::Dense<Elem> storage) {
    Matrix m(field, storage.rows, storage.cols);
    std::get<detail::Dense<Elem>>(m.storage_) = std::move(storage);
    return m;
  }

 private:
  void check_index(std::size_t i, std::size_t j) const;

  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::variant<PrimeStorage, RationalStorage> storage_;
};

/// Exact rank by Gaussian elimination. Deterministic.
std::size_t rank(const Matrix& a);

Matrix submatrix(const Matrix& a, IndexRange rows, IndexRange cols);
/// Top-left k x k block A[{1..k}].
Matrix leading(const Matrix& a, std::size_t k);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
/// `a` stacked on top of `b`.
Matrix vstack(const Matrix& a, const Matrix& b);
/// True iff the single row `v` lies in the row space of `s`.
bool row_in_span(const Matrix& v, const Matrix& s);

/// max(0, max{j - i : a[i][j] != 0}): how many diagonals above the main one are
/// occupied. Zero iff `a` is lower triangular.
std::size_t superdiagonal_extent(const Matrix& a);
/// max(0, max{i - j : a[i][j] != 0}). Zero iff `a` is upper triangular.
std::size_t subdiagonal_extent(const Matrix& a);
bool is_lower_triangular(const Matrix& a);
bool is_upper_triangular(const Matrix& a);
/// Triangular with every diagonal entry equal to one.
bool is_unit_upper_triangular(const Matrix& a);
bool is_unit_lower_triangular(const Matrix& a);

std::string to_string(const Matrix& a);

}  // namespace lufact
