#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "lufact/matrix.hpp"

namespace lufact {

/// Bijection on {1..n}. As a matrix P[i][image(i)] = 1, so (P * A) has row
/// image(i) of A in position i.
class Permutation {
 public:
  static Permutation identity(std::size_t n);
  /// Throws UsageError unless `images` is a bijection on {1..n}.
  static Permutation from_images(std::vector<std::size_t> images);

  std::size_t size() const noexcept { return map_.size(); }
  std::size_t image(std::size_t i) const;
  const std::vector<std::size_t>& images() const noexcept { return map_; }

  void swap_images(std::size_t i, std::size_t j);
  Permutation inverse() const;
  /// Matrix product (*this) * other.
  Permutation then(const Permutation& other) const;
  bool is_identity() const noexcept;

  Matrix to_matrix(const FieldSpec& field) const;
  /// Same as multiply(to_matrix(a.field()), a), without forming the matrix.
  Matrix apply_rows(const Matrix& a) const;

  /// `[p1 p2 ... pn]`
  std::string to_string() const;
  static Permutation parse(const std::string& text);

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {}

  std::vector<std::size_t> map_;  // 1-based images
};

using Factor = std::variant<Matrix, Permutation>;

Matrix factor_matrix(const Factor& f, const FieldSpec& field);

/// Facts established about one factor by direct inspection.
struct ShapeFlags {
  bool lower_triangular = false;
  bool upper_triangular = false;
  bool unit_diagonal = false;
  bool permutation = false;
  bool invertible = false;
};

ShapeFlags inspect_shape(const Factor& f, const FieldSpec& field);

enum class DecompositionKind { ULU, LUL, PLU, LUP };

const char* kind_name(DecompositionKind kind) noexcept;
/// Display names of the three factors, in product order.
std::array<const char*, 3> factor_names(DecompositionKind kind) noexcept;

struct TriDecomposition {
  DecompositionKind kind;
  std::array<Factor, 3> factors;
  std::array<ShapeFlags, 3> shapes;

  Matrix product(const FieldSpec& field) const;
  /// Shapes agree with the kind: e.g. for ULU the first factor is upper
  /// triangular and invertible, the second lower, the third upper.
  bool shapes_match_kind() const;
};

/// Row-reduction step towards ULU: M unit upper triangular with C = M * A, where
/// C satisfies rank C[{1..k}] = rank C[{1..n},{1..k}] for every k. At each
/// deficient k the first later row whose k-prefix leaves the span of the
/// leading k x k block is added (coefficient 1) to row k.
struct UluTransform {
  Matrix M;
  Matrix C;
};

UluTransform ulu_transform(const Matrix& a);

/// Same greedy selection as ulu_transform, swapping rows instead of adding.
/// Returns P0 with P0 * A satisfying the rank equalities.
Permutation plu_permutation(const Matrix& a);

/// Inverse of a unit upper triangular matrix by back substitution.
Matrix unit_upper_inverse(const Matrix& m);

TriDecomposition ulu(const Matrix& a);
TriDecomposition lul(const Matrix& a);
TriDecomposition plu(const Matrix& a);
TriDecomposition lup(const Matrix& a);

}  // namespace lufact
