#include "lufact/decompositions.hpp"

#include <algorithm>
#include <sstream>

#include "lufact/conditions.hpp"
#include "lufact/factor.hpp"

namespace lufact {

// --- Permutation -----------------------------------------------------------

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::size_t> map(n);
  for (std::size_t i = 0; i < n; ++i) map[i] = i + 1;
  return Permutation(std::move(map));
}

Permutation Permutation::from_images(std::vector<std::size_t> images) {
  std::vector<bool> seen(images.size() + 1, false);
  for (std::size_t v : images) {
    if (v < 1 || v > images.size() || seen[v]) throw UsageError("not a permutation of 1..n");
    seen[v] = true;
  }
  return Permutation(std::move(images));
}

std::size_t Permutation::image(std::size_t i) const {
  if (i < 1 || i > map_.size()) throw UsageError("permutation index out of range");
  return map_[i - 1];
}

void Permutation::swap_images(std::size_t i, std::size_t j) {
  if (i < 1 || j < 1 || i > map_.size() || j > map_.size()) {
    throw UsageError("permutation index out of range");
  }
  std::swap(map_[i - 1], map_[j - 1]);
}

Permutation Permutation::inverse() const {
  std::vector<std::size_t> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i] - 1] = i + 1;
  return Permutation(std::move(inv));
}

Permutation Permutation::then(const Permutation& other) const {
  if (other.size() != size()) throw UsageError("permutation sizes differ");
  // Row i of (P Q) is row image_P(i) of Q, which is e_{image_Q(image_P(i))}.
  std::vector<std::size_t> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) out[i] = other.map_[map_[i] - 1];
  return Permutation(std::move(out));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < map_.size(); ++i) {
    if (map_[i] != i + 1) return false;
  }
  return true;
}

Matrix Permutation::to_matrix(const FieldSpec& field) const {
  Matrix p(field, size(), size());
  for (std::size_t i = 1; i <= size(); ++i) p.set(i, image(i), Scalar::one(field));
  return p;
}

Matrix Permutation::apply_rows(const Matrix& a) const {
  if (a.rows() != size()) throw UsageError("permutation size does not match matrix rows");
  return a.visit([&](const auto&, const auto& d) {
    auto out = d;
    for (std::size_t i = 0; i < size(); ++i) {
      const auto src = d.row(map_[i] - 1);
      std::copy(src.begin(), src.end(), out.row(i).begin());
    }
    return Matrix::adopt(a.field(), std::move(out));
  });
}

std::string Permutation::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < map_.size(); ++i) out << (i ? " " : "") << map_[i];
  out << "]";
  return out.str();
}

Permutation Permutation::parse(const std::string& text) {
  auto first = text.find_first_not_of(" \t\r");
  auto last = text.find_last_not_of(" \t\r");
  if (first == std::string::npos || text[first] != '[' || text[last] != ']') {
    throw ParseError("permutation must look like [p1 p2 ... pn]");
  }
  std::istringstream in(text.substr(first + 1, last - first - 1));
  std::vector<std::size_t> images;
  std::string token;
  while (in >> token) {
    if (token.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("bad permutation entry '" + token + "'");
    }
    images.push_back(std::stoul(token));
  }
  if (images.empty()) throw ParseError("empty permutation");
  try {
    return from_images(std::move(images));
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
}

// --- factor inspection -----------------------------------------------------

Matrix factor_matrix(const Factor& f, const FieldSpec& field) {
  if (const auto* m = std::get_if<Matrix>(&f)) return *m;
  return std::get<Permutation>(f).to_matrix(field);
}

namespace {

bool is_permutation_matrix(const Matrix& m) {
  if (!m.is_square()) return false;
  const std::size_t n = m.rows();
  std::vector<std::size_t> col_count(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t ones = 0;
    for (std::size_t j = 1; j <= n; ++j) {
      Scalar x = m.at(i, j);
      if (x.is_zero()) continue;
      if (!x.is_one()) return false;
      ++ones;
      ++col_count[j];
    }
    if (ones != 1) return false;
  }
  return std::all_of(col_count.begin() + 1, col_count.end(), [](std::size_t c) { return c == 1; });
}

}  // namespace

ShapeFlags inspect_shape(const Factor& f, const FieldSpec& field) {
  const Matrix m = factor_matrix(f, field);
  ShapeFlags flags;
  flags.lower_triangular = is_lower_triangular(m);
  flags.upper_triangular = is_upper_triangular(m);
  flags.unit_diagonal = is_unit_lower_triangular(m) || is_unit_upper_triangular(m);
  flags.permutation = is_permutation_matrix(m);
  flags.invertible = m.is_square() && rank(m) == m.rows();
  return flags;
}

const char* kind_name(DecompositionKind kind) noexcept {
  switch (kind) {
    case DecompositionKind::ULU:
      return "ulu";
    case DecompositionKind::LUL:
      return "lul";
    case DecompositionKind::PLU:
      return "plu";
    case DecompositionKind::LUP:
      return "lup";
  }
  return "?";
}

std::array<const char*, 3> factor_names(DecompositionKind kind) noexcept {
  switch (kind) {
    case DecompositionKind::ULU:
      return {"U1", "L", "U2"};
    case DecompositionKind::LUL:
      return {"L1", "U", "L2"};
    case DecompositionKind::PLU:
      return {"P", "L", "U"};
    case DecompositionKind::LUP:
      return {"L", "U", "P"};
  }
  return {"?", "?", "?"};
}

Matrix TriDecomposition::product(const FieldSpec& field) const {
  return multiply(multiply(factor_matrix(factors[0], field), factor_matrix(factors[1], field)),
                  factor_matrix(factors[2], field));
}

bool TriDecomposition::shapes_match_kind() const {
  const auto& [a, b, c] = shapes;
  switch (kind) {
    case DecompositionKind::ULU:
      return a.upper_triangular && a.invertible && b.lower_triangular && c.upper_triangular;
    case DecompositionKind::LUL:
      return a.lower_triangular && b.upper_triangular && c.lower_triangular && c.invertible;
    case DecompositionKind::PLU:
      return a.permutation && b.lower_triangular && c.upper_triangular;
    case DecompositionKind::LUP:
      return a.lower_triangular && b.upper_triangular && c.permutation;
  }
  return false;
}

// --- constructions ---------------------------------------------------------

namespace {

void require_square(const Matrix& a, const char* op) {
  if (!a.is_square()) {
    throw UsageError(std::string(op) + ": matrix must be square, got " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()));
  }
}

bool leading_rank_matches_columns(const Matrix& c, std::size_t k) {
  return rank(leading(c, k)) == rank(submatrix(c, {1, c.rows()}, {1, k}));
}

// Smallest i > k whose k-prefix is outside the row span of C[{1..k}], or 0.
std::size_t first_independent_row(const Matrix& c, std::size_t k) {
  const Matrix block = leading(c, k);
  for (std::size_t i = k + 1; i <= c.rows(); ++i) {
    if (!row_in_span(submatrix(c, {i, i}, {1, k}), block)) return i;
  }
  return 0;
}

// row dst += row src
void add_row(Matrix& m, std::size_t dst, std::size_t src) {
  m.visit([&](const auto& ops, auto& d) {
    using Elem = typename std::decay_t<decltype(d)>::value_type;
    ops.axpy(d.row(dst - 1), std::span<const Elem>(d.row(src - 1)), ops.one());
  });
}

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
  m.visit([&](const auto&, auto& d) { d.swap_rows(a - 1, b - 1); });
}

void check_rank_equalities(const Matrix& c, const char* op) {
  for (std::size_t k = 1; k <= c.rows(); ++k) {
    if (!leading_rank_matches_columns(c, k)) {
      throw InvariantViolation(std::string(op) + ": rank equality fails at k=" + std::to_string(k));
    }
  }
}

FactorPair lu_or_throw(const Matrix& c, const char* op) {
  auto result = lu(c);
  if (!result) throw InvariantViolation(std::string(op) + ": reduced matrix has no LU factorization");
  return result.value();
}

TriDecomposition make(DecompositionKind kind, Factor f0, Factor f1, Factor f2,
                      const FieldSpec& field) {
  TriDecomposition out{kind, {std::move(f0), std::move(f1), std::move(f2)}, {}};
  for (std::size_t i = 0; i < 3; ++i) out.shapes[i] = inspect_shape(out.factors[i], field);
  return out;
}

}  // namespace

UluTransform ulu_transform(const Matrix& a) {
  require_square(a, "ulu_transform");
  const std::size_t n = a.rows();
  Matrix c = a;
  Matrix m = Matrix::identity(a.field(), n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (leading_rank_matches_columns(c, k)) continue;
    const std::size_t i = first_independent_row(c, k);
    if (i == 0) throw InvariantViolation("ulu_transform: no independent row below k=" + std::to_string(k));
    add_row(c, k, i);
    add_row(m, k, i);
  }
  check_rank_equalities(c, "ulu_transform");
  if (!is_unit_upper_triangular(m)) throw InvariantViolation("ulu_transform: M not unit upper triangular");
  return {std::move(m), std::move(c)};
}

Permutation plu_permutation(const Matrix& a) {
  require_square(a, "plu_permutation");
  const std::size_t n = a.rows();
  Matrix c = a;
  Permutation p0 = Permutation::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    if (leading_rank_matches_columns(c, k)) continue;
    const std::size_t i = first_independent_row(c, k);
    if (i == 0) throw InvariantViolation("plu_permutation: no independent row below k=" + std::to_string(k));
    swap_rows(c, k, i);
    p0.swap_images(k, i);
  }
  check_rank_equalities(c, "plu_permutation");
  return p0;
}

Matrix unit_upper_inverse(const Matrix& m) {
  if (!is_unit_upper_triangular(m)) throw UsageError("unit_upper_inverse: not unit upper triangular");
  const std::size_t n = m.rows();
  Matrix x = Matrix::identity(m.field(), n);
  // Row i of X is e_i - sum_{k>i} m[i][k] * (row k of X), filled bottom-up.
  x.visit([&](const auto& ops, auto& xd) {
    using Elem = typename std::decay_t<decltype(xd)>::value_type;
    const auto& md = m.dense<Elem>();
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) {
        if (ops.is_zero(md(i, k))) continue;
        ops.axpy(xd.row(i), std::span<const Elem>(xd.row(k)), ops.neg(md(i, k)));
      }
    }
  });
  return x;
}

TriDecomposition ulu(const Matrix& a) {
  require_square(a, "ulu");
  UluTransform t = ulu_transform(a);
  FactorPair lu_c = lu_or_throw(t.C, "ulu");
  return make(DecompositionKind::ULU, unit_upper_inverse(t.M), std::move(lu_c.L), std::move(lu_c.U),
              a.field());
}

TriDecomposition lul(const Matrix& a) {
  require_square(a, "lul");
  const TriDecomposition t = ulu(transpose(a));
  return make(DecompositionKind::LUL, transpose(std::get<Matrix>(t.factors[2])),
              transpose(std::get<Matrix>(t.factors[1])), transpose(std::get<Matrix>(t.factors[0])),
              a.field());
}

TriDecomposition plu(const Matrix& a) {
  require_square(a, "plu");
  const Permutation p0 = plu_permutation(a);
  FactorPair lu_c = lu_or_throw(p0.apply_rows(a), "plu");
  return make(DecompositionKind::PLU, p0.inverse(), std::move(lu_c.L), std::move(lu_c.U), a.field());
}

TriDecomposition lup(const Matrix& a) {
  require_square(a, "lup");
  const TriDecomposition t = plu(transpose(a));
  return make(DecompositionKind::LUP, transpose(std::get<Matrix>(t.factors[2])),
              transpose(std::get<Matrix>(t.factors[1])), std::get<Permutation>(t.factors[0]).inverse(),
              a.field());
}

}  // namespace lufact
