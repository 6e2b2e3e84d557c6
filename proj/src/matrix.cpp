#include "lufact/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace lufact {

namespace {

Scalar to_scalar(const FieldSpec& field, std::uint32_t x) { return Scalar::from_residue(field, x); }
Scalar to_scalar(const FieldSpec&, const mpq_class& x) { return Scalar::from_rational(x); }

void require_same_field(const Matrix& a, const Matrix& b, const char* op) {
  if (!(a.field() == b.field())) {
    throw UsageError(std::string(op) + ": field mismatch (" + a.field().token() + " vs " +
                     b.field().token() + ")");
  }
}

template <class Elem>
using DenseOf = detail::Dense<Elem>;

}  // namespace

Matrix::Matrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw UsageError("matrix dimensions must be positive");
  if (field.is_rational()) {
    storage_ = RationalStorage(rows, cols, mpq_class(0));
  } else {
    storage_ = PrimeStorage(rows, cols, 0u);
  }
}

Matrix Matrix::identity(const FieldSpec& field, std::size_t n) {
  Matrix m(field, n, n);
  m.visit([&](const auto& ops, auto& d) {
    for (std::size_t i = 0; i < n; ++i) d(i, i) = ops.one();
  });
  return m;
}

Matrix Matrix::from_rows(const FieldSpec& field, const std::vector<std::vector<Scalar>>& rows) {
  if (rows.empty() || rows.front().empty()) throw UsageError("matrix dimensions must be positive");
  Matrix m(field, rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw UsageError("ragged rows");
    for (std::size_t j = 0; j < rows[i].size(); ++j) m.set(i + 1, j + 1, rows[i][j]);
  }
  return m;
}

Matrix Matrix::from_ints(const FieldSpec& field,
                         std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<Scalar>> scalars;
  for (const auto& row : rows) {
    auto& out = scalars.emplace_back();
    for (long v : row) out.push_back(Scalar::from_int(field, v));
  }
  return from_rows(field, scalars);
}

Matrix Matrix::from_strings(const FieldSpec& field,
                            const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::vector<Scalar>> scalars;
  for (const auto& row : rows) {
    auto& out = scalars.emplace_back();
    for (const auto& token : row) out.push_back(parse_scalar(token, field));
  }
  return from_rows(field, scalars);
}

void Matrix::check_index(std::size_t i, std::size_t j) const {
  if (i < 1 || i > rows_ || j < 1 || j > cols_) {
    throw UsageError("index (" + std::to_string(i) + "," + std::to_string(j) + ") outside " +
                     std::to_string(rows_) + "x" + std::to_string(cols_) + " matrix");
  }
}

Scalar Matrix::at(std::size_t i, std::size_t j) const {
  check_index(i, j);
  return visit([&](const auto&, const auto& d) { return to_scalar(field_, d(i - 1, j - 1)); });
}

void Matrix::set(std::size_t i, std::size_t j, const Scalar& value) {
  check_index(i, j);
  if (!(value.field() == field_)) {
    throw UsageError("entry field " + value.field().token() + " does not match matrix field " +
                     field_.token());
  }
  if (auto* s = std::get_if<PrimeStorage>(&storage_)) {
    (*s)(i - 1, j - 1) = value.residue();
  } else {
    std::get<RationalStorage>(storage_)(i - 1, j - 1) = value.rational();
  }
}

bool Matrix::is_zero_at(std::size_t i, std::size_t j) const {
  check_index(i, j);
  return visit([&](const auto& ops, const auto& d) { return ops.is_zero(d(i - 1, j - 1)); });
}

bool Matrix::is_zero() const {
  return visit([](const auto& ops, const auto& d) {
    return std::all_of(d.data.begin(), d.data.end(), [&](const auto& x) { return ops.is_zero(x); });
  });
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.storage_ == b.storage_;
}

std::size_t rank(const Matrix& a) {
  return a.visit([](const auto& ops, const auto& d) {
    auto work = d;
    return detail::eliminate_rank(ops, work);
  });
}

Matrix submatrix(const Matrix& a, IndexRange rows, IndexRange cols) {
  if (rows.first < 1 || rows.first > rows.last || rows.last > a.rows() || cols.first < 1 ||
      cols.first > cols.last || cols.last > a.cols()) {
    throw UsageError("submatrix range out of bounds");
  }
  return a.visit([&](const auto&, const auto& d) {
    using Elem = typename std::decay_t<decltype(d)>::value_type;
    DenseOf<Elem> out(rows.size(), cols.size(), Elem{});
    for (std::size_t i = 0; i < out.rows; ++i) {
      for (std::size_t j = 0; j < out.cols; ++j) out(i, j) = d(rows.first - 1 + i, cols.first - 1 + j);
    }
    return Matrix::adopt(a.field(), std::move(out));
  });
}

Matrix leading(const Matrix& a, std::size_t k) { return submatrix(a, {1, k}, {1, k}); }

Matrix multiply(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "multiply");
  if (a.cols() != b.rows()) {
    throw UsageError("multiply: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  return a.visit([&](const auto& ops, const auto& da) {
    using Elem = typename std::decay_t<decltype(da)>::value_type;
    const auto& db = b.dense<Elem>();
    DenseOf<Elem> out(da.rows, db.cols, ops.zero());
    for (std::size_t i = 0; i < da.rows; ++i) {
      for (std::size_t k = 0; k < da.cols; ++k) {
        if (ops.is_zero(da(i, k))) continue;
        ops.axpy(out.row(i), db.row(k), da(i, k));
      }
    }
    return Matrix::adopt(a.field(), std::move(out));
  });
}

Matrix transpose(const Matrix& a) {
  return a.visit([&](const auto&, const auto& d) {
    using Elem = typename std::decay_t<decltype(d)>::value_type;
    DenseOf<Elem> out(d.cols, d.rows, Elem{});
    for (std::size_t i = 0; i < d.rows; ++i) {
      for (std::size_t j = 0; j < d.cols; ++j) out(j, i) = d(i, j);
    }
    return Matrix::adopt(a.field(), std::move(out));
  });
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  require_same_field(a, b, "vstack");
  if (a.cols() != b.cols()) throw UsageError("vstack: column counts differ");
  return a.visit([&](const auto&, const auto& da) {
    using Elem = typename std::decay_t<decltype(da)>::value_type;
    const auto& db = b.dense<Elem>();
    DenseOf<Elem> out = da;
    out.rows += db.rows;
    out.data.insert(out.data.end(), db.data.begin(), db.data.end());
    return Matrix::adopt(a.field(), std::move(out));
  });
}

bool row_in_span(const Matrix& v, const Matrix& s) {
  require_same_field(v, s, "row_in_span");
  if (v.rows() != 1 || v.cols() != s.cols()) throw UsageError("row_in_span: shape mismatch");
  return rank(vstack(s, v)) == rank(s);
}

std::size_t superdiagonal_extent(const Matrix& a) {
  return a.visit([](const auto& ops, const auto& d) {
    std::size_t extent = 0;
    for (std::size_t i = 0; i < d.rows; ++i) {
      for (std::size_t j = i + 1; j < d.cols; ++j) {
        if (!ops.is_zero(d(i, j))) extent = std::max(extent, j - i);
      }
    }
    return extent;
  });
}

std::size_t subdiagonal_extent(const Matrix& a) {
  return a.visit([](const auto& ops, const auto& d) {
    std::size_t extent = 0;
    for (std::size_t i = 1; i < d.rows; ++i) {
      for (std::size_t j = 0; j < std::min(i, d.cols); ++j) {
        if (!ops.is_zero(d(i, j))) extent = std::max(extent, i - j);
      }
    }
    return extent;
  });
}

bool is_lower_triangular(const Matrix& a) { return superdiagonal_extent(a) == 0; }
bool is_upper_triangular(const Matrix& a) { return subdiagonal_extent(a) == 0; }

namespace {

bool unit_diagonal(const Matrix& a) {
  if (!a.is_square()) return false;
  for (std::size_t i = 1; i <= a.rows(); ++i) {
    if (!a.at(i, i).is_one()) return false;
  }
  return true;
}

}  // namespace

bool is_unit_upper_triangular(const Matrix& a) { return is_upper_triangular(a) && unit_diagonal(a); }
bool is_unit_lower_triangular(const Matrix& a) { return is_lower_triangular(a) && unit_diagonal(a); }

std::string to_string(const Matrix& a) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 1; i <= a.rows(); ++i) {
    out << (i == 1 ? "[" : ", [");
    for (std::size_t j = 1; j <= a.cols(); ++j) {
      if (j > 1) out << ", ";
      out << format_scalar(a.at(i, j));
    }
    out << "]";
  }
  out << "] over " << a.field().token();
  return out.str();
}

}  // namespace lufact
