#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "lufact/detail/modular.hpp"
#include "lufact/kernels.hpp"

namespace lufact::detail {

/// Row-major storage, 0-based. Only the library internals see this layer.
template <class Elem>
struct Dense {
  using value_type = Elem;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> data;

  Dense() = default;
  Dense(std::size_t r, std::size_t c, const Elem& fill) : rows(r), cols(c), data(r * c, fill) {}

  Elem& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Elem& operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  std::span<Elem> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const Elem> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const Dense&, const Dense&) = default;
};

/// Arithmetic over GF(p) on canonical residues; row operations go through the
/// dispatched SIMD kernels.
struct PrimeOps {
  using Elem = std::uint32_t;
  std::uint32_t p;

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  static bool is_zero(Elem x) { return x == 0; }
  Elem add(Elem a, Elem b) const { return add_mod(a, b, p); }
  Elem sub(Elem a, Elem b) const { return sub_mod(a, b, p); }
  Elem mul(Elem a, Elem b) const { return mul_mod(a, b, p); }
  Elem neg(Elem a) const { return neg_mod(a, p); }
  Elem inv(Elem a) const { return inv_mod(a, p); }

  /// dst += c * src
  void axpy(std::span<Elem> dst, std::span<const Elem> src, const Elem& c) const {
    kernels::axpy_mod(dst, src, c, p);
  }
  /// dst = c * src
  void scale(std::span<Elem> dst, std::span<const Elem> src, const Elem& c) const {
    kernels::scale_mod(dst, src, c, p);
  }
};

struct RationalOps {
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  static bool is_zero(const Elem& x) { return sgn(x) == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw DivisionByZero();
    return 1 / a;
  }

  void axpy(std::span<Elem> dst, std::span<const Elem> src, const Elem& c) const {
    if (sgn(c) == 0) return;
    for (std::size_t j = 0; j < dst.size(); ++j) {
      if (sgn(src[j]) != 0) dst[j] += c * src[j];
    }
  }
  void scale(std::span<Elem> dst, std::span<const Elem> src, const Elem& c) const {
    for (std::size_t j = 0; j < dst.size(); ++j) dst[j] = c * src[j];
  }
};

/// Rank by forward elimination with a first-nonzero pivot scan; destroys `a`.
template <class Ops>
std::size_t eliminate_rank(const Ops& ops, Dense<typename Ops::Elem>& a) {
  std::size_t rank = 0;
  for (std::size_t col = 0; col < a.cols && rank < a.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < a.rows && Ops::is_zero(a(pivot, col))) ++pivot;
    if (pivot == a.rows) continue;
    a.swap_rows(rank, pivot);
    const auto pivot_inv = ops.inv(a(rank, col));
    auto pivot_tail = a.row(rank).subspan(col);
    for (std::size_t r = rank + 1; r < a.rows; ++r) {
      if (Ops::is_zero(a(r, col))) continue;
      const auto factor = ops.neg(ops.mul(a(r, col), pivot_inv));
      ops.axpy(a.row(r).subspan(col), std::span<const typename Ops::Elem>(pivot_tail), factor);
    }
    ++rank;
  }
  return rank;
}

}  // namespace lufact::detail
