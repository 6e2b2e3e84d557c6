#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "lufact/matrix.hpp"

// Exhaustive ground truth over tiny prime fields. Nothing here touches the rank
// kernels or the factorizer: candidate factors are enumerated and multiplied
// with plain integer arithmetic mod p.

namespace lufact::oracle {

inline constexpr std::size_t kMaxOrder = 3;
inline constexpr std::uint32_t kMaxPrime = 3;

/// Search space for A = K * W with K zero whenever j > i + extra and W zero
/// whenever i > j + extra. extra = 0 is the plain LU shape.
struct EnumerationDomain {
  FieldSpec field;
  std::size_t n;
  std::size_t extra;

  /// Throws UsageError outside p <= 3, n <= 3.
  EnumerationDomain(const FieldSpec& field, std::size_t n, std::size_t extra);

  std::size_t free_left() const noexcept;
  std::size_t free_right() const noexcept;
  /// p^(free_left + free_right): number of (K, W) pairs covered.
  std::uint64_t size() const noexcept;
};

struct Witness {
  Matrix left;
  Matrix right;
};

/// First (K, W) in lexicographic order over K's free entries (row-major), then
/// W's free entries (column-major), or nothing.
std::optional<Witness> find_banded_witness(const Matrix& a, std::size_t extra);
std::optional<Witness> find_lu_witness(const Matrix& a);

bool exists_lu_bruteforce(const Matrix& a);
/// Least m admitting a banded witness; at most n - 1.
std::size_t min_extra_diagonals_bruteforce(const Matrix& a);

/// rank X + rank Y - k <= rank(XY) <= min(rank X, rank Y), k = X.cols.
bool frobenius_rank_bounds_check(const Matrix& x, const Matrix& y);

/// Calls fn on every n x n matrix over GF(p), p <= 3, in lexicographic order.
void for_each_matrix(const FieldSpec& field, std::size_t n, const std::function<void(const Matrix&)>& fn);

struct SweepResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t disagreements = 0;
  std::string first_counterexample;

  bool passed() const noexcept { return disagreements == 0; }
};

/// The theory-vs-enumeration sweeps behind `lufact selftest`.
std::vector<SweepResult> run_selftest_sweeps(std::uint64_t seed = 20240601);

}  // namespace lufact::oracle
