#include "lufact/oracle.hpp"

#include <algorithm>
#include <random>

#include "lufact/conditions.hpp"
#include "lufact/factor.hpp"

namespace lufact::oracle {

namespace {

using Small = std::vector<std::uint32_t>;  // row-major n x n residues

bool in_left_band(std::size_t i, std::size_t j, std::size_t extra) { return j <= i + extra; }
bool in_right_band(std::size_t i, std::size_t j, std::size_t extra) { return i <= j + extra; }

Small to_small(const Matrix& a) {
  Small out(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i * a.cols() + j] = a.at(i + 1, j + 1).residue();
  }
  return out;
}

Matrix from_small(const FieldSpec& field, std::size_t n, const Small& s) {
  Matrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m.set(i + 1, j + 1, Scalar::from_residue(field, s[i * n + j]));
  }
  return m;
}

// Odometer over `digits` base p, last digit fastest. Returns false after wrap.
bool next(std::vector<std::uint32_t>& digits, std::uint32_t p) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < p) return true;
    digits[i] = 0;
  }
  return false;
}

std::uint64_t ipow(std::uint64_t base, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

}  // namespace

EnumerationDomain::EnumerationDomain(const FieldSpec& f, std::size_t order, std::size_t extra_diagonals)
    : field(f), n(order), extra(extra_diagonals) {
  if (field.is_rational() || field.modulus() > kMaxPrime) {
    throw UsageError("oracle: field " + field.token() + " too large for enumeration (need F2 or F3)");
  }
  if (n == 0 || n > kMaxOrder) {
    throw UsageError("oracle: order " + std::to_string(n) + " too large for enumeration (max 3)");
  }
}

std::size_t EnumerationDomain::free_left() const noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) count += in_left_band(i, j, extra);
  }
  return count;
}

std::size_t EnumerationDomain::free_right() const noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) count += in_right_band(i, j, extra);
  }
  return count;
}

std::uint64_t EnumerationDomain::size() const noexcept {
  return ipow(field.modulus(), free_left() + free_right());
}

std::optional<Witness> find_banded_witness(const Matrix& a, std::size_t extra) {
  if (!a.is_square()) throw UsageError("oracle: matrix must be square");
  const EnumerationDomain domain(a.field(), a.rows(), extra);
  const std::size_t n = domain.n;
  const std::uint32_t p = domain.field.modulus();
  const Small target = to_small(a);

  std::vector<std::size_t> left_slots;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (in_left_band(i, j, extra)) left_slots.push_back(i * n + j);
    }
  }

  // W's columns are independent given K: K * w_j = a_j. Searching each column's
  // free entries separately covers the same (K, W) space in the same order.
  std::vector<std::vector<std::size_t>> column_rows(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (in_right_band(i, j, extra)) column_rows[j].push_back(i);
    }
  }

  std::vector<std::uint32_t> left_digits(left_slots.size(), 0);
  Small k(n * n, 0);
  do {
    for (std::size_t s = 0; s < left_slots.size(); ++s) k[left_slots[s]] = left_digits[s];

    Small w(n * n, 0);
    bool all_columns = true;
    for (std::size_t j = 0; j < n && all_columns; ++j) {
      const auto& rows = column_rows[j];
      std::vector<std::uint32_t> col(rows.size(), 0);
      bool found = false;
      do {
        bool match = true;
        for (std::size_t i = 0; i < n && match; ++i) {
          std::uint32_t acc = 0;
          for (std::size_t r = 0; r < rows.size(); ++r) acc += k[i * n + rows[r]] * col[r];
          match = acc % p == target[i * n + j];
        }
        if (match) {
          for (std::size_t r = 0; r < rows.size(); ++r) w[rows[r] * n + j] = col[r];
          found = true;
          break;
        }
      } while (next(col, p));
      all_columns = found;
    }
    if (all_columns) return Witness{from_small(domain.field, n, k), from_small(domain.field, n, w)};
  } while (next(left_digits, p));
  return std::nullopt;
}

std::optional<Witness> find_lu_witness(const Matrix& a) { return find_banded_witness(a, 0); }

bool exists_lu_bruteforce(const Matrix& a) { return find_lu_witness(a).has_value(); }

std::size_t min_extra_diagonals_bruteforce(const Matrix& a) {
  for (std::size_t m = 0; m < a.rows(); ++m) {
    if (find_banded_witness(a, m)) return m;
  }
  throw InvariantViolation("oracle: no banded witness even with n-1 extra diagonals");
}

bool frobenius_rank_bounds_check(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.rows()) throw UsageError("frobenius_rank_bounds_check: inner dimensions differ");
  if (!(x.field() == y.field())) throw UsageError("frobenius_rank_bounds_check: field mismatch");
  const long k = static_cast<long>(x.cols());
  const long rx = static_cast<long>(rank(x));
  const long ry = static_cast<long>(rank(y));
  const long rz = static_cast<long>(rank(multiply(x, y)));
  return rx + ry - k <= rz && rz <= std::min(rx, ry);
}

void for_each_matrix(const FieldSpec& field, std::size_t n, const std::function<void(const Matrix&)>& fn) {
  const EnumerationDomain domain(field, n, 0);
  std::vector<std::uint32_t> digits(n * n, 0);
  do {
    fn(from_small(field, n, digits));
  } while (next(digits, field.modulus()));
}

std::vector<SweepResult> run_selftest_sweeps(std::uint64_t seed) {
  std::vector<SweepResult> results;

  auto record = [](SweepResult& r, bool agree, const Matrix& a) {
    ++r.checked;
    if (agree) return;
    if (r.disagreements++ == 0) r.first_counterexample = to_string(a);
  };

  {
    SweepResult r{"LU existence: conditions vs enumeration vs factorizer", 0, 0, {}};
    const std::vector<std::pair<std::uint32_t, std::size_t>> domains = {{2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}};
    for (auto [p, n] : domains) {
      for_each_matrix(FieldSpec::prime(p), n, [&](const Matrix& a) {
        const bool theory = satisfies_lu_conditions(a);
        record(r, theory == exists_lu_bruteforce(a) && theory == lu(a).ok(), a);
      });
    }
    results.push_back(std::move(r));
  }

  {
    SweepResult r{"failure degree vs minimal extra diagonals", 0, 0, {}};
    for (std::size_t n = 1; n <= 3; ++n) {
      for_each_matrix(FieldSpec::prime(2), n, [&](const Matrix& a) {
        const std::size_t degree = failure_degree(a);
        const FactorPair pair = priority_pivot_factor(a);
        record(r,
               degree == min_extra_diagonals_bruteforce(a) &&
                   degree == std::max(pair.extra_lower, pair.extra_upper),
               a);
      });
    }
    results.push_back(std::move(r));
  }

  {
    SweepResult r{"rank bounds of products", 0, 0, {}};
    std::mt19937_64 rng(seed);
    for (const FieldSpec field : {FieldSpec::rationals(), FieldSpec::prime(5)}) {
      std::uniform_int_distribution<int> dim(1, 6);
      std::uniform_int_distribution<long> entry(-3, 3);
      for (int t = 0; t < 200; ++t) {
        const std::size_t rows = dim(rng), inner = dim(rng), cols = dim(rng);
        Matrix x(field, rows, inner), y(field, inner, cols);
        for (std::size_t i = 1; i <= rows; ++i) {
          for (std::size_t j = 1; j <= inner; ++j) x.set(i, j, Scalar::from_int(field, entry(rng) * (rng() % 2)));
        }
        for (std::size_t i = 1; i <= inner; ++i) {
          for (std::size_t j = 1; j <= cols; ++j) y.set(i, j, Scalar::from_int(field, entry(rng) * (rng() % 2)));
        }
        record(r, frobenius_rank_bounds_check(x, y), x);
      }
    }
    results.push_back(std::move(r));
  }

  return results;
}

}  // namespace lufact::oracle
