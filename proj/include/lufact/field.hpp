#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace lufact {

enum class FieldKind { Rationals, PrimeField };

/// Descriptor of the field a matrix lives in: Q, or GF(p) for a prime p < 2^31.
class FieldSpec {
 public:
  static constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 31;

  static FieldSpec rationals() noexcept { return FieldSpec(); }
  /// Throws UsageError unless p is a prime below kMaxModulus.
  static FieldSpec prime(std::uint64_t p);
  /// Accepts `Q` or `F<p>`; throws ParseError otherwise.
  static FieldSpec parse(std::string_view token);

  FieldKind kind() const noexcept { return kind_; }
  bool is_rational() const noexcept { return kind_ == FieldKind::Rationals; }
  /// Zero for Q.
  std::uint32_t modulus() const noexcept { return modulus_; }
  std::string token() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec() = default;
  explicit FieldSpec(std::uint32_t p) : kind_(FieldKind::PrimeField), modulus_(p) {}

  FieldKind kind_ = FieldKind::Rationals;
  std::uint32_t modulus_ = 0;
};

bool is_prime(std::uint64_t n) noexcept;

/// An exact field element, always held in canonical form: a reduced fraction with
/// positive denominator over Q, the least nonnegative residue over GF(p).
class Scalar {
 public:
  using Value = std::variant<std::uint32_t, mpq_class>;

  static Scalar zero(const FieldSpec& field);
  static Scalar one(const FieldSpec& field);
  static Scalar from_int(const FieldSpec& field, long value);
  /// Residue must already be in [0, p).
  static Scalar from_residue(const FieldSpec& field, std::uint32_t residue);
  /// Canonicalizes; `field` must be Q.
  static Scalar from_rational(mpq_class value);

  const FieldSpec& field() const noexcept { return field_; }
  const Value& value() const noexcept { return value_; }
  bool is_zero() const noexcept;
  bool is_one() const noexcept;

  std::uint32_t residue() const { return std::get<std::uint32_t>(value_); }
  const mpq_class& rational() const { return std::get<mpq_class>(value_); }

  Scalar inverse() const;

  friend Scalar operator+(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x, const Scalar& y);
  friend Scalar operator*(const Scalar& x, const Scalar& y);
  friend Scalar operator/(const Scalar& x, const Scalar& y);
  friend Scalar operator-(const Scalar& x);

  /// Equal field and equal value; never throws.
  friend bool operator==(const Scalar& x, const Scalar& y);

 private:
  Scalar(FieldSpec field, Value value) : field_(field), value_(std::move(value)) {}

  FieldSpec field_;
  Value value_;
};

enum class ArithOp { Add, Sub, Mul, Neg };

/// Dispatches one of the four ring operations; `y` is ignored for Neg.
/// Throws UsageError when the operands belong to different fields.
Scalar scalar_arith(ArithOp op, const Scalar& x, const Scalar& y);
Scalar scalar_inv(const Scalar& x);

/// Optional sign, then decimal digits, optionally `/` and a positive denominator
/// (Q only). Integers are reduced modulo p over GF(p).
Scalar parse_scalar(std::string_view text, const FieldSpec& field);
std::string format_scalar(const Scalar& x);

}  // namespace lufact
