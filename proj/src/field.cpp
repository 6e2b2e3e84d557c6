#include "lufact/field.hpp"

#include <charconv>
#include <string>

#include "lufact/detail/modular.hpp"
#include "lufact/errors.hpp"

namespace lufact {

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= kMaxModulus) {
    throw UsageError("modulus " + std::to_string(p) + " exceeds 2^31");
  }
  if (!is_prime(p)) {
    throw UsageError("modulus " + std::to_string(p) + " is not prime");
  }
  return FieldSpec(static_cast<std::uint32_t>(p));
}

FieldSpec FieldSpec::parse(std::string_view token) {
  if (token == "Q") return rationals();
  if (token.size() >= 2 && token.front() == 'F') {
    std::uint64_t p = 0;
    const char* first = token.data() + 1;
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, p);
    if (ec == std::errc() && ptr == last) {
      try {
        return prime(p);
      } catch (const UsageError& e) {
        throw ParseError(e.what());
      }
    }
    if (ec == std::errc::result_out_of_range) {
      throw ParseError("modulus in field token '" + std::string(token) + "' exceeds 2^31");
    }
  }
  throw ParseError("bad field token '" + std::string(token) + "' (expected Q or F<p>)");
}

std::string FieldSpec::token() const {
  return is_rational() ? std::string("Q") : "F" + std::to_string(modulus_);
}

namespace {

void require_same_field(const Scalar& x, const Scalar& y) {
  if (!(x.field() == y.field())) {
    throw UsageError("scalar field mismatch: " + x.field().token() + " vs " + y.field().token());
  }
}

}  // namespace

Scalar Scalar::zero(const FieldSpec& field) {
  if (field.is_rational()) return Scalar(field, mpq_class(0));
  return Scalar(field, std::uint32_t{0});
}

Scalar Scalar::one(const FieldSpec& field) {
  if (field.is_rational()) return Scalar(field, mpq_class(1));
  return Scalar(field, std::uint32_t{1});
}

Scalar Scalar::from_int(const FieldSpec& field, long value) {
  if (field.is_rational()) return Scalar(field, mpq_class(value));
  const auto p = static_cast<long long>(field.modulus());
  long long r = static_cast<long long>(value) % p;
  if (r < 0) r += p;
  return Scalar(field, static_cast<std::uint32_t>(r));
}

Scalar Scalar::from_residue(const FieldSpec& field, std::uint32_t residue) {
  if (field.is_rational() || residue >= field.modulus()) {
    throw UsageError("residue out of range for field " + field.token());
  }
  return Scalar(field, residue);
}

Scalar Scalar::from_rational(mpq_class value) {
  value.canonicalize();
  return Scalar(FieldSpec::rationals(), std::move(value));
}

bool Scalar::is_zero() const noexcept {
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) return *r == 0;
  return sgn(std::get<mpq_class>(value_)) == 0;
}

bool Scalar::is_one() const noexcept {
  if (const auto* r = std::get_if<std::uint32_t>(&value_)) return *r == 1;
  return std::get<mpq_class>(value_) == 1;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero();
  if (field_.is_rational()) return Scalar(field_, mpq_class(1 / rational()));
  return Scalar(field_, detail::inv_mod(residue(), field_.modulus()));
}

Scalar operator+(const Scalar& x, const Scalar& y) {
  require_same_field(x, y);
  if (x.field_.is_rational()) return Scalar(x.field_, mpq_class(x.rational() + y.rational()));
  return Scalar(x.field_, detail::add_mod(x.residue(), y.residue(), x.field_.modulus()));
}

Scalar operator-(const Scalar& x, const Scalar& y) {
  require_same_field(x, y);
  if (x.field_.is_rational()) return Scalar(x.field_, mpq_class(x.rational() - y.rational()));
  return Scalar(x.field_, detail::sub_mod(x.residue(), y.residue(), x.field_.modulus()));
}

Scalar operator*(const Scalar& x, const Scalar& y) {
  require_same_field(x, y);
  if (x.field_.is_rational()) return Scalar(x.field_, mpq_class(x.rational() * y.rational()));
  return Scalar(x.field_, detail::mul_mod(x.residue(), y.residue(), x.field_.modulus()));
}

Scalar operator/(const Scalar& x, const Scalar& y) {
  require_same_field(x, y);
  return x * y.inverse();
}

Scalar operator-(const Scalar& x) {
  if (x.field_.is_rational()) return Scalar(x.field_, mpq_class(-x.rational()));
  return Scalar(x.field_, detail::neg_mod(x.residue(), x.field_.modulus()));
}

bool operator==(const Scalar& x, const Scalar& y) {
  return x.field_ == y.field_ && x.value_ == y.value_;
}

Scalar scalar_arith(ArithOp op, const Scalar& x, const Scalar& y) {
  switch (op) {
    case ArithOp::Add:
      return x + y;
    case ArithOp::Sub:
      return x - y;
    case ArithOp::Mul:
      return x * y;
    case ArithOp::Neg:
      return -x;
  }
  throw UsageError("unknown arithmetic operation");
}

Scalar scalar_inv(const Scalar& x) { return x.inverse(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

Scalar parse_scalar(std::string_view text, const FieldSpec& field) {
  const std::string original(text);
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  } else if (text.starts_with("−")) {
    negative = true;
    text.remove_prefix(std::string_view("−").size());
  }

  std::string_view numerator = text;
  std::string_view denominator;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    numerator = text.substr(0, slash);
    denominator = text.substr(slash + 1);
    if (!field.is_rational()) {
      throw ParseError("fraction '" + original + "' not allowed over " + field.token());
    }
    if (!all_digits(denominator)) throw ParseError("malformed scalar '" + original + "'");
  }
  if (!all_digits(numerator)) throw ParseError("malformed scalar '" + original + "'");

  mpz_class num(std::string(numerator), 10);
  if (negative) num = -num;

  if (field.is_rational()) {
    mpz_class den(1);
    if (!denominator.empty()) {
      den = mpz_class(std::string(denominator), 10);
      if (den == 0) throw ParseError("zero denominator in '" + original + "'");
    }
    return Scalar::from_rational(mpq_class(num, den));
  }

  mpz_class r = num % field.modulus();
  if (r < 0) r += field.modulus();
  return Scalar::from_residue(field, static_cast<std::uint32_t>(r.get_ui()));
}

std::string format_scalar(const Scalar& x) {
  if (x.field().is_rational()) return x.rational().get_str(10);
  return std::to_string(x.residue());
}

}  // namespace lufact
