#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

namespace dgdef {

/// Raised when two operands belong to different coefficient fields.
class FieldMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Coefficient field: the rationals or a prime field F_p with p <= 2^31.
class Field {
public:
  constexpr Field() = default;

  static constexpr Field rationals() { return Field{}; }
  static Field prime(std::uint32_t p);

  constexpr bool is_rational() const { return p_ == 0; }
  constexpr bool is_prime() const { return p_ != 0; }
  /// 0 for the rationals.
  constexpr std::uint32_t characteristic() const { return p_; }

  std::string name() const;
  /// Accepts "Q" or "F<p>"/"GF(<p>)"/a bare prime.
  static Field parse(std::string_view text);

  friend constexpr bool operator==(Field a, Field b) { return a.p_ == b.p_; }

private:
  explicit constexpr Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_ = 0;
};

/// An exact field element. Rationals are kept in lowest terms with
/// positive denominator; residues live in [0, p).
class Scalar {
public:
  Scalar() = default;
  explicit Scalar(Field f) : field_(f) { init_zero(); }
  Scalar(Field f, long value);
  Scalar(Field f, long num, long den);
  Scalar(Field f, const mpq_class& q);

  static Scalar zero(Field f) { return Scalar(f); }
  static Scalar one(Field f) { return Scalar(f, 1); }

  Field field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  /// Residue in [0,p); precondition: prime field.
  std::uint32_t residue() const;
  /// Exact rational value; precondition: rational field.
  const mpq_class& rational() const;

  /// "p/q" with q omitted when 1 (rationals); decimal residue (prime fields).
  std::string to_string() const;
  /// Parses an integer or "p/q" literal into the given field.
  static Scalar parse(std::string_view text, Field f);

private:
  void init_zero();
  void check(const Scalar& o) const;

  Field field_{};
  std::variant<std::uint32_t, mpq_class> value_{mpq_class(0)};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// n! as a field element; throws if it is zero in the field.
Scalar factorial(Field f, unsigned n);

}  // namespace dgdef
