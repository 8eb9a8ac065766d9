#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kuperberg {

enum class FieldKind : std::uint8_t { rational, prime, cyclotomic };

/// An exact base field: Q, F_p, or Q(zeta_n) = Q[x]/Phi_n(x).
class Field {
 public:
  Field() = default;

  static Field rational() { return Field{}; }
  /// Throws bad_field unless p is a prime below 2^31.
  static Field prime(std::uint32_t p);
  /// Throws bad_field unless 1 <= n <= 64.
  static Field cyclotomic(std::uint32_t n);

  /// Accepts "rational", "prime P", "prime:P", "cyclotomic N", "cyclotomic:N".
  static Field parse(std::string_view text);

  FieldKind kind() const noexcept { return kind_; }
  std::uint32_t parameter() const noexcept { return param_; }
  /// Characteristic (0 for Q and cyclotomic fields).
  std::uint32_t characteristic() const noexcept { return kind_ == FieldKind::prime ? param_ : 0; }
  /// Dimension over the prime field; deg Phi_n for cyclotomic fields.
  std::size_t degree() const;

  std::string to_string() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(FieldKind kind, std::uint32_t param) : kind_(kind), param_(param) {}

  FieldKind kind_ = FieldKind::rational;
  std::uint32_t param_ = 0;
};

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
const std::vector<long>& cyclotomic_polynomial(std::uint32_t n);

/// Exact element of a Field, always kept in canonical form.
class Scalar {
 public:
  /// Rational zero.
  Scalar() : value_(mpq_class(0)) {}

  static Scalar zero(const Field& field);
  static Scalar one(const Field& field);
  static Scalar from_int(const Field& field, long value);
  /// Image of a rational number; throws division_by_zero if the denominator vanishes mod p.
  static Scalar from_rational(const Field& field, const mpq_class& value);
  /// The class of x in Q[x]/Phi_n(x); throws bad_field outside cyclotomic fields.
  static Scalar zeta(const Field& field);

  const Field& field() const noexcept { return field_; }

  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(long exponent) const;

  /// a += b * c without temporaries where possible.
  void add_product(const Scalar& b, const Scalar& c);

  friend bool operator==(const Scalar& a, const Scalar& b);

  /// "a/b" (or "a"), "r mod p", "[c0,c1,...] zeta n".
  std::string to_string() const;
  /// Inverse of to_string; the field is determined by the text.
  static Scalar parse(std::string_view text);
  /// Parse a coefficient token ("a/b" or "[c0,...]") into a known field.
  static Scalar parse_in(const Field& field, std::string_view token);

  /// Rational value; only valid for rational fields.
  const mpq_class& rational_value() const;
  /// Residue in [0, p); only valid for prime fields.
  std::uint64_t residue() const;
  /// Coefficients (length deg Phi_n); only valid for cyclotomic fields.
  const std::vector<mpq_class>& coefficients() const;

  /// Re-establish canonical form. Arithmetic never needs this; exposed for tests.
  Scalar canonicalized() const;

 private:
  using Value = std::variant<mpq_class, std::uint64_t, std::vector<mpq_class>>;

  Scalar(const Field& field, Value value) : field_(field), value_(std::move(value)) {}

  void require_same_field(const Scalar& other) const;

  friend Scalar cyclotomic_reduce(std::span<const mpq_class> coefficients, std::uint32_t n);

  Field field_;
  Value value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);
std::ostream& operator<<(std::ostream& os, const Field& f);

/// Reduce a polynomial with rational coefficients modulo Phi_n.
Scalar cyclotomic_reduce(std::span<const mpq_class> coefficients, std::uint32_t n);

}  // namespace kuperberg
