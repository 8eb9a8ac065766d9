#include "kuperberg/scalar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <ostream>
#include <sstream>

#include "kuperberg/error.hpp"

namespace kuperberg {

namespace {

constexpr std::uint32_t kMaxCyclotomic = 64;

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

// Integer polynomial exact division; divisor must be monic.
std::vector<long> divide_monic(std::vector<long> num, const std::vector<long>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    const long c = num[i];
    q[i - dn] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

const std::array<std::vector<long>, kMaxCyclotomic + 1>& cyclotomic_table() {
  static const auto table = [] {
    std::array<std::vector<long>, kMaxCyclotomic + 1> t;
    for (std::uint32_t n = 1; n <= kMaxCyclotomic; ++n) {
      std::vector<long> p(n + 1, 0);
      p[0] = -1;
      p[n] = 1;
      for (std::uint32_t d = 1; d < n; ++d) {
        if (n % d == 0) p = divide_monic(std::move(p), t[d]);
      }
      t[n] = std::move(p);
    }
    return t;
  }();
  return table;
}

using Poly = std::vector<mpq_class>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Reduce modulo Phi_n into exactly deg(Phi_n) coefficients.
Poly reduce_mod_phi(Poly p, std::uint32_t n) {
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t deg = phi.size() - 1;
  for (std::size_t i = p.size(); i-- > deg;) {
    if (p[i] == 0) continue;
    const mpq_class c = p[i];
    for (std::size_t j = 0; j <= deg; ++j) p[i - deg + j] -= c * phi[j];
  }
  p.resize(deg, mpq_class(0));
  return p;
}

// Extended Euclid over Q[x]: returns s with s*a == gcd (mod b); gcd must be constant.
Poly poly_inverse_mod(Poly a, std::uint32_t n) {
  const auto& phi_int = cyclotomic_polynomial(n);
  Poly b(phi_int.begin(), phi_int.end());
  trim(a);
  if (a.empty()) throw Error(ErrorCode::division_by_zero, "inverse of zero in cyclotomic field");
  Poly s0{mpq_class(1)}, s1;  // coefficients of a
  Poly r0 = a, r1 = b;
  // Invariant: r_i == s_i * a (mod phi)
  auto sub_mul = [](const Poly& x, const Poly& q, const Poly& y) {
    Poly prod(q.size() + y.size(), mpq_class(0));
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] += q[i] * y[j];
    Poly out = x;
    if (out.size() < prod.size()) out.resize(prod.size(), mpq_class(0));
    for (std::size_t i = 0; i < prod.size(); ++i) out[i] -= prod[i];
    trim(out);
    return out;
  };
  while (!r1.empty()) {
    Poly q, r = r0;
    trim(r);
    const std::size_t dr1 = r1.size() - 1;
    if (r.size() >= r1.size()) q.assign(r.size() - dr1, mpq_class(0));
    while (!r.empty() && r.size() >= r1.size()) {
      const std::size_t shift = r.size() - r1.size();
      const mpq_class c = r.back() / r1.back();
      q[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) r[shift + j] -= c * r1[j];
      trim(r);
    }
    Poly s2 = sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is the gcd; Phi_n irreducible and a != 0 mod Phi_n so it is a nonzero constant.
  if (r0.size() != 1) throw Error(ErrorCode::division_by_zero, "non-invertible cyclotomic element");
  for (auto& c : s0) c /= r0[0];
  return reduce_mod_phi(std::move(s0), n);
}

std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  base %= p;
  while (exp) {
    if (exp & 1) r = r * base % p;
    base = base * base % p;
    exp >>= 1;
  }
  return r;
}

std::uint64_t rational_to_residue(const mpq_class& q, std::uint32_t p) {
  mpz_class num = q.get_num() % p;
  if (num < 0) num += p;
  mpz_class den = q.get_den() % p;
  if (den == 0) throw Error(ErrorCode::division_by_zero, "denominator vanishes modulo " + std::to_string(p));
  const std::uint64_t n = num.get_ui();
  const std::uint64_t d = den.get_ui();
  return n * mod_pow(d, p - 2, p) % p;
}

mpq_class parse_rational(std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::parse_error, "empty rational");
  std::string s(text);
  if (s.front() == '+') s.erase(0, 1);
  mpq_class q;
  if (q.set_str(s, 10) != 0) throw Error(ErrorCode::parse_error, "bad rational '" + std::string(text) + "'");
  if (q.get_den() == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint32_t parse_uint(std::string_view text) {
  text = strip(text);
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::parse_error, "expected an unsigned integer, got '" + std::string(text) + "'");
  return v;
}

Poly parse_coefficient_list(std::string_view text) {
  text = strip(text);
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw Error(ErrorCode::parse_error, "expected [c0,c1,...], got '" + std::string(text) + "'");
  text = text.substr(1, text.size() - 2);
  Poly out;
  if (strip(text).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_rational(strip(text.substr(start, comma - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::division_by_zero: return "DivisionByZero";
    case ErrorCode::field_mismatch: return "FieldMismatch";
    case ErrorCode::bad_field: return "BadField";
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::singular_antipode: return "SingularAntipode";
    case ErrorCode::not_one_dimensional: return "NotOneDimensional";
    case ErrorCode::normalization_failure: return "NormalizationFailure";
    case ErrorCode::not_half_integer: return "NotHalfInteger";
    case ErrorCode::unknown_algebra: return "UnknownAlgebra";
    case ErrorCode::bad_params: return "BadParams";
    case ErrorCode::axiom_failure: return "AxiomFailure";
    case ErrorCode::not_invertible: return "NotInvertible";
    case ErrorCode::not_normalized: return "NotNormalized";
    case ErrorCode::cocycle_condition_fails: return "CocycleConditionFails";
    case ErrorCode::identity_violation: return "IdentityViolation";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::duplicate_point_id: return "DuplicatePointId";
    case ErrorCode::unknown_curve_ref: return "UnknownCurveRef";
    case ErrorCode::non_integral_exponent: return "NonIntegralExponent";
    case ErrorCode::invalid_diagram: return "InvalidDiagram";
    case ErrorCode::unknown_diagram: return "UnknownDiagram";
    case ErrorCode::plan_failure: return "PlanFailure";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::zero_entry: return "ZeroEntry";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p) || p >= (1u << 31)) throw Error(ErrorCode::bad_field, std::to_string(p) + " is not a supported prime");
  return Field(FieldKind::prime, p);
}

Field Field::cyclotomic(std::uint32_t n) {
  if (n < 1 || n > kMaxCyclotomic)
    throw Error(ErrorCode::bad_field, "cyclotomic order must be in [1, 64], got " + std::to_string(n));
  return Field(FieldKind::cyclotomic, n);
}

Field Field::parse(std::string_view text) {
  text = strip(text);
  if (text == "rational" || text == "Q") return rational();
  auto split = text.find_first_of(" :");
  if (split == std::string_view::npos) throw Error(ErrorCode::bad_field, "unknown field '" + std::string(text) + "'");
  auto head = text.substr(0, split);
  auto arg = text.substr(split + 1);
  if (head == "prime") return prime(parse_uint(arg));
  if (head == "cyclotomic") return cyclotomic(parse_uint(arg));
  throw Error(ErrorCode::bad_field, "unknown field '" + std::string(text) + "'");
}

std::size_t Field::degree() const {
  return kind_ == FieldKind::cyclotomic ? cyclotomic_polynomial(param_).size() - 1 : 1;
}

std::string Field::to_string() const {
  switch (kind_) {
    case FieldKind::rational: return "rational";
    case FieldKind::prime: return "prime " + std::to_string(param_);
    case FieldKind::cyclotomic: return "cyclotomic " + std::to_string(param_);
  }
  return {};
}

const std::vector<long>& cyclotomic_polynomial(std::uint32_t n) {
  if (n < 1 || n > kMaxCyclotomic) throw Error(ErrorCode::bad_field, "cyclotomic order out of range");
  return cyclotomic_table()[n];
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::zero(const Field& field) { return from_int(field, 0); }
Scalar Scalar::one(const Field& field) { return from_int(field, 1); }

Scalar Scalar::from_int(const Field& field, long value) { return from_rational(field, mpq_class(value)); }

Scalar Scalar::from_rational(const Field& field, const mpq_class& value) {
  switch (field.kind()) {
    case FieldKind::rational: {
      mpq_class v = value;
      v.canonicalize();
      return Scalar(field, std::move(v));
    }
    case FieldKind::prime: return Scalar(field, rational_to_residue(value, field.parameter()));
    case FieldKind::cyclotomic: {
      Poly p(field.degree(), mpq_class(0));
      p[0] = value;
      p[0].canonicalize();
      return Scalar(field, std::move(p));
    }
  }
  return {};
}

Scalar Scalar::zeta(const Field& field) {
  if (field.kind() != FieldKind::cyclotomic)
    throw Error(ErrorCode::bad_field, "zeta requires a cyclotomic field");
  Poly x{mpq_class(0), mpq_class(1)};
  return Scalar(field, reduce_mod_phi(std::move(x), field.parameter()));
}

void Scalar::require_same_field(const Scalar& other) const {
  if (!(field_ == other.field_))
    throw Error(ErrorCode::field_mismatch, field_.to_string() + " vs " + other.field_.to_string());
}

bool Scalar::is_zero() const {
  switch (value_.index()) {
    case 0: return sgn(std::get<0>(value_)) == 0;
    case 1: return std::get<1>(value_) == 0;
    default:
      for (const auto& c : std::get<2>(value_))
        if (sgn(c) != 0) return false;
      return true;
  }
}

bool Scalar::is_one() const { return *this == one(field_); }

Scalar Scalar::operator-() const {
  Scalar r = *this;
  switch (r.value_.index()) {
    case 0: std::get<0>(r.value_) = -std::get<0>(r.value_); break;
    case 1: {
      auto& v = std::get<1>(r.value_);
      if (v != 0) v = field_.parameter() - v;
      break;
    }
    default:
      for (auto& c : std::get<2>(r.value_)) c = -c;
  }
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  require_same_field(other);
  switch (value_.index()) {
    case 0: std::get<0>(value_) += std::get<0>(other.value_); break;
    case 1: {
      auto& v = std::get<1>(value_);
      v = (v + std::get<1>(other.value_)) % field_.parameter();
      break;
    }
    default: {
      auto& a = std::get<2>(value_);
      const auto& b = std::get<2>(other.value_);
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  require_same_field(other);
  switch (value_.index()) {
    case 0: std::get<0>(value_) *= std::get<0>(other.value_); break;
    case 1: {
      auto& v = std::get<1>(value_);
      v = v * std::get<1>(other.value_) % field_.parameter();
      break;
    }
    default: {
      const auto& a = std::get<2>(value_);
      const auto& b = std::get<2>(other.value_);
      Poly prod(a.size() + b.size() - 1, mpq_class(0));
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (sgn(b[j]) == 0) continue;
          prod[i + j] += a[i] * b[j];
        }
      }
      value_ = reduce_mod_phi(std::move(prod), field_.parameter());
    }
  }
  return *this;
}

void Scalar::add_product(const Scalar& b, const Scalar& c) {
  if (value_.index() == 0 && b.value_.index() == 0 && c.value_.index() == 0 && field_ == b.field_ &&
      field_ == c.field_) {
    mpq_class t = std::get<0>(b.value_) * std::get<0>(c.value_);
    std::get<0>(value_) += t;
    return;
  }
  *this += b * c;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::division_by_zero, "inverse of zero");
  switch (value_.index()) {
    case 0: return Scalar(field_, mpq_class(1) / std::get<0>(value_));
    case 1: return Scalar(field_, mod_pow(std::get<1>(value_), field_.parameter() - 2, field_.parameter()));
    default: return Scalar(field_, poly_inverse_mod(std::get<2>(value_), field_.parameter()));
  }
}

Scalar& Scalar::operator/=(const Scalar& other) {
  require_same_field(other);
  return *this *= other.inverse();
}

Scalar Scalar::pow(long exponent) const {
  Scalar base = exponent < 0 ? inverse() : *this;
  unsigned long e = exponent < 0 ? static_cast<unsigned long>(-exponent) : static_cast<unsigned long>(exponent);
  Scalar r = one(field_);
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) { return a.field_ == b.field_ && a.value_ == b.value_; }

std::string Scalar::to_string() const {
  switch (value_.index()) {
    case 0: return std::get<0>(value_).get_str();
    case 1: return std::to_string(std::get<1>(value_)) + " mod " + std::to_string(field_.parameter());
    default: {
      std::string s = "[";
      const auto& c = std::get<2>(value_);
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += ',';
        s += c[i].get_str();
      }
      return s + "] zeta " + std::to_string(field_.parameter());
    }
  }
}

Scalar Scalar::parse(std::string_view text) {
  text = strip(text);
  if (auto pos = text.find(" mod "); pos != std::string_view::npos) {
    const Field f = Field::prime(parse_uint(text.substr(pos + 5)));
    return from_rational(f, parse_rational(strip(text.substr(0, pos))));
  }
  if (auto pos = text.find("zeta"); pos != std::string_view::npos) {
    const std::uint32_t n = parse_uint(text.substr(pos + 4));
    Field::cyclotomic(n);
    const Poly c = parse_coefficient_list(text.substr(0, pos));
    return cyclotomic_reduce(c, n);
  }
  return from_rational(Field::rational(), parse_rational(text));
}

Scalar Scalar::parse_in(const Field& field, std::string_view token) {
  token = strip(token);
  if (!token.empty() && token.front() == '[') {
    if (field.kind() != FieldKind::cyclotomic)
      throw Error(ErrorCode::field_mismatch, "coefficient list outside a cyclotomic field");
    return cyclotomic_reduce(parse_coefficient_list(token), field.parameter());
  }
  return from_rational(field, parse_rational(token));
}

const mpq_class& Scalar::rational_value() const {
  if (value_.index() != 0) throw Error(ErrorCode::field_mismatch, "not a rational scalar");
  return std::get<0>(value_);
}

std::uint64_t Scalar::residue() const {
  if (value_.index() != 1) throw Error(ErrorCode::field_mismatch, "not a prime-field scalar");
  return std::get<1>(value_);
}

const std::vector<mpq_class>& Scalar::coefficients() const {
  if (value_.index() != 2) throw Error(ErrorCode::field_mismatch, "not a cyclotomic scalar");
  return std::get<2>(value_);
}

Scalar Scalar::canonicalized() const {
  Scalar r = *this;
  switch (r.value_.index()) {
    case 0: std::get<0>(r.value_).canonicalize(); break;
    case 1: std::get<1>(r.value_) %= field_.parameter(); break;
    default: {
      auto& c = std::get<2>(r.value_);
      for (auto& x : c) x.canonicalize();
      r.value_ = reduce_mod_phi(std::move(c), field_.parameter());
    }
  }
  return r;
}

Scalar cyclotomic_reduce(std::span<const mpq_class> coefficients, std::uint32_t n) {
  const Field f = Field::cyclotomic(n);
  Poly p(coefficients.begin(), coefficients.end());
  for (auto& c : p) c.canonicalize();
  return Scalar(f, reduce_mod_phi(std::move(p), n));
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }
std::ostream& operator<<(std::ostream& os, const Field& f) { return os << f.to_string(); }

}  // namespace kuperberg
