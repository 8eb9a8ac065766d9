#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "kuperberg/linalg.hpp"
#include "kuperberg/report.hpp"
#include "kuperberg/scalar.hpp"

namespace kuperberg {

struct ProductTerm {
  std::uint32_t index;
  Scalar coeff;
  friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
};

struct CoproductTerm {
  std::uint32_t left;
  std::uint32_t right;
  Scalar coeff;
  friend bool operator==(const CoproductTerm&, const CoproductTerm&) = default;
};

/// Sparse structure constants of an associative algebra: e_i e_j = sum_k m[i][j][k] e_k.
class MultTable {
 public:
  MultTable(const Field& field, std::size_t dim);

  /// Accumulates c into m[i][j][k]; entries that cancel to zero are dropped.
  void add(std::size_t i, std::size_t j, std::size_t k, const Scalar& c);

  const std::vector<ProductTerm>& product(std::size_t i, std::size_t j) const { return table_[i * dim_ + j]; }
  Vector multiply(const Vector& a, const Vector& b) const;

  std::size_t dim() const noexcept { return dim_; }
  const Field& field() const noexcept { return field_; }
  std::size_t nonzeros() const;

 private:
  Field field_;
  std::size_t dim_;
  std::vector<std::vector<ProductTerm>> table_;
};

using Comultiplication = std::vector<std::vector<CoproductTerm>>;

/// Everything needed to build a HopfAlgebra. The antipode matrix has S(e_j) as column j.
struct HopfData {
  std::string name;
  Field field;
  std::vector<std::string> basis;
  std::shared_ptr<const MultTable> mult;
  Vector unit;
  Comultiplication comult;
  Vector counit;
  Matrix antipode;
};

/// Finite-dimensional Hopf algebra given by structure tensors. Immutable once built.
///
/// Construction only checks that the tensor shapes agree (DimensionMismatch); the axioms are
/// checked by check_hopf_axioms so that deliberately corrupted algebras can be represented.
class HopfAlgebra {
 public:
  explicit HopfAlgebra(HopfData data);

  const std::string& name() const noexcept { return name_; }
  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  const std::vector<std::string>& basis_labels() const noexcept { return basis_; }

  const MultTable& mult() const noexcept { return *mult_; }
  const std::shared_ptr<const MultTable>& mult_ptr() const noexcept { return mult_; }
  const Vector& unit() const noexcept { return unit_; }
  const Comultiplication& comult() const noexcept { return comult_; }
  const std::vector<CoproductTerm>& comult(std::size_t i) const { return comult_.at(i); }
  const Vector& counit() const noexcept { return counit_; }
  const Matrix& antipode() const noexcept { return antipode_; }
  bool antipode_invertible() const noexcept { return antipode_inverse_.has_value(); }

  /// S^s as a matrix; throws singular_antipode for s < 0 when S is singular.
  Matrix antipode_matrix(long s) const;
  Vector antipode_power(long s, const Vector& x) const;

  Vector zero() const { return zero_vector(field_, dim()); }
  Vector basis_vector(std::size_t i) const { return unit_vector(field_, dim(), i); }
  Scalar scalar(long v) const { return Scalar::from_int(field_, v); }

  Vector multiply(const Vector& a, const Vector& b) const { return mult_->multiply(a, b); }
  Scalar counit_of(const Vector& x) const { return dot(counit_, x); }

  /// Matrices of x -> a x and x -> x a.
  Matrix left_multiplication(const Vector& a) const;
  Matrix right_multiplication(const Vector& a) const;

  /// Same algebra, new coalgebra structure; the multiplication table is shared.
  HopfAlgebra with_coalgebra(std::string name, Comultiplication comult, Matrix antipode) const;

  HopfData data() const;

 private:
  std::string name_;
  Field field_;
  std::vector<std::string> basis_;
  std::shared_ptr<const MultTable> mult_;
  Vector unit_;
  Comultiplication comult_;
  Vector counit_;
  Matrix antipode_;
  std::optional<Matrix> antipode_inverse_;
  std::vector<Matrix> positive_powers_;  // S^0 .. S^kCached
  std::vector<Matrix> negative_powers_;  // S^0 .. S^-kCached (empty when singular)
};

/// Sparse element of H^{(x)n}: a map from index tuples to nonzero coefficients.
class TensorElement {
 public:
  using Key = std::vector<std::uint32_t>;

  TensorElement(const Field& field, std::size_t dim, std::size_t arity);
  static TensorElement from_vector(const Field& field, const Vector& v);
  /// factors[0] (x) factors[1] (x) ...
  static TensorElement pure(const Field& field, const std::vector<Vector>& factors);
  /// 1 (x) ... (x) 1.
  static TensorElement unit(const HopfAlgebra& H, std::size_t arity);

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  std::size_t arity() const noexcept { return arity_; }
  const std::map<Key, Scalar>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Key& key, const Scalar& coeff);
  Scalar coefficient(const Key& key) const;
  /// Coordinates of an arity-1 element.
  Vector to_vector() const;

  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  TensorElement scaled(const Scalar& s) const;

  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    return a.arity_ == b.arity_ && a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  std::string to_string(const std::vector<std::string>& labels) const;

 private:
  void require_compatible(const TensorElement& other) const;

  Field field_;
  std::size_t dim_;
  std::size_t arity_;
  std::map<Key, Scalar> terms_;
};

TensorElement operator+(TensorElement a, const TensorElement& b);
TensorElement operator-(TensorElement a, const TensorElement& b);

/// a (x) b, arity adds.
TensorElement tensor_product(const TensorElement& a, const TensorElement& b);
/// Componentwise product in the algebra H^{(x)n}.
TensorElement multiply(const MultTable& m, const TensorElement& a, const TensorElement& b);
/// Applies a linear map to one leg.
TensorElement apply_leg(const Matrix& map, const TensorElement& t, std::size_t leg);
/// Applies the same linear map to every leg.
TensorElement apply_all(const Matrix& map, const TensorElement& t);
/// Result leg i is input leg order[i]; order must be a permutation.
TensorElement permute_legs(const TensorElement& t, const std::vector<std::size_t>& order);
/// Pairs a covector with one leg, removing it (arity must be at least 2).
TensorElement contract_leg(const Vector& covector, const TensorElement& t, std::size_t leg);
/// Replaces one leg by its n-fold coproduct; n = 0 applies the counit (removing the leg).
TensorElement coproduct_at(const HopfAlgebra& H, const TensorElement& t, std::size_t leg, std::size_t n);

/// One factor of a merged leg: either an input leg or a fixed element.
struct LegSource {
  static LegSource leg(std::size_t i) { return LegSource{i, {}}; }
  static LegSource constant(Vector v) { return LegSource{0, std::move(v)}; }
  std::size_t index;
  std::optional<Vector> element;
};

/// Output leg g is the ordered product of the listed factors; every input leg is used exactly once.
TensorElement merge_legs(const MultTable& m, const TensorElement& t,
                         const std::vector<std::vector<LegSource>>& groups);

/// Delta^n(x): n = 0 gives eps(x) 1 (arity 1), n = 1 gives x.
TensorElement iterated_coproduct(const HopfAlgebra& H, std::size_t n, const Vector& x);

/// Named pass/fail checks for every Hopf axiom; failures carry a witnessing basis tuple.
Report check_hopf_axioms(const HopfAlgebra& H);

struct IntegralPair {
  Vector Lambda;   // left integral
  Vector lambda;   // right cointegral (covector)
  Vector LambdaR;  // S(Lambda)
  Vector lambdaL;  // g -> lambda = lambda o S^{-1}, a left cointegral
  Vector lambdaS;  // lambda o S, the functional written "lambda S" in trace formulas
  Vector g;        // distinguished grouplike
  Vector g_inv;
  Vector alpha;    // distinguished character (covector)
};

IntegralPair compute_integrals(const HopfAlgebra& H);
/// Re-checks every integral invariant exactly.
Report check_integrals(const HopfAlgebra& H, const IntegralPair& P);

/// Matrix of T(x) = g^{-1} S^2(x) g.
Matrix tmap_matrix(const HopfAlgebra& H, const IntegralPair& P);
Vector tmap(const HopfAlgebra& H, const IntegralPair& P, const Vector& x);

/// How half-integer cointegrals are formed; see twisted_cointegral.
enum class CointegralConvention { g_action, antipode_inverse, antipode };
std::string_view to_string(CointegralConvention c);
CointegralConvention parse_convention(std::string_view text);

/// Convolution power of a character; negative powers use chi o S.
Vector character_power(const HopfAlgebra& H, const Vector& chi, long k);
/// f -> x = x_(1) f(x_(2)).
Vector hit(const HopfAlgebra& H, const Vector& covector, const Vector& x);

/// Lambda_{m-1/2} = alpha^{-m} -> S(Lambda). Throws not_half_integer.
Vector twisted_integral(const HopfAlgebra& H, const IntegralPair& P, const mpq_class& theta);
/// g_action: x -> lambda(x g^m).
/// antipode_inverse: x -> lambda(S^{-1}(x g^{m-1})), so m = 1 gives lambda o S^{-1}.
/// antipode: x -> lambda(S(x g^{m-1})), so m = 1 gives lambda o S.
/// The first two agree identically because lambda o S^{-1} = g -> lambda; the third differs for
/// non-unimodular algebras and is kept as a diagnostic alternative.
Vector twisted_cointegral(const HopfAlgebra& H, const IntegralPair& P, const mpq_class& theta,
                          CointegralConvention convention = CointegralConvention::g_action);

/// Coordinates drawn uniformly from {-2, ..., 2}.
Vector random_element(const Field& field, std::size_t dim, std::mt19937_64& rng);
Matrix random_matrix(const Field& field, std::size_t dim, std::mt19937_64& rng);

/// Checks the three trace identities on `trials` random (X, a), plus X = id and X = 0.
Report trace_identity_suite(const HopfAlgebra& H, const IntegralPair& P, int trials, std::uint64_t seed = 1);

/// Trace of X via lambda(S(X(Lambda_(2))) Lambda_(1)) and lambda(S(Lambda_(2)) X(Lambda_(1))).
std::pair<Scalar, Scalar> integral_traces(const HopfAlgebra& H, const IntegralPair& P, const Matrix& X);

}  // namespace kuperberg
