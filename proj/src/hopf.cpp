#include "kuperberg/hopf.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "kuperberg/error.hpp"

namespace kuperberg {

namespace {

constexpr long kCachedPowers = 8;

std::string label_of(const HopfAlgebra& H, std::size_t i) { return H.basis_labels()[i]; }

std::string vector_string(const HopfAlgebra& H, const Vector& v) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << v[i] << ")*" << label_of(H, i);
  }
  if (first) os << '0';
  return os.str();
}

}  // namespace

// ------------------------------------------------------------------ MultTable

MultTable::MultTable(const Field& field, std::size_t dim) : field_(field), dim_(dim), table_(dim * dim) {}

void MultTable::add(std::size_t i, std::size_t j, std::size_t k, const Scalar& c) {
  if (i >= dim_ || j >= dim_ || k >= dim_) throw Error(ErrorCode::dimension_mismatch, "structure constant index");
  if (c.is_zero()) return;
  auto& list = table_[i * dim_ + j];
  for (auto it = list.begin(); it != list.end(); ++it) {
    if (it->index != k) continue;
    it->coeff += c;
    if (it->coeff.is_zero()) list.erase(it);
    return;
  }
  list.push_back({static_cast<std::uint32_t>(k), c});
}

Vector MultTable::multiply(const Vector& a, const Vector& b) const {
  if (a.size() != dim_ || b.size() != dim_) throw Error(ErrorCode::dimension_mismatch, "algebra product");
  Vector out = zero_vector(field_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (b[j].is_zero()) continue;
      const Scalar c = a[i] * b[j];
      for (const auto& t : product(i, j)) out[t.index].add_product(c, t.coeff);
    }
  }
  return out;
}

std::size_t MultTable::nonzeros() const {
  std::size_t n = 0;
  for (const auto& l : table_) n += l.size();
  return n;
}

// ---------------------------------------------------------------- HopfAlgebra

HopfAlgebra::HopfAlgebra(HopfData data)
    : name_(std::move(data.name)),
      field_(data.field),
      basis_(std::move(data.basis)),
      mult_(std::move(data.mult)),
      unit_(std::move(data.unit)),
      comult_(std::move(data.comult)),
      counit_(std::move(data.counit)),
      antipode_(std::move(data.antipode)) {
  const std::size_t n = basis_.size();
  auto mismatch = [](const std::string& what) { throw Error(ErrorCode::dimension_mismatch, what); };
  if (n == 0) mismatch("empty basis");
  if (!mult_ || mult_->dim() != n) mismatch("multiplication table size differs from basis size");
  if (!(mult_->field() == field_)) throw Error(ErrorCode::field_mismatch, "multiplication table field");
  if (unit_.size() != n) mismatch("unit length");
  if (counit_.size() != n) mismatch("counit length");
  if (comult_.size() != n) mismatch("comultiplication length");
  for (const auto& terms : comult_)
    for (const auto& t : terms)
      if (t.left >= n || t.right >= n) mismatch("comultiplication index out of range");
  if (antipode_.rows() != n || antipode_.cols() != n) mismatch("antipode shape");

  antipode_inverse_ = antipode_.inverse();
  positive_powers_.push_back(Matrix::identity(field_, n));
  for (long k = 1; k <= kCachedPowers; ++k) positive_powers_.push_back(positive_powers_.back() * antipode_);
  if (antipode_inverse_) {
    negative_powers_.push_back(Matrix::identity(field_, n));
    for (long k = 1; k <= kCachedPowers; ++k)
      negative_powers_.push_back(negative_powers_.back() * *antipode_inverse_);
  }
}

Matrix HopfAlgebra::antipode_matrix(long s) const {
  if (s >= 0) {
    if (s <= kCachedPowers) return positive_powers_[static_cast<std::size_t>(s)];
    return antipode_.pow(s);
  }
  if (!antipode_inverse_) throw Error(ErrorCode::singular_antipode, "S is not invertible in " + name_);
  if (-s <= kCachedPowers) return negative_powers_[static_cast<std::size_t>(-s)];
  return antipode_inverse_->pow(-s);
}

Vector HopfAlgebra::antipode_power(long s, const Vector& x) const {
  if (s == 0) return x;
  if (s == 1) return antipode_.apply(x);
  return antipode_matrix(s).apply(x);
}

Matrix HopfAlgebra::left_multiplication(const Vector& a) const {
  Matrix m(field_, dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const Vector col = multiply(a, basis_vector(j));
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
  }
  return m;
}

Matrix HopfAlgebra::right_multiplication(const Vector& a) const {
  Matrix m(field_, dim(), dim());
  for (std::size_t j = 0; j < dim(); ++j) {
    const Vector col = multiply(basis_vector(j), a);
    for (std::size_t i = 0; i < dim(); ++i) m(i, j) = col[i];
  }
  return m;
}

HopfAlgebra HopfAlgebra::with_coalgebra(std::string name, Comultiplication comult, Matrix antipode) const {
  HopfData d;
  d.name = std::move(name);
  d.field = field_;
  d.basis = basis_;
  d.mult = mult_;
  d.unit = unit_;
  d.comult = std::move(comult);
  d.counit = counit_;
  d.antipode = std::move(antipode);
  return HopfAlgebra(std::move(d));
}

HopfData HopfAlgebra::data() const {
  return HopfData{name_, field_, basis_, mult_, unit_, comult_, counit_, antipode_};
}

// -------------------------------------------------------------- TensorElement

TensorElement::TensorElement(const Field& field, std::size_t dim, std::size_t arity)
    : field_(field), dim_(dim), arity_(arity) {
  if (arity == 0) throw Error(ErrorCode::dimension_mismatch, "tensor arity must be positive");
}

TensorElement TensorElement::from_vector(const Field& field, const Vector& v) {
  TensorElement t(field, v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) t.terms_.emplace(Key{static_cast<std::uint32_t>(i)}, v[i]);
  return t;
}

TensorElement TensorElement::pure(const Field& field, const std::vector<Vector>& factors) {
  if (factors.empty()) throw Error(ErrorCode::dimension_mismatch, "pure tensor needs a factor");
  TensorElement t = from_vector(field, factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i) t = tensor_product(t, from_vector(field, factors[i]));
  return t;
}

TensorElement TensorElement::unit(const HopfAlgebra& H, std::size_t arity) {
  return pure(H.field(), std::vector<Vector>(arity, H.unit()));
}

void TensorElement::add_term(const Key& key, const Scalar& coeff) {
  if (key.size() != arity_) throw Error(ErrorCode::dimension_mismatch, "tensor key arity");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(key, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar TensorElement::coefficient(const Key& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

Vector TensorElement::to_vector() const {
  if (arity_ != 1) throw Error(ErrorCode::dimension_mismatch, "to_vector needs arity 1");
  Vector v = zero_vector(field_, dim_);
  for (const auto& [k, c] : terms_) v[k[0]] = c;
  return v;
}

void TensorElement::require_compatible(const TensorElement& other) const {
  if (arity_ != other.arity_ || dim_ != other.dim_)
    throw Error(ErrorCode::dimension_mismatch, "tensor shapes differ");
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  require_compatible(other);
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) {
  require_compatible(other);
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

TensorElement TensorElement::scaled(const Scalar& s) const {
  TensorElement out(field_, dim_, arity_);
  if (s.is_zero()) return out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * s);
  return out;
}

std::string TensorElement::to_string(const std::vector<std::string>& labels) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << c << ")*";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) os << "(x)";
      os << (k[i] < labels.size() ? labels[k[i]] : "e" + std::to_string(k[i]));
    }
  }
  return os.str();
}

TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }

TensorElement tensor_product(const TensorElement& a, const TensorElement& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::dimension_mismatch, "tensor product of different algebras");
  TensorElement out(a.field(), a.dim(), a.arity() + b.arity());
  TensorElement::Key key;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      key = ka;
      key.insert(key.end(), kb.begin(), kb.end());
      out.add_term(key, ca * cb);
    }
  return out;
}

TensorElement multiply(const MultTable& m, const TensorElement& a, const TensorElement& b) {
  if (a.arity() != b.arity() || a.dim() != b.dim() || a.dim() != m.dim())
    throw Error(ErrorCode::dimension_mismatch, "componentwise product");
  const std::size_t n = a.arity();
  TensorElement out(a.field(), a.dim(), n);
  TensorElement::Key key(n);
  std::function<void(const TensorElement::Key&, const TensorElement::Key&, std::size_t, const Scalar&)> expand =
      [&](const auto& ka, const auto& kb, std::size_t leg, const Scalar& coeff) {
        if (leg == n) {
          out.add_term(key, coeff);
          return;
        }
        for (const auto& t : m.product(ka[leg], kb[leg])) {
          key[leg] = t.index;
          expand(ka, kb, leg + 1, coeff * t.coeff);
        }
      };
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) expand(ka, kb, 0, ca * cb);
  return out;
}

TensorElement apply_leg(const Matrix& map, const TensorElement& t, std::size_t leg) {
  if (leg >= t.arity() || map.cols() != t.dim() || map.rows() != t.dim())
    throw Error(ErrorCode::dimension_mismatch, "apply_leg");
  TensorElement out(t.field(), t.dim(), t.arity());
  for (const auto& [k, c] : t.terms()) {
    TensorElement::Key key = k;
    for (std::size_t r = 0; r < map.rows(); ++r) {
      const Scalar& m = map(r, k[leg]);
      if (m.is_zero()) continue;
      key[leg] = static_cast<std::uint32_t>(r);
      out.add_term(key, c * m);
    }
  }
  return out;
}

TensorElement apply_all(const Matrix& map, const TensorElement& t) {
  TensorElement out = t;
  for (std::size_t leg = 0; leg < t.arity(); ++leg) out = apply_leg(map, out, leg);
  return out;
}

TensorElement permute_legs(const TensorElement& t, const std::vector<std::size_t>& order) {
  if (order.size() != t.arity()) throw Error(ErrorCode::dimension_mismatch, "permutation length");
  std::vector<bool> seen(order.size(), false);
  for (auto o : order) {
    if (o >= order.size() || seen[o]) throw Error(ErrorCode::bad_params, "not a permutation");
    seen[o] = true;
  }
  TensorElement out(t.field(), t.dim(), t.arity());
  TensorElement::Key key(order.size());
  for (const auto& [k, c] : t.terms()) {
    for (std::size_t i = 0; i < order.size(); ++i) key[i] = k[order[i]];
    out.add_term(key, c);
  }
  return out;
}

TensorElement contract_leg(const Vector& covector, const TensorElement& t, std::size_t leg) {
  if (t.arity() < 2 || leg >= t.arity() || covector.size() != t.dim())
    throw Error(ErrorCode::dimension_mismatch, "contract_leg");
  TensorElement out(t.field(), t.dim(), t.arity() - 1);
  for (const auto& [k, c] : t.terms()) {
    const Scalar& f = covector[k[leg]];
    if (f.is_zero()) continue;
    TensorElement::Key key = k;
    key.erase(key.begin() + static_cast<std::ptrdiff_t>(leg));
    out.add_term(key, c * f);
  }
  return out;
}

namespace {

// Replaces leg `leg` by the legs of images[index] (a tensor per basis index).
TensorElement splice(const TensorElement& t, std::size_t leg, const std::vector<TensorElement>& images,
                     std::size_t image_arity) {
  TensorElement out(t.field(), t.dim(), t.arity() - 1 + image_arity);
  TensorElement::Key key;
  for (const auto& [k, c] : t.terms()) {
    for (const auto& [ik, ic] : images[k[leg]].terms()) {
      key.assign(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(leg));
      key.insert(key.end(), ik.begin(), ik.end());
      key.insert(key.end(), k.begin() + static_cast<std::ptrdiff_t>(leg) + 1, k.end());
      out.add_term(key, c * ic);
    }
  }
  return out;
}

TensorElement basis_coproduct(const HopfAlgebra& H, std::size_t i) {
  TensorElement t(H.field(), H.dim(), 2);
  for (const auto& term : H.comult(i)) t.add_term({term.left, term.right}, term.coeff);
  return t;
}

}  // namespace

TensorElement coproduct_at(const HopfAlgebra& H, const TensorElement& t, std::size_t leg, std::size_t n) {
  if (leg >= t.arity() || t.dim() != H.dim()) throw Error(ErrorCode::dimension_mismatch, "coproduct_at");
  if (n == 0) {
    if (t.arity() >= 2) return contract_leg(H.counit(), t, leg);
    Scalar s = Scalar::zero(H.field());
    for (const auto& [k, c] : t.terms()) s.add_product(c, H.counit()[k[0]]);
    return TensorElement::from_vector(H.field(), scale(s, H.unit()));
  }
  if (n == 1) return t;
  std::vector<TensorElement> images;
  images.reserve(H.dim());
  for (std::size_t i = 0; i < H.dim(); ++i) images.push_back(iterated_coproduct(H, n, H.basis_vector(i)));
  return splice(t, leg, images, n);
}

TensorElement iterated_coproduct(const HopfAlgebra& H, std::size_t n, const Vector& x) {
  if (n == 0) return TensorElement::from_vector(H.field(), scale(H.counit_of(x), H.unit()));
  TensorElement t = TensorElement::from_vector(H.field(), x);
  if (n == 1) return t;
  std::vector<TensorElement> delta;
  delta.reserve(H.dim());
  for (std::size_t i = 0; i < H.dim(); ++i) delta.push_back(basis_coproduct(H, i));
  // Delta^{k+1} = (id (x) Delta^k) o Delta: keep splitting the last leg.
  for (std::size_t k = 1; k < n; ++k) t = splice(t, t.arity() - 1, delta, 2);
  return t;
}

TensorElement merge_legs(const MultTable& m, const TensorElement& t,
                         const std::vector<std::vector<LegSource>>& groups) {
  std::vector<int> uses(t.arity(), 0);
  for (const auto& g : groups) {
    if (g.empty()) throw Error(ErrorCode::bad_params, "empty merge group");
    for (const auto& s : g)
      if (!s.element) {
        if (s.index >= t.arity()) throw Error(ErrorCode::dimension_mismatch, "merge leg out of range");
        ++uses[s.index];
      }
  }
  for (int u : uses)
    if (u != 1) throw Error(ErrorCode::bad_params, "each leg must be merged exactly once");

  const std::size_t dim = t.dim();
  TensorElement out(t.field(), dim, groups.size());
  std::vector<Vector> factors(groups.size());
  for (const auto& [k, c] : t.terms()) {
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      Vector acc;
      for (const auto& s : groups[gi]) {
        Vector v = s.element ? *s.element : unit_vector(t.field(), dim, k[s.index]);
        acc = acc.empty() ? std::move(v) : m.multiply(acc, v);
      }
      factors[gi] = std::move(acc);
    }
    out += TensorElement::pure(t.field(), factors).scaled(c);
  }
  return out;
}

// --------------------------------------------------------------------- Axioms

Report check_hopf_axioms(const HopfAlgebra& H) {
  Report report;
  const std::size_t n = H.dim();
  const Field& F = H.field();
  auto e = [&](std::size_t i) { return H.basis_vector(i); };
  auto lab = [&](std::size_t i) { return label_of(H, i); };

  {
    std::string witness;
    for (std::size_t i = 0; i < n && witness.empty(); ++i)
      for (std::size_t j = 0; j < n && witness.empty(); ++j) {
        const Vector ij = H.multiply(e(i), e(j));
        for (std::size_t k = 0; k < n; ++k)
          if (H.multiply(ij, e(k)) != H.multiply(e(i), H.multiply(e(j), e(k)))) {
            witness = "(" + lab(i) + ", " + lab(j) + ", " + lab(k) + ")";
            break;
          }
      }
    report.record("associativity", witness.empty(), witness);
  }
  {
    std::string witness;
    for (std::size_t i = 0; i < n && witness.empty(); ++i)
      if (H.multiply(H.unit(), e(i)) != e(i) || H.multiply(e(i), H.unit()) != e(i)) witness = lab(i);
    report.record("unit", witness.empty(), witness);
  }

  std::vector<TensorElement> delta;
  for (std::size_t i = 0; i < n; ++i) delta.push_back(iterated_coproduct(H, 2, e(i)));
  {
    std::string witness;
    for (std::size_t i = 0; i < n && witness.empty(); ++i)
      if (coproduct_at(H, delta[i], 0, 2) != coproduct_at(H, delta[i], 1, 2)) witness = lab(i);
    report.record("coassociativity", witness.empty(), witness);
  }
  {
    std::string witness;
    for (std::size_t i = 0; i < n && witness.empty(); ++i) {
      const TensorElement x = TensorElement::from_vector(F, e(i));
      if (contract_leg(H.counit(), delta[i], 0) != x || contract_leg(H.counit(), delta[i], 1) != x) witness = lab(i);
    }
    report.record("counit", witness.empty(), witness);
  }
  {
    std::string witness;
    for (std::size_t i = 0; i < n && witness.empty(); ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const TensorElement lhs = iterated_coproduct(H, 2, H.multiply(e(i), e(j)));
        if (lhs != multiply(H.mult(), delta[i], delta[j])) {
          witness = "(" + lab(i) + ", " + lab(j) + ")";
          break;
        }
      }
    report.record("comultiplication multiplicative", witness.empty(), witness);
  }
  report.record("comultiplication unital", iterated_coproduct(H, 2, H.unit()) == TensorElement::unit(H, 2),
                "Delta(1) != 1(x)1");
  {
    std::string witness;
    for (std::size_t i = 0; i < n && witness.empty(); ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (H.counit_of(H.multiply(e(i), e(j))) != H.counit()[i] * H.counit()[j]) {
          witness = "(" + lab(i) + ", " + lab(j) + ")";
          break;
        }
    report.record("counit multiplicative", witness.empty(), witness);
  }
  report.record("counit unital", H.counit_of(H.unit()).is_one(), "eps(1) != 1");
  {
    std::string left, right;
    for (std::size_t i = 0; i < n; ++i) {
      Vector l = H.zero(), r = H.zero();
      for (const auto& t : H.comult(i)) {
        l = add(l, scale(t.coeff, H.multiply(H.antipode().column(t.left), e(t.right))));
        r = add(r, scale(t.coeff, H.multiply(e(t.left), H.antipode().column(t.right))));
      }
      const Vector expected = scale(H.counit()[i], H.unit());
      if (left.empty() && l != expected) left = lab(i);
      if (right.empty() && r != expected) right = lab(i);
    }
    report.record("antipode left", left.empty(), left);
    report.record("antipode right", right.empty(), right);
  }
  report.record("antipode invertible", H.antipode_invertible(), "S is singular");
  return report;
}

// ------------------------------------------------------------------ Integrals

namespace {

std::size_t first_nonzero(const Vector& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) return i;
  return v.size();
}

Vector power_of(const HopfAlgebra& H, const Vector& g, const Vector& g_inv, long m) {
  Vector r = H.unit();
  const Vector& base = m >= 0 ? g : g_inv;
  for (long k = 0; k < (m >= 0 ? m : -m); ++k) r = H.multiply(r, base);
  return r;
}

long half_integer_shift(const mpq_class& theta) {
  const mpq_class m = theta + mpq_class(1, 2);
  if (m.get_den() != 1 || !m.get_num().fits_slong_p())
    throw Error(ErrorCode::not_half_integer, theta.get_str() + " is not a half-integer");
  return m.get_num().get_si();
}

}  // namespace

IntegralPair compute_integrals(const HopfAlgebra& H) {
  const std::size_t n = H.dim();
  const Field& F = H.field();

  Matrix left_conditions(F, n * n, n);
  for (std::size_t a = 0; a < n; ++a) {
    const Matrix La = H.left_multiplication(H.basis_vector(a));
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Scalar v = La(r, c);
        if (r == c) v -= H.counit()[a];
        left_conditions(a * n + r, c) = v;
      }
  }
  auto lambda_space = left_conditions.nullspace();
  if (lambda_space.size() != 1)
    throw Error(ErrorCode::not_one_dimensional,
                "space of left integrals has dimension " + std::to_string(lambda_space.size()));

  Matrix right_conditions(F, n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& t : H.comult(i)) right_conditions(i * n + t.right, t.left) += t.coeff;
    for (std::size_t k = 0; k < n; ++k) right_conditions(i * n + k, i) -= H.unit()[k];
  }
  auto co_space = right_conditions.nullspace();
  if (co_space.size() != 1)
    throw Error(ErrorCode::not_one_dimensional,
                "space of right cointegrals has dimension " + std::to_string(co_space.size()));

  IntegralPair P;
  P.Lambda = std::move(lambda_space.front());
  const std::size_t pivot = first_nonzero(P.Lambda);
  P.Lambda = scale(P.Lambda[pivot].inverse(), P.Lambda);
  P.lambda = std::move(co_space.front());
  const Scalar pairing = dot(P.lambda, P.Lambda);
  if (pairing.is_zero()) throw Error(ErrorCode::normalization_failure, "lambda(Lambda) = 0");
  P.lambda = scale(pairing.inverse(), P.lambda);

  P.LambdaR = H.antipode().apply(P.Lambda);
  P.lambdaS = H.antipode().apply_transpose(P.lambda);

  P.alpha = zero_vector(F, n);
  for (std::size_t a = 0; a < n; ++a) P.alpha[a] = H.multiply(P.Lambda, H.basis_vector(a))[pivot];

  const std::size_t x = first_nonzero(P.lambda);
  P.g = H.zero();
  // x_(1) lambda(x_(2)) = lambda(x) g; the other leg gives lambda(x) 1 by definition.
  for (const auto& t : H.comult(x)) P.g[t.left].add_product(t.coeff, P.lambda[t.right]);
  P.g = scale(P.lambda[x].inverse(), P.g);
  P.g_inv = H.antipode().apply(P.g);
  if (H.multiply(P.g, P.g_inv) != H.unit())
    throw Error(ErrorCode::axiom_failure, "distinguished grouplike is not invertible");
  P.lambdaL = H.right_multiplication(P.g).apply_transpose(P.lambda);
  return P;
}

Report check_integrals(const HopfAlgebra& H, const IntegralPair& P) {
  Report report;
  const std::size_t n = H.dim();
  auto lab = [&](std::size_t i) { return label_of(H, i); };
  std::string left, right, alpha_w, g_w;
  for (std::size_t a = 0; a < n; ++a) {
    const Vector ea = H.basis_vector(a);
    if (left.empty() && H.multiply(ea, P.Lambda) != scale(H.counit()[a], P.Lambda)) left = lab(a);
    if (alpha_w.empty() && H.multiply(P.Lambda, ea) != scale(P.alpha[a], P.Lambda)) alpha_w = lab(a);
    Vector one_side = H.zero();
    for (const auto& t : H.comult(a)) one_side[t.right].add_product(t.coeff, P.lambda[t.left]);
    if (right.empty() && one_side != scale(P.lambda[a], H.unit())) right = lab(a);
    Vector other = H.zero();
    for (const auto& t : H.comult(a)) other[t.left].add_product(t.coeff, P.lambda[t.right]);
    if (g_w.empty() && other != scale(P.lambda[a], P.g)) g_w = lab(a);
  }
  report.record("left integral", left.empty(), left);
  report.record("right cointegral", right.empty(), right);
  report.record("Lambda x = alpha(x) Lambda", alpha_w.empty(), alpha_w);
  report.record("x_(1) lambda(x_(2)) = lambda(x) g", g_w.empty(), g_w);
  report.record("lambda^L = lambda o S^{-1}", P.lambdaL == H.antipode_matrix(-1).apply_transpose(P.lambda),
                vector_string(H, P.lambdaL));
  report.record("lambda o S = lambda(g .)",
                P.lambdaS == H.left_multiplication(P.g).apply_transpose(P.lambda), vector_string(H, P.lambdaS));
  report.record("lambda(Lambda) = 1", dot(P.lambda, P.Lambda).is_one(), vector_string(H, P.Lambda));
  report.record("lambda(Lambda^R) = 1", dot(P.lambda, P.LambdaR).is_one(), dot(P.lambda, P.LambdaR).to_string());
  report.record("lambda^L(Lambda^R) = 1", dot(P.lambdaL, P.LambdaR).is_one(),
                dot(P.lambdaL, P.LambdaR).to_string());
  report.record("lambda^L(Lambda^L) = alpha(g)", dot(P.lambdaL, P.Lambda) == dot(P.alpha, P.g),
                dot(P.lambdaL, P.Lambda).to_string() + " vs " + dot(P.alpha, P.g).to_string());
  report.record("g grouplike",
                iterated_coproduct(H, 2, P.g) == TensorElement::pure(H.field(), {P.g, P.g}),
                vector_string(H, P.g));
  report.record("g invertible", H.multiply(P.g, P.g_inv) == H.unit() && H.multiply(P.g_inv, P.g) == H.unit(),
                vector_string(H, P.g));
  std::string mult_w;
  for (std::size_t i = 0; i < n && mult_w.empty(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (dot(P.alpha, H.multiply(H.basis_vector(i), H.basis_vector(j))) != P.alpha[i] * P.alpha[j]) {
        mult_w = "(" + lab(i) + ", " + lab(j) + ")";
        break;
      }
  if (mult_w.empty() && !dot(P.alpha, H.unit()).is_one()) mult_w = "alpha(1) != 1";
  report.record("alpha algebra map", mult_w.empty(), mult_w);
  return report;
}

Matrix tmap_matrix(const HopfAlgebra& H, const IntegralPair& P) {
  return H.left_multiplication(P.g_inv) * H.right_multiplication(P.g) * H.antipode_matrix(2);
}

Vector tmap(const HopfAlgebra& H, const IntegralPair& P, const Vector& x) {
  return H.multiply(H.multiply(P.g_inv, H.antipode_power(2, x)), P.g);
}

std::string_view to_string(CointegralConvention c) {
  switch (c) {
    case CointegralConvention::g_action: return "g-action";
    case CointegralConvention::antipode_inverse: return "antipode-inverse";
    case CointegralConvention::antipode: return "antipode";
  }
  return "g-action";
}

CointegralConvention parse_convention(std::string_view text) {
  if (text == "g-action") return CointegralConvention::g_action;
  if (text == "antipode-inverse") return CointegralConvention::antipode_inverse;
  if (text == "antipode") return CointegralConvention::antipode;
  throw Error(ErrorCode::bad_params, "unknown convention '" + std::string(text) + "'");
}

Vector character_power(const HopfAlgebra& H, const Vector& chi, long k) {
  if (k == 0) return H.counit();
  const Vector base = k > 0 ? chi : H.antipode().apply_transpose(chi);
  Vector r = base;
  for (long step = 1; step < (k > 0 ? k : -k); ++step) {
    Vector next = zero_vector(H.field(), H.dim());
    for (std::size_t i = 0; i < H.dim(); ++i)
      for (const auto& t : H.comult(i)) next[i] += t.coeff * r[t.left] * base[t.right];
    r = std::move(next);
  }
  return r;
}

Vector hit(const HopfAlgebra& H, const Vector& covector, const Vector& x) {
  Vector out = H.zero();
  for (std::size_t i = 0; i < H.dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (const auto& t : H.comult(i)) {
      const Scalar& f = covector[t.right];
      if (!f.is_zero()) out[t.left] += x[i] * t.coeff * f;
    }
  }
  return out;
}

Vector twisted_integral(const HopfAlgebra& H, const IntegralPair& P, const mpq_class& theta) {
  const long m = half_integer_shift(theta);
  return hit(H, character_power(H, P.alpha, -m), P.LambdaR);
}

Vector twisted_cointegral(const HopfAlgebra& H, const IntegralPair& P, const mpq_class& theta,
                          CointegralConvention convention) {
  const long m = half_integer_shift(theta);
  if (convention == CointegralConvention::g_action)
    return H.right_multiplication(power_of(H, P.g, P.g_inv, m)).apply_transpose(P.lambda);
  const long s = convention == CointegralConvention::antipode_inverse ? -1 : 1;
  const Matrix map = H.antipode_matrix(s) * H.right_multiplication(power_of(H, P.g, P.g_inv, m - 1));
  return map.apply_transpose(P.lambda);
}

// -------------------------------------------------------------- Trace suite

Vector random_element(const Field& field, std::size_t dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  Vector v;
  v.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) v.push_back(Scalar::from_int(field, d(rng)));
  return v;
}

Matrix random_matrix(const Field& field, std::size_t dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  Matrix m(field, dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = Scalar::from_int(field, d(rng));
  return m;
}

std::pair<Scalar, Scalar> integral_traces(const HopfAlgebra& H, const IntegralPair& P, const Matrix& X) {
  const TensorElement d = iterated_coproduct(H, 2, P.Lambda);
  Scalar first = Scalar::zero(H.field()), second = Scalar::zero(H.field());
  for (const auto& [k, c] : d.terms()) {
    const Vector l1 = H.basis_vector(k[0]), l2 = H.basis_vector(k[1]);
    first += c * dot(P.lambda, H.multiply(H.antipode().apply(X.apply(l2)), l1));
    second += c * dot(P.lambda, H.multiply(H.antipode().apply(l2), X.apply(l1)));
  }
  return {first, second};
}

Report trace_identity_suite(const HopfAlgebra& H, const IntegralPair& P, int trials, std::uint64_t seed) {
  Report report;
  std::mt19937_64 rng(seed);
  const Field& F = H.field();
  const std::size_t n = H.dim();
  const TensorElement d = iterated_coproduct(H, 2, P.Lambda);
  const Vector one = H.unit();

  auto check = [&](const std::string& tag, const Matrix& X, const Vector& a) {
    const TensorElement lhs1 = multiply(H.mult(), TensorElement::pure(F, {H.antipode().apply(a), one}), d);
    const TensorElement rhs1 = multiply(H.mult(), TensorElement::pure(F, {one, a}), d);
    report.record("trace identity (1) " + tag, lhs1 == rhs1, "a = " + vector_string(H, a));

    Scalar trace = Scalar::zero(F);
    for (std::size_t i = 0; i < n; ++i) trace += X(i, i);
    const auto [t1, t2] = integral_traces(H, P, X);
    report.record("trace identity (2) " + tag, t1 == trace && t2 == trace,
                  "Tr = " + trace.to_string() + ", formulas give " + t1.to_string() + " and " + t2.to_string());

    Scalar lhs3 = Scalar::zero(F), rhs3 = Scalar::zero(F);
    const Vector Sa = H.antipode().apply(a);
    for (const auto& [k, c] : d.terms()) {
      const Vector l1 = H.basis_vector(k[0]), l2 = H.basis_vector(k[1]);
      lhs3 += c * dot(P.lambdaS, H.multiply(H.multiply(a, X.apply(l1)), l2));
      rhs3 += c * dot(P.lambdaS, H.multiply(X.apply(H.multiply(l1, Sa)), l2));
    }
    report.record("trace identity (3) " + tag, lhs3 == rhs3,
                  lhs3.to_string() + " vs " + rhs3.to_string() + " at a = " + vector_string(H, a));
  };

  check("X=id", Matrix::identity(F, n), random_element(F, n, rng));
  check("X=0", Matrix(F, n, n), random_element(F, n, rng));
  for (int t = 0; t < trials; ++t) {
    const Matrix X = random_matrix(F, n, rng);
    check("trial " + std::to_string(t), X, random_element(F, n, rng));
  }
  return report;
}

}  // namespace kuperberg
