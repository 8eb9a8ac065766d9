#include "kuperberg/twist.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "kuperberg/error.hpp"
#include "text.hpp"

namespace kuperberg {

namespace {

TensorElement mul(const HopfAlgebra& H, const TensorElement& a, const TensorElement& b) {
  return multiply(H.mult(), a, b);
}

TensorElement reversed(const TensorElement& t) {
  std::vector<std::size_t> order(t.arity());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = order.size() - 1 - i;
  return permute_legs(t, order);
}

TensorElement same_on_every_leg(const HopfAlgebra& H, const Vector& x, std::size_t arity) {
  return TensorElement::pure(H.field(), std::vector<Vector>(arity, x));
}

// Names the difference of two tensors, keeping the witness short.
std::string difference(const HopfAlgebra& H, const TensorElement& a, const TensorElement& b) {
  std::string s = (a - b).to_string(H.basis_labels());
  if (s.size() > 160) s = s.substr(0, 157) + "...";
  return "difference " + s;
}

// Inserts a unit leg at position pos; an arity-0 input is represented by std::nullopt.
TensorElement insert_unit(const HopfAlgebra& H, const std::optional<TensorElement>& t, std::size_t pos) {
  if (!t) return TensorElement::unit(H, 1);
  TensorElement out(H.field(), H.dim(), t->arity() + 1);
  const auto one = TensorElement::unit(H, 1);
  for (const auto& [key, c] : t->terms())
    for (const auto& [ukey, uc] : one.terms()) {
      TensorElement::Key k = key;
      k.insert(k.begin() + static_cast<std::ptrdiff_t>(pos), ukey[0]);
      out.add_term(k, c * uc);
    }
  return out;
}

Vector single_leg(const TensorElement& t) { return t.to_vector(); }

TensorElement coproduct_of(const HopfAlgebra& H, std::size_t i) { return iterated_coproduct(H, 2, H.basis_vector(i)); }

}  // namespace

Cocycle verify_cocycle(const HopfAlgebra& H, const TensorElement& F) {
  const std::size_t n = H.dim();
  if (F.arity() != 2 || F.dim() != n || !(F.field() == H.field()))
    throw Error(ErrorCode::dimension_mismatch, "a cocycle lives in H (x) H");

  // Left multiplication by F on H (x) H, column a*n+b holding F (e_a (x) e_b).
  Matrix L(H.field(), n * n, n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto col = mul(H, F, TensorElement::pure(H.field(), {H.basis_vector(a), H.basis_vector(b)}));
      for (const auto& [key, c] : col.terms()) L(key[0] * n + key[1], a * n + b) = c;
    }
  Vector one = zero_vector(H.field(), n * n);
  const auto unit2 = TensorElement::unit(H, 2);
  for (const auto& [key, c] : unit2.terms()) one[key[0] * n + key[1]] = c;
  const auto x = L.solve(one);
  if (!x) throw Error(ErrorCode::not_invertible, "F has no inverse in H (x) H");
  TensorElement Finv(H.field(), n, 2);
  for (std::size_t i = 0; i < n * n; ++i)
    if (!(*x)[i].is_zero()) Finv.add_term({static_cast<std::uint32_t>(i / n), static_cast<std::uint32_t>(i % n)}, (*x)[i]);
  if (!(mul(H, Finv, F) == TensorElement::unit(H, 2)))
    throw Error(ErrorCode::not_invertible, "the right inverse of F is not a left inverse");

  const auto unit1 = TensorElement::from_vector(H.field(), H.unit());
  for (std::size_t leg = 0; leg < 2; ++leg) {
    const auto r = contract_leg(H.counit(), F, leg);
    if (!(r == unit1))
      throw Error(ErrorCode::not_normalized,
                  std::string(leg == 0 ? "(eps (x) id)" : "(id (x) eps)") + "(F) = " + r.to_string(H.basis_labels()));
  }

  const auto lhs = mul(H, tensor_product(F, unit1), coproduct_at(H, F, 0, 2));
  const auto rhs = mul(H, tensor_product(unit1, F), coproduct_at(H, F, 1, 2));
  if (!(lhs == rhs)) throw Error(ErrorCode::cocycle_condition_fails, difference(H, lhs, rhs));
  return {F, Finv};
}

TwistArtifacts twist_artifacts(const HopfAlgebra& H, const Cocycle& C) {
  const Matrix& S = H.antipode();
  const auto joined = [&](const TensorElement& t) {
    return single_leg(merge_legs(H.mult(), t, {{LegSource::leg(0), LegSource::leg(1)}}));
  };
  TwistArtifacts a;
  a.u = joined(apply_leg(S, C.F, 1));
  a.uinv = joined(apply_leg(S, C.Finv, 0));
  a.Q = H.multiply(a.u, S.apply(a.uinv));
  return a;
}

std::pair<HopfAlgebra, TwistArtifacts> twist_hopf(const HopfAlgebra& H, const Cocycle& C) {
  TwistArtifacts art = twist_artifacts(H, C);
  const std::size_t n = H.dim();
  Comultiplication comult(n);
  Matrix antipode(H.field(), n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = mul(H, mul(H, C.F, coproduct_of(H, i)), C.Finv);
    for (const auto& [key, c] : d.terms()) comult[i].push_back({key[0], key[1], c});
    const Vector s = H.multiply(H.multiply(art.u, H.antipode().column(i)), art.uinv);
    for (std::size_t r = 0; r < n; ++r) antipode(r, i) = s[r];
  }
  HopfAlgebra twisted = H.with_coalgebra(H.name() + "_twisted", std::move(comult), std::move(antipode));
  const Report r = check_hopf_axioms(twisted);
  if (!r.all_passed()) {
    std::ostringstream os;
    os << "twisted algebra fails:";
    for (const auto& f : r.failures()) os << ' ' << f.name << " (" << f.witness << ");";
    throw Error(ErrorCode::axiom_failure, os.str());
  }
  return {std::move(twisted), std::move(art)};
}

std::pair<TensorElement, TensorElement> iterated_fn(const HopfAlgebra& H, const Cocycle& C, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::bad_params, "F_n needs n >= 1");
  TensorElement Fn = TensorElement::unit(H, 1), Fninv = Fn;
  const auto unit1 = TensorElement::unit(H, 1);
  for (std::size_t k = 1; k < n; ++k) {
    Fn = mul(H, tensor_product(unit1, Fn), coproduct_at(H, C.F, 1, k));
    Fninv = mul(H, coproduct_at(H, C.Finv, 1, k), tensor_product(unit1, Fninv));
  }
  return {std::move(Fn), std::move(Fninv)};
}

Report prop22_suite(const HopfAlgebra& H, const IntegralPair& P, const Cocycle& C, std::size_t n_max, int trials,
                    std::uint64_t seed) {
  if (n_max < 2) throw Error(ErrorCode::bad_params, "n_max must be at least 2");
  const Matrix& S = H.antipode();
  const Matrix S2 = H.antipode_matrix(2);
  const TwistArtifacts art = twist_artifacts(H, C);

  std::vector<TensorElement> F{TensorElement::unit(H, 1)}, D{TensorElement::unit(H, 1)};  // index k holds F_{k+1}
  for (std::size_t k = 2; k <= n_max; ++k) {
    auto [f, d] = iterated_fn(H, C, k);
    F.push_back(std::move(f));
    D.push_back(std::move(d));
  }
  const auto Fn = [&](std::size_t k) -> const TensorElement& { return F[k - 1]; };
  const auto Dn = [&](std::size_t k) -> const TensorElement& { return D[k - 1]; };

  Report report;
  const auto check = [&](int item, const std::string& where, const TensorElement& lhs, const TensorElement& rhs) {
    report.record("cocycle identity (" + std::to_string(item) + ") " + where, lhs == rhs,
                  lhs == rhs ? std::string{} : difference(H, lhs, rhs));
  };

  // (1) F_{m+n} = (F_m (x) F_n)(Delta^m (x) Delta^n)(F)
  for (std::size_t m = 1; m < n_max; ++m)
    for (std::size_t n = 1; m + n <= n_max; ++n) {
      const auto split = coproduct_at(H, coproduct_at(H, C.F, 1, n), 0, m);
      check(1, "m=" + std::to_string(m) + " n=" + std::to_string(n), Fn(m + n),
            mul(H, tensor_product(Fn(m), Fn(n)), split));
    }

  for (std::size_t m = 2; m <= n_max; ++m) {
    const std::string where = "m=" + std::to_string(m);
    // (2) f^1 S(f^m)_(1) (x) ... (x) f^{m-1} S(f^m)_(m-1) = u S(d^{m-1}) (x) ... (x) u S(d^1)
    {
      const auto t = coproduct_at(H, apply_leg(S, Fn(m), m - 1), m - 1, m - 1);
      std::vector<std::vector<LegSource>> groups;
      for (std::size_t k = 0; k + 1 < m; ++k) groups.push_back({LegSource::leg(k), LegSource::leg(m - 1 + k)});
      const auto rhs = mul(H, same_on_every_leg(H, art.u, m - 1), reversed(apply_all(S, Dn(m - 1))));
      check(2, where, merge_legs(H.mult(), t, groups), rhs);
    }
    // (3) S(d^1)_(1) d^2 (x) ... (x) S(d^1)_(m-1) d^m = S(f^{m-1}) u^{-1} (x) ... (x) S(f^1) u^{-1}
    {
      const auto t = coproduct_at(H, apply_leg(S, Dn(m), 0), 0, m - 1);
      std::vector<std::vector<LegSource>> groups;
      for (std::size_t k = 0; k + 1 < m; ++k) groups.push_back({LegSource::leg(k), LegSource::leg(m - 1 + k)});
      const auto rhs = mul(H, reversed(apply_all(S, Fn(m - 1))), same_on_every_leg(H, art.uinv, m - 1));
      check(3, where, merge_legs(H.mult(), t, groups), rhs);
    }
  }

  // (4), (5): contracting two adjacent legs with u^{-1} (resp. u) leaves a shorter F_n with a unit leg.
  for (std::size_t n = 2; n <= n_max; ++n)
    for (std::size_t m = 1; m < n; ++m) {
      const std::string where = "n=" + std::to_string(n) + " m=" + std::to_string(m);
      std::vector<std::vector<LegSource>> f_groups, d_groups;
      for (std::size_t s = 0; s < n; ++s) {
        if (s + 1 == m) {
          f_groups.push_back({LegSource::leg(s), LegSource::constant(art.uinv), LegSource::leg(s + 1)});
          d_groups.push_back({LegSource::leg(s), LegSource::constant(art.u), LegSource::leg(s + 1)});
        } else if (s != m) {
          f_groups.push_back({LegSource::leg(s)});
          d_groups.push_back({LegSource::leg(s)});
        }
      }
      const std::optional<TensorElement> shorter_f = n > 2 ? std::optional(Fn(n - 2)) : std::nullopt;
      const std::optional<TensorElement> shorter_d = n > 2 ? std::optional(Dn(n - 2)) : std::nullopt;
      check(4, where, merge_legs(H.mult(), apply_leg(S, Fn(n), m - 1), f_groups), insert_unit(H, shorter_f, m - 1));
      check(5, where, merge_legs(H.mult(), apply_leg(S, Dn(n), m), d_groups), insert_unit(H, shorter_d, m - 1));
    }

  for (std::size_t n = 1; n <= n_max; ++n) {
    const std::string where = "n=" + std::to_string(n);
    // (6) Delta^n(u) = (d^1 (x) ... (x) d^n)(u (x) ... (x) u)(S(d^n) (x) ... (x) S(d^1))
    check(6, where, iterated_coproduct(H, n, art.u),
          mul(H, mul(H, Dn(n), same_on_every_leg(H, art.u, n)), reversed(apply_all(S, Dn(n)))));
    // (7) Delta^n(u^{-1}) = (S(f^n) (x) ... (x) S(f^1))(u^{-1} (x) ... (x) u^{-1})(f^1 (x) ... (x) f^n)
    check(7, where, iterated_coproduct(H, n, art.uinv),
          mul(H, mul(H, reversed(apply_all(S, Fn(n))), same_on_every_leg(H, art.uinv, n)), Fn(n)));
    // (8) Delta^n(Q) = (d^1 (x) ... (x) d^n)(Q (x) ... (x) Q)(S^2(f^1) (x) ... (x) S^2(f^n))
    check(8, where, iterated_coproduct(H, n, art.Q),
          mul(H, mul(H, Dn(n), same_on_every_leg(H, art.Q, n)), apply_all(S2, Fn(n))));
  }

  // (9) lambda(S(Lambda_(2)) S_F Y Delta_F^{n-1}(Lambda_(1)))
  //       = lambdaS(d^1 Y(f^1 Lambda_(1) d^2 (x) ... (x) f^{n-1} Lambda_(n-1) d^n) f^n Lambda_(n))
  // for rank-one Y(a_1, ..., a_{n-1}) = phi_1(a_1) ... phi_{n-1}(a_{n-1}) y.
  std::optional<HopfAlgebra> twisted;
  try {
    twisted = twist_hopf(H, C).first;
  } catch (const Error& e) {
    report.fail("cocycle identity (9)", e.what());
    return report;
  }
  const HopfAlgebra& HF = *twisted;
  std::mt19937_64 rng(seed);
  for (std::size_t n = 2; n <= n_max; ++n)
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<Vector> phi;
      for (std::size_t i = 0; i + 1 < n; ++i) phi.push_back(random_element(H.field(), H.dim(), rng));
      const Vector y = random_element(H.field(), H.dim(), rng);
      const auto phis = [&](const TensorElement::Key& key, std::size_t count, auto&& leg_value) {
        Scalar v = Scalar::one(H.field());
        for (std::size_t i = 0; i < count && !v.is_zero(); ++i) v *= leg_value(i, key);
        return v;
      };

      Scalar lhs = Scalar::zero(H.field());
      const Vector SFy = HF.antipode().apply(y);
      const auto split = iterated_coproduct(H, 2, P.Lambda);
      for (const auto& [key, c] : split.terms()) {
        const Scalar tail = dot(P.lambda, H.multiply(S.column(key[1]), SFy));
        if (tail.is_zero()) continue;
        Scalar inner = Scalar::zero(H.field());
        const auto twisted = iterated_coproduct(HF, n - 1, H.basis_vector(key[0]));
        for (const auto& [k2, c2] : twisted.terms())
          inner += c2 * phis(k2, n - 1, [&](std::size_t i, const auto& k) { return phi[i][k[i]]; });
        lhs += c * inner * tail;
      }

      Scalar rhs = Scalar::zero(H.field());
      const auto fl = mul(H, Fn(n), iterated_coproduct(H, n, P.Lambda));
      for (const auto& [kf, cf] : fl.terms())
        for (const auto& [kd, cd] : Dn(n).terms()) {
          const Scalar weight = phis(kf, n - 1, [&](std::size_t i, const auto& k) {
            return dot(phi[i], H.multiply(H.basis_vector(k[i]), H.basis_vector(kd[i + 1])));
          });
          if (weight.is_zero()) continue;
          const Vector word = H.multiply(H.multiply(H.basis_vector(kd[0]), y), H.basis_vector(kf[n - 1]));
          rhs += cf * cd * weight * dot(P.lambdaS, word);
        }
      const bool ok = lhs == rhs;
      std::ostringstream w;
      if (!ok) w << "n=" << n << " trial " << trial << ": " << lhs << " vs " << rhs;
      report.record("cocycle identity (9) n=" + std::to_string(n), ok, w.str());
    }
  return report;
}

Report twist_invariants(const HopfAlgebra& H, const Cocycle& C, std::size_t n_max) {
  Report report;
  const auto [HF, art] = twist_hopf(H, C);

  report.record("u u^{-1} = 1", H.multiply(art.u, art.uinv) == H.unit() && H.multiply(art.uinv, art.u) == H.unit(),
                "u u^{-1} != 1");

  for (std::size_t n = 1; n <= n_max; ++n) {
    const auto [Fn, Dn] = iterated_fn(H, C, n);
    std::string witness;
    for (std::size_t i = 0; i < H.dim() && witness.empty(); ++i) {
      const auto lhs = iterated_coproduct(HF, n, H.basis_vector(i));
      const auto rhs = mul(H, mul(H, Fn, iterated_coproduct(H, n, H.basis_vector(i))), Dn);
      if (!(lhs == rhs)) witness = H.basis_labels()[i] + ": " + difference(H, lhs, rhs);
    }
    report.record("Delta_F^" + std::to_string(n) + " = F_n Delta^n F_n^{-1}", witness.empty(), witness);
  }

  // S_F^2 = Q S^2(.) Q^{-1}
  {
    const auto Qinv = H.left_multiplication(art.Q).inverse();
    std::string witness = Qinv ? "" : "Q is not invertible";
    if (Qinv) {
      const Vector qi = Qinv->apply(H.unit());
      const Matrix SF2 = HF.antipode() * HF.antipode();
      for (std::size_t i = 0; i < H.dim() && witness.empty(); ++i) {
        const Vector expect = H.multiply(H.multiply(art.Q, H.antipode_power(2, H.basis_vector(i))), qi);
        if (SF2.column(i) != expect) witness = H.basis_labels()[i];
      }
    }
    report.record("S_F^2 = Q S^2 Q^{-1}", witness.empty(), witness);
  }

  // Twisting H_F by F^{-1} recovers H.
  {
    std::string witness;
    try {
      const Cocycle back = verify_cocycle(HF, C.Finv);
      const auto [H2, art2] = twist_hopf(HF, back);
      for (std::size_t i = 0; i < H.dim() && witness.empty(); ++i)
        if (!(coproduct_of(H2, i) == coproduct_of(H, i))) witness = "coproduct of " + H.basis_labels()[i];
      if (witness.empty() && !(H2.antipode() == H.antipode())) witness = "antipode";
    } catch (const Error& e) {
      witness = e.what();
    }
    report.record("untwisting by F^{-1} recovers H", witness.empty(), witness);
  }
  return report;
}

TensorElement bicharacter_cocycle(const HopfAlgebra& dual, const GroupTable& G,
                                  const std::function<Scalar(std::uint32_t, std::uint32_t)>& beta) {
  if (dual.dim() != G.order()) throw Error(ErrorCode::dimension_mismatch, "dual group algebra and group differ in size");
  TensorElement F(dual.field(), dual.dim(), 2);
  for (std::uint32_t a = 0; a < G.order(); ++a)
    for (std::uint32_t b = 0; b < G.order(); ++b) {
      const Scalar v = beta(a, b);
      if (v.is_zero()) throw Error(ErrorCode::zero_entry, "beta(" + G.label(a) + ", " + G.label(b) + ") = 0");
      F.add_term({a, b}, v);
    }
  return F;
}

Scalar klein_sign_bicharacter(const GroupTable& G, const Field& field, std::uint32_t a, std::uint32_t b) {
  const auto& x = G.coordinates(a);
  const auto& y = G.coordinates(b);
  if (x.size() != 2 || y.size() != 2) throw Error(ErrorCode::bad_params, "needs a two-factor direct product");
  return Scalar::from_int(field, (x[0] * y[1]) % 2 ? -1 : 1);
}

TensorElement idempotent_cocycle(const HopfAlgebra& H, const Vector& g, const Scalar& c) {
  const Vector e = scale(Scalar::from_int(H.field(), 2).inverse(), sub(H.unit(), g));
  return TensorElement::unit(H, 2) + TensorElement::pure(H.field(), {e, e}).scaled(c);
}

TensorElement parse_cocycle(std::string_view source, const HopfAlgebra& H) {
  const auto lines = text::tokenize(source);
  if (lines.empty()) throw SyntaxError(1, 1, "'twists <algebra name>' header");
  const auto& head = lines.front();
  if (head.tokens[0].text != "twists") throw SyntaxError(head.number, head.tokens[0].column, "'twists' header");
  const std::string target(text::at(head, 1, "algebra name").text);
  text::expect_end(head, 2);
  if (target != H.name())
    throw Error(ErrorCode::bad_params, "cocycle twists '" + target + "' but the algebra is '" + H.name() + "'");

  TensorElement F(H.field(), H.dim(), 2);
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto& line = lines[l];
    std::uint32_t idx[2];
    for (std::size_t k = 0; k < 2; ++k) {
      const auto& t = text::at(line, k, "basis index");
      const std::size_t v = text::to_index(line, t, "basis index");
      if (v >= H.dim()) throw SyntaxError(line.number, t.column, "basis index below " + std::to_string(H.dim()));
      idx[k] = static_cast<std::uint32_t>(v);
    }
    F.add_term({idx[0], idx[1]}, text::to_scalar(line, text::at(line, 2, "coefficient"), H.field()));
    text::expect_end(line, 3);
  }
  return F;
}

TensorElement load_cocycle(const std::string& path, const HopfAlgebra& H) { return parse_cocycle(text::read_file(path), H); }

std::string serialize_cocycle(const TensorElement& F, const HopfAlgebra& H) {
  std::ostringstream os;
  os << "twists " << H.name() << '\n';
  for (const auto& [key, c] : F.terms()) os << key[0] << ' ' << key[1] << ' ' << text::coefficient_text(c) << '\n';
  return os.str();
}

}  // namespace kuperberg
