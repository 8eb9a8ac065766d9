#include <doctest.h>

#include "kuperberg/catalog.hpp"
#include "kuperberg/error.hpp"
#include "kuperberg/hopf.hpp"

using namespace kuperberg;

namespace {

std::vector<HopfAlgebra> small_catalog() {
  std::vector<HopfAlgebra> out;
  for (const char* name : {"trivial", "group_algebra_Z2", "group_algebra_Z3", "group_algebra_S3",
                           "group_algebra_Q8", "dual_group_algebra_Z2xZ2", "dual_group_algebra_S3", "sweedler_h4",
                           "taft_3"})
    out.push_back(catalog(name));
  out.push_back(catalog("taft_3", {Field::prime(7), false}));
  out.push_back(catalog("group_algebra_Z2", {Field::cyclotomic(5), false}));
  return out;
}

Vector v(const HopfAlgebra& H, std::initializer_list<long> coords) {
  Vector r;
  for (long c : coords) r.push_back(H.scalar(c));
  return r;
}

// Corrupts S(x) in H4 by flipping its sign.
HopfAlgebra corrupted_h4() {
  HopfData d = sweedler_h4(Field::rational()).data();
  for (std::size_t r = 0; r < 4; ++r) d.antipode(r, 2) = -d.antipode(r, 2);
  d.name = "corrupted";
  return HopfAlgebra(std::move(d));
}

}  // namespace

TEST_CASE("catalog algebras satisfy the Hopf axioms") {
  for (const auto& H : small_catalog()) {
    CAPTURE(H.name());
    const Report r = check_hopf_axioms(H);
    CHECK_MESSAGE(r.all_passed(), r);
  }
  CHECK(catalog("taft_3").dim() == 9);
  CHECK_FALSE(catalog("taft_3").antipode_matrix(2).is_identity());
}

TEST_CASE("corrupted antipode is detected with a witness") {
  const Report r = check_hopf_axioms(corrupted_h4());
  CHECK_FALSE(r.all_passed());
  bool found = false;
  for (const auto& c : r.failures())
    if (c.name == "antipode left") {
      found = true;
      CHECK(c.witness == "x");
    }
  CHECK(found);
}

TEST_CASE("catalog errors") {
  CHECK_THROWS_AS(catalog("nonsense"), Error);
  try {
    catalog("taft_3", {Field::rational(), false});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bad_params);
  }
  try {
    catalog("group_algebra_Z2", {Field::prime(2), false});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::bad_params);
  }
  CHECK_THROWS_AS(group_by_name("Z0"), Error);
}

TEST_CASE("iterated coproducts") {
  const HopfAlgebra Z2 = catalog("group_algebra_Z2");
  const Vector g = Z2.basis_vector(1);
  CHECK(iterated_coproduct(Z2, 3, g) == TensorElement::pure(Z2.field(), {g, g, g}));
  CHECK(iterated_coproduct(Z2, 1, g) == TensorElement::from_vector(Z2.field(), g));
  CHECK(iterated_coproduct(Z2, 0, g) == TensorElement::from_vector(Z2.field(), Z2.unit()));

  const HopfAlgebra H4 = sweedler_h4(Field::rational());
  const Vector one = H4.basis_vector(0), gg = H4.basis_vector(1), x = H4.basis_vector(2);
  CHECK(iterated_coproduct(H4, 2, x) ==
        TensorElement::pure(H4.field(), {x, one}) + TensorElement::pure(H4.field(), {gg, x}));

  // Generalized coassociativity: splitting any leg of Delta^{n-1} gives Delta^n.
  for (const auto& H : small_catalog()) {
    CAPTURE(H.name());
    for (std::size_t i = 0; i < H.dim(); ++i) {
      const Vector e = H.basis_vector(i);
      for (std::size_t n = 3; n <= (H.dim() > 4 ? 4u : 6u); ++n) {
        const TensorElement expected = iterated_coproduct(H, n, e);
        const TensorElement prev = iterated_coproduct(H, n - 1, e);
        for (std::size_t leg = 0; leg + 1 < n; ++leg) REQUIRE(coproduct_at(H, prev, leg, 2) == expected);
      }
    }
  }
}

TEST_CASE("antipode powers") {
  const HopfAlgebra Z3 = catalog("group_algebra_Z3");
  CHECK(Z3.antipode_power(-1, Z3.basis_vector(1)) == Z3.basis_vector(2));
  CHECK(Z3.antipode_power(0, Z3.basis_vector(1)) == Z3.basis_vector(1));
  const HopfAlgebra H4 = sweedler_h4(Field::rational());
  const Vector x = H4.basis_vector(2), g = H4.basis_vector(1);
  CHECK(H4.antipode_power(2, x) == H4.multiply(H4.multiply(g, x), g));
  CHECK(H4.antipode_power(2, x) == H4.antipode().apply(H4.antipode().apply(x)));
  for (const auto& H : small_catalog())
    for (long n = -4; n <= 4; ++n) CHECK((H.antipode_matrix(n) * H.antipode_matrix(-n)).is_identity());
  HopfData d = H4.data();
  d.antipode = Matrix(H4.field(), 4, 4);
  const HopfAlgebra singular(std::move(d));
  CHECK_THROWS_AS(singular.antipode_power(-1, x), Error);
}

TEST_CASE("integrals") {
  const HopfAlgebra Z2 = catalog("group_algebra_Z2");
  const IntegralPair P = compute_integrals(Z2);
  CHECK(P.Lambda == v(Z2, {1, 1}));
  CHECK(P.lambda == v(Z2, {1, 0}));
  CHECK(P.g == Z2.unit());
  CHECK(P.alpha == Z2.counit());

  const HopfAlgebra H4 = sweedler_h4(Field::rational());
  const IntegralPair Q = compute_integrals(H4);
  CHECK(Q.Lambda == v(H4, {0, 0, 1, 1}));
  CHECK(Q.alpha[1] == H4.scalar(-1));
  CHECK(H4.multiply(Q.Lambda, H4.basis_vector(1)) == scale(H4.scalar(-1), Q.Lambda));
  CHECK(dot(Q.alpha, Q.g) == H4.scalar(-1));

  for (const auto& H : small_catalog()) {
    CAPTURE(H.name());
    const IntegralPair I = compute_integrals(H);
    const Report r = check_integrals(H, I);
    CHECK_MESSAGE(r.all_passed(), r);
    if (H.name().starts_with("group_algebra")) {
      CHECK(I.g == H.unit());
      CHECK(I.alpha == H.counit());
    }
  }
}

TEST_CASE("integrals in a characteristic dividing the dimension") {
  // k[Z2] over F_2 is not semisimple, but lambda(Lambda) is still nonzero.
  const HopfAlgebra H = catalog("group_algebra_Z2", {Field::prime(2), true});
  const IntegralPair P = compute_integrals(H);
  CHECK(dot(P.lambda, P.Lambda).is_one());
  CHECK(H.counit_of(P.Lambda).is_zero());
}

TEST_CASE("T map and twisted integrals") {
  const HopfAlgebra S3 = catalog("group_algebra_S3");
  const IntegralPair P = compute_integrals(S3);
  CHECK(tmap_matrix(S3, P).is_identity());
  for (long m = -2; m <= 2; ++m) {
    const mpq_class theta = mpq_class(2 * m - 1, 2);
    CHECK(twisted_integral(S3, P, theta) == P.LambdaR);
    CHECK(twisted_cointegral(S3, P, theta) == P.lambda);
  }
  CHECK_THROWS_AS(twisted_integral(S3, P, mpq_class(1, 4)), Error);
  CHECK_THROWS_AS(twisted_cointegral(S3, P, mpq_class(0)), Error);

  const HopfAlgebra H4 = sweedler_h4(Field::rational());
  const IntegralPair Q = compute_integrals(H4);
  const Vector x = H4.basis_vector(2);
  CHECK(tmap(H4, Q, x) == tmap_matrix(H4, Q).apply(x));
  // lambda_{1/2}(x) = lambda(x g), which is lambda o S^{-1} rather than lambda o S.
  CHECK(twisted_cointegral(H4, Q, mpq_class(1, 2)) == Q.lambdaL);
  CHECK(twisted_cointegral(H4, Q, mpq_class(1, 2)) == H4.antipode_matrix(-1).apply_transpose(Q.lambda));
  CHECK(twisted_cointegral(H4, Q, mpq_class(1, 2)) != Q.lambdaS);
  CHECK(twisted_cointegral(H4, Q, mpq_class(1, 2), CointegralConvention::antipode) == Q.lambdaS);
  CHECK(twisted_cointegral(H4, Q, mpq_class(-1, 2)) == Q.lambda);
  for (long m = -3; m <= 3; ++m) {
    const mpq_class theta(2 * m - 1, 2);
    CHECK(twisted_cointegral(H4, Q, theta, CointegralConvention::antipode_inverse) ==
          twisted_cointegral(H4, Q, theta, CointegralConvention::g_action));
  }
  // alpha^{-1} -> S(Lambda) recovers Lambda.
  CHECK(twisted_integral(H4, Q, mpq_class(1, 2)) == Q.Lambda);
  const HopfAlgebra T3 = catalog("taft_3");
  const IntegralPair R = compute_integrals(T3);
  CHECK(twisted_integral(T3, R, mpq_class(1, 2)) == R.Lambda);
}

TEST_CASE("trace identities") {
  const HopfAlgebra Z2 = catalog("group_algebra_Z2");
  const IntegralPair P = compute_integrals(Z2);
  const auto [a, b] = integral_traces(Z2, P, Matrix::identity(Z2.field(), 2));
  CHECK(a == Z2.scalar(2));
  CHECK(b == Z2.scalar(2));
  for (const auto& H : small_catalog()) {
    CAPTURE(H.name());
    const Report r = trace_identity_suite(H, compute_integrals(H), 10, 3);
    CHECK_MESSAGE(r.all_passed(), r);
  }
}

TEST_CASE("tensor element helpers") {
  const HopfAlgebra H4 = sweedler_h4(Field::rational());
  const Field& F = H4.field();
  const Vector one = H4.basis_vector(0), g = H4.basis_vector(1), x = H4.basis_vector(2);
  const TensorElement t = TensorElement::pure(F, {g, x});
  CHECK(permute_legs(t, {1, 0}) == TensorElement::pure(F, {x, g}));
  CHECK(merge_legs(H4.mult(), t, {{LegSource::leg(0), LegSource::leg(1)}}) ==
        TensorElement::from_vector(F, H4.multiply(g, x)));
  CHECK(merge_legs(H4.mult(), t, {{LegSource::constant(x), LegSource::leg(1)}, {LegSource::leg(0)}}) ==
        TensorElement::pure(F, {H4.multiply(x, x), g}));
  CHECK((t - t).is_zero());
  CHECK(contract_leg(H4.counit(), t, 0) == TensorElement::from_vector(F, x));
  CHECK(multiply(H4.mult(), t, TensorElement::pure(F, {g, one})) == TensorElement::pure(F, {one, H4.multiply(x, one)}));
}
