#include <doctest.h>

#include "kuperberg/catalog.hpp"
#include "kuperberg/error.hpp"
#include "kuperberg/evaluator.hpp"

using namespace kuperberg;

namespace {

struct Algebra {
  HopfAlgebra H;
  IntegralPair P;
};

Algebra load(const std::string& name) {
  HopfAlgebra H = catalog(name);
  IntegralPair P = compute_integrals(H);
  return {std::move(H), std::move(P)};
}

const std::vector<std::string> kClosedFormCatalog = {
    "trivial", "group_algebra_Z2", "group_algebra_Z3", "group_algebra_S3", "dual_group_algebra_Z2xZ2",
    "sweedler_h4", "taft_3"};

Scalar alpha_g(const IntegralPair& P) { return dot(P.alpha, P.g); }

}  // namespace

TEST_CASE("small manifolds") {
  for (const auto& name : kClosedFormCatalog) {
    const auto [H, P] = load(name);
    CAPTURE(name);
    CHECK(evaluate(H, P, builtin_diagram("sphere3")).value.is_one());
    // S^1 x S^2 pairs eps(Lambda) with lambda(1).
    CHECK(evaluate(H, P, builtin_diagram("s1xs2")).value == H.counit_of(P.Lambda) * dot(P.lambda, H.unit()));
  }
  const auto [Z2, P2] = load("group_algebra_Z2");
  CHECK(evaluate(Z2, P2, builtin_diagram("s1xs2")).value == Z2.scalar(2));
  CHECK(evaluate_naive(Z2, P2, builtin_diagram("sphere3")).value == Z2.scalar(1));
  const auto [k, Pk] = load("trivial");
  for (const auto& d : builtin_diagram_names()) CHECK(evaluate(k, Pk, builtin_diagram(d)).value.is_one());
}

TEST_CASE("planned contraction agrees with brute-force expansion") {
  for (const auto& name : {"trivial", "group_algebra_Z2", "group_algebra_Z3", "group_algebra_Z4",
                           "group_algebra_Z2xZ2", "dual_group_algebra_Z2xZ2", "sweedler_h4"}) {
    const auto [H, P] = load(name);
    for (const auto& d : builtin_diagram_names()) {
      CAPTURE(name);
      CAPTURE(d);
      const auto D = builtin_diagram(d);
      CHECK(evaluate(H, P, D).value == evaluate_naive(H, P, D).value);
    }
  }
  for (const auto& g : {"Z5", "Z6", "S3", "Z7", "Z8", "D4", "Q8", "Z2xZ4", "Z2xZ2xZ2"}) {
    const HopfAlgebra H = group_algebra(group_by_name(g), Field::rational());
    const IntegralPair P = compute_integrals(H);
    const auto D = builtin_diagram("torus3");
    CAPTURE(g);
    CHECK(evaluate(H, P, D).value == evaluate_naive(H, P, D).value);
  }
}

TEST_CASE("closed trace formulas") {
  for (const auto& name : kClosedFormCatalog) {
    const auto [H, P] = load(name);
    CAPTURE(name);
    CHECK(evaluate(H, P, builtin_diagram("torus3")).value == torus_closed_form(H, P));
    // With the default convention the Weeks trace formula is alpha(g)^{-1} Z(W).
    const Scalar z = evaluate(H, P, builtin_diagram("weeks")).value;
    CHECK(z / alpha_g(P) == weeks_closed_form(H, P));
    // The antipode convention shifts the framing so that alpha(g) Z(W) matches instead.
    EvaluateOptions o;
    o.convention = CointegralConvention::antipode;
    CHECK(evaluate(H, P, builtin_diagram("weeks"), o).value * alpha_g(P) == weeks_closed_form(H, P));
  }
  // The non-unimodular cases tell the conventions apart.
  const auto [T, PT] = load("taft_3");
  CHECK_FALSE(evaluate(T, PT, builtin_diagram("weeks")).value * alpha_g(PT) == weeks_closed_form(T, PT));
  const auto [H4, P4] = load("sweedler_h4");
  CHECK(weeks_closed_form(H4, P4) == H4.scalar(25));
  CHECK(evaluate(H4, P4, builtin_diagram("weeks")).value == H4.scalar(-25));
  EvaluateOptions o;
  o.convention = CointegralConvention::antipode;
  CHECK(evaluate(H4, P4, builtin_diagram("sphere3"), o).value == H4.scalar(-1));
}

TEST_CASE("group algebras on the 3-torus") {
  // Z(T^3, k[G]) counts commuting triples, i.e. homomorphisms Z^3 -> G.
  const auto [Z2, P2] = load("group_algebra_Z2");
  CHECK(evaluate(Z2, P2, builtin_diagram("torus3")).value == Z2.scalar(8));
  const auto [S3, P3] = load("group_algebra_S3");
  CHECK(evaluate(S3, P3, builtin_diagram("torus3")).value == S3.scalar(48));
  CHECK(hom_count(three_torus_presentation(), group_by_name("S3")) == 48);
  CHECK(hom_count(three_torus_presentation(), group_by_name("Z2")) == 8);
  CHECK(hom_count(weeks_presentation(), group_by_name("Z2")) == 1);
}

TEST_CASE("framing degree multiplies by powers of alpha(g)") {
  for (const auto& name : {"sweedler_h4", "taft_3", "group_algebra_S3"}) {
    const auto [H, P] = load(name);
    const auto D = builtin_diagram("weeks");
    const Scalar z0 = evaluate(H, P, D).value;
    for (long n = -2; n <= 2; ++n) {
      EvaluateOptions o;
      o.degree_offset = n;
      const auto r = evaluate(H, P, D, o);
      CHECK(r.degree_offset == n);
      CHECK(r.value == alpha_g(P).pow(n) * z0);
      CHECK(evaluate_naive(H, P, builtin_diagram("sphere3"), o).value == alpha_g(P).pow(n));
    }
  }
  const auto [H4, P4] = load("sweedler_h4");
  EvaluateOptions o;
  o.degree_offset = 1;
  CHECK(evaluate(H4, P4, builtin_diagram("weeks"), o).value == H4.scalar(25));
}

TEST_CASE("user-supplied plans") {
  const auto [H, P] = load("sweedler_h4");
  const auto D = builtin_diagram("torus3");
  const TensorNetwork net = build_network(H, P, D);
  ContractionPlan seq;
  std::size_t acc = 0, next = net.nodes().size();
  for (std::size_t i = 1; i < net.nodes().size(); ++i) {
    seq.steps.push_back({acc, i, 0, 0});
    acc = next++;
  }
  EvaluateOptions o;
  o.plan = seq;
  CHECK(plan_contraction(D, H, P, o).steps.size() == seq.steps.size());
  CHECK(evaluate(H, P, D, o).value == evaluate(H, P, D).value);

  const auto weeks = builtin_diagram("weeks");
  const auto [Z2, P2] = load("group_algebra_Z2");
  CHECK(plan_contraction(weeks, Z2, P2).cost_estimate <= 1024);
  CHECK(evaluate(H, P, weeks).stats.max_intermediate <= 4096);

  o.plan->steps.pop_back();
  CHECK_THROWS_AS(evaluate(H, P, D, o), Error);
}

TEST_CASE("budgets and invalid input") {
  const auto [H, P] = load("sweedler_h4");
  EvaluateOptions tight;
  tight.budget = 2;
  try {
    evaluate(H, P, builtin_diagram("weeks"), tight);
    FAIL("expected plan_failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::plan_failure);
  }
  try {
    evaluate_naive(H, P, builtin_diagram("weeks"), {}, 100);
    FAIL("expected budget_exceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::budget_exceeded);
  }
  auto broken = builtin_diagram("torus3");
  broken.upper[0].theta = 0;
  try {
    evaluate(H, P, broken);
    FAIL("expected invalid_diagram");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_diagram);
  }
}

TEST_CASE("nonzero twist counts apply T") {
  // One point carrying T: Z = lambda(T(Lambda)) with T(x) = g^{-1} S^2(x) g.
  auto d = builtin_diagram("sphere3");
  d.points[0].phi_eta = mpq_class(1, 2);
  d.points[0].phi_mu = mpq_class(-1, 2);
  REQUIRE(rotation_exponents(d)[0].t == 1);
  for (const auto& name : {"sweedler_h4", "taft_3", "group_algebra_S3"}) {
    const auto [H, P] = load(name);
    const Vector T = H.multiply(H.multiply(P.g_inv, H.antipode_power(2, P.Lambda)), P.g);
    CAPTURE(name);
    CHECK(evaluate(H, P, d).value == dot(P.lambda, T));
    CHECK(evaluate_naive(H, P, d).value == dot(P.lambda, T));
  }
}

TEST_CASE("exchange identities") {
  for (const auto& name : {"sweedler_h4", "group_algebra_Z3", "dual_group_algebra_Z2xZ2"}) {
    const auto [H, P] = load(name);
    const Report r = lemma_suite(H, P, 3, 11);
    CAPTURE(name);
    CHECK(r.checks().size() == 12);
    CHECK(r.all_passed());
  }
  // Pairing with lambda instead of lambda o S breaks them on a non-unimodular algebra.
  auto [H, P] = load("sweedler_h4");
  P.lambdaS = P.lambda;
  CHECK_FALSE(lemma_suite(H, P, 3, 11).all_passed());
}

TEST_CASE("gauge invariance under twisting") {
  const auto [H4, P4] = load("sweedler_h4");
  for (long c : {2, 3}) {
    const Cocycle C = verify_cocycle(H4, idempotent_cocycle(H4, H4.basis_vector(1), H4.scalar(c)));
    for (const auto& d : {"weeks", "torus3"}) {
      const auto g = gauge_check(H4, P4, C, builtin_diagram(d));
      CHECK(g.equal);
      CHECK(g.z == g.z_twisted);
    }
  }
  const GroupTable K = group_by_name("Z2xZ2");
  const auto [D, PD] = load("dual_group_algebra_Z2xZ2");
  const Cocycle C = verify_cocycle(D, bicharacter_cocycle(D, K, [&](std::uint32_t a, std::uint32_t b) {
                                     return klein_sign_bicharacter(K, D.field(), a, b);
                                   }));
  for (const auto& d : {"weeks", "torus3"}) CHECK(gauge_check(D, PD, C, builtin_diagram(d)).equal);
  const Cocycle trivial{TensorElement::unit(H4, 2), TensorElement::unit(H4, 2)};
  CHECK(gauge_check(H4, P4, trivial, builtin_diagram("weeks")).equal);
}
