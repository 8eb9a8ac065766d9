#include <doctest.h>

#include <cstdlib>

#include "kuperberg/catalog.hpp"
#include "kuperberg/error.hpp"
#include "kuperberg/network.hpp"

using namespace kuperberg;

namespace {

Scalar greedy(const TensorNetwork& net) { return contract(net, plan_network(net, 1 << 20), 1 << 20); }

// Always fold the accumulated result into the next original node.
ContractionPlan sequential(const TensorNetwork& net) {
  ContractionPlan p;
  std::size_t acc = 0, next = net.nodes().size();
  for (std::size_t i = 1; i < net.nodes().size(); ++i) {
    p.steps.push_back({acc, i, 0, 0});
    acc = next++;
  }
  return p;
}

}  // namespace

TEST_CASE("elementary networks contract to the expected scalars") {
  const HopfAlgebra H = sweedler_h4(Field::rational());
  const IntegralPair P = compute_integrals(H);
  const Vector x = {H.scalar(3), H.scalar(-1), H.scalar(2), H.scalar(5)};
  const Vector y = {H.scalar(0), H.scalar(1), H.scalar(-2), H.scalar(1)};

  {
    TensorNetwork net(H);
    net.pair(P.lambda, net.element(x));
    CHECK(greedy(net) == dot(P.lambda, x));
  }
  {
    TensorNetwork net(H);
    net.pair(P.lambda, net.product(net.element(x), net.element(y)));
    CHECK(greedy(net) == dot(P.lambda, H.multiply(x, y)));
  }
  {
    TensorNetwork net(H);
    CHECK(net.coproduct(net.element(x), 0).empty());
    CHECK(greedy(net) == H.counit_of(x));
  }
  {
    // lambda(S(x_(1)) x_(2)) = eps(x) lambda(1)
    TensorNetwork net(H);
    const auto legs = net.coproduct(net.element(x), 2);
    net.pair(P.lambda, net.product(net.apply(H.antipode(), legs[0]), legs[1]));
    CHECK(greedy(net) == H.counit_of(x) * dot(P.lambda, H.unit()));
  }
  {
    // Disconnected pieces multiply.
    TensorNetwork net(H);
    net.pair(P.lambda, net.element(x));
    net.pair(H.counit(), net.element(y));
    CHECK(greedy(net) == dot(P.lambda, x) * H.counit_of(y));
  }
  {
    TensorNetwork net(H);
    net.pair(H.counit(), net.product(std::vector<EdgeId>{}));
    CHECK(greedy(net) == H.scalar(1));
  }
}

TEST_CASE("explicit tensors keep their leg order") {
  const HopfAlgebra H = sweedler_h4(Field::rational());
  TensorElement t(H.field(), H.dim(), 2);
  t.add_term({1, 2}, H.scalar(7));
  t.add_term({2, 1}, H.scalar(-3));
  const Vector a = H.basis_vector(1), b = H.basis_vector(2);
  TensorNetwork net(H);
  const auto legs = net.tensor(t);
  net.pair(a, legs[0]);
  net.pair(b, legs[1]);
  CHECK(greedy(net) == H.scalar(7));
}

TEST_CASE("any valid plan gives the same value") {
  const HopfAlgebra H = taft_algebra(3, default_field("taft_3"));
  const IntegralPair P = compute_integrals(H);
  TensorNetwork net(H);
  const auto A = net.coproduct(net.element(P.Lambda), 4);
  net.pair(P.lambda, net.product({net.apply(H.antipode_matrix(2), A[1]), A[3], A[0], net.apply(H.antipode(), A[2])}));
  const Scalar a = greedy(net);
  const ContractionPlan seq = sequential(net);
  check_plan(net, seq);
  CHECK(contract(net, seq, 1 << 24) == a);
}

TEST_CASE("plans are validated and budgets enforced") {
  const HopfAlgebra H = sweedler_h4(Field::rational());
  const IntegralPair P = compute_integrals(H);
  TensorNetwork net(H);
  const auto A = net.coproduct(net.element(P.Lambda), 3);
  net.pair(P.lambda, net.product(net.product(A[2], A[0]), A[1]));

  ContractionPlan bad = sequential(net);
  bad.steps[1].right = bad.steps[0].left;
  CHECK_THROWS_AS(check_plan(net, bad), Error);
  ContractionPlan short_plan = sequential(net);
  short_plan.steps.pop_back();
  CHECK_THROWS_AS(check_plan(net, short_plan), Error);

  try {
    plan_network(net, 1);
    FAIL("expected plan_failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::plan_failure);
  }
  const ContractionPlan ok = plan_network(net, 1 << 20);
  CHECK(ok.steps.size() == net.nodes().size() - 1);
  CHECK_THROWS_AS(contract(net, ok, 1), Error);

  TensorNetwork open(H);
  open.element(P.Lambda);
  CHECK_THROWS_AS(plan_network(open, 1 << 20), Error);
}

TEST_CASE("plans are deterministic") {
  const HopfAlgebra H = group_algebra(group_by_name("S3"), Field::rational());
  const IntegralPair P = compute_integrals(H);
  auto build = [&] {
    TensorNetwork net(H);
    const auto A = net.coproduct(net.element(P.Lambda), 3);
    const auto B = net.coproduct(net.element(P.Lambda), 3);
    net.pair(P.lambda, net.product({A[0], B[1], A[2]}));
    net.pair(P.lambda, net.product({B[0], A[1], B[2]}));
    return net;
  };
  const auto p1 = plan_network(build(), 1 << 20), p2 = plan_network(build(), 1 << 20);
  REQUIRE(p1.steps.size() == p2.steps.size());
  for (std::size_t i = 0; i < p1.steps.size(); ++i) {
    CHECK(p1.steps[i].left == p2.steps[i].left);
    CHECK(p1.steps[i].right == p2.steps[i].right);
  }
}

TEST_CASE("the budget can come from the environment") {
  ::setenv("KUPERBERG_BUDGET", "12345", 1);
  CHECK(default_budget() == 12345);
  ::setenv("KUPERBERG_BUDGET", "junk", 1);
  CHECK(default_budget() == (std::uint64_t{1} << 26));
  ::unsetenv("KUPERBERG_BUDGET");
  CHECK(default_budget() == (std::uint64_t{1} << 26));
}
