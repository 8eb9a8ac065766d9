#include <doctest.h>

#include <map>

#include "kuperberg/error.hpp"
#include "kuperberg/heegaard.hpp"

using namespace kuperberg;

namespace {

std::map<std::string, long> s_powers(const FramedHeegaardDiagram& d) {
  std::map<std::string, long> out;
  for (const auto& e : rotation_exponents(d)) {
    out[e.point] = e.s;
    CHECK(e.t == 0);
  }
  return out;
}

const char* kMinimal = R"(genus 1
lower a theta 1/2 phi 1/2 order x
upper b theta 1/2 phi -1/2 order x
point x on a b theta_eta 0 theta_mu 1/4 phi_eta 0 phi_mu 0
)";

}  // namespace

TEST_CASE("Weeks antipode powers match the published tables") {
  const auto s = s_powers(builtin_diagram("weeks"));
  const long p[] = {-1, 0, -1, -3, -2, -3, -1, -1, 1};
  const long q[] = {-1, 0, 0, 0, -2, -2, -1, 0, 0};
  for (int i = 0; i < 9; ++i) {
    CHECK(s.at("p" + std::to_string(i + 1)) == p[i]);
    CHECK(s.at("q" + std::to_string(i + 1)) == q[i]);
  }
  CHECK(s.size() == 18);
}

TEST_CASE("3-torus antipode powers match the published table") {
  const auto s = s_powers(builtin_diagram("torus3"));
  const std::map<std::string, long> expected{{"p1", 1}, {"p2", 2}, {"p3", 2}, {"p4", 1}, {"q1", 1}, {"q2", 1},
                                             {"q3", 2}, {"q4", 2}, {"r1", 1}, {"r2", 3}, {"r3", 2}, {"r4", 2}};
  CHECK(s == expected);
}

TEST_CASE("built-in diagrams are valid and round-trip") {
  for (const auto& name : builtin_diagram_names()) {
    CAPTURE(name);
    const auto d = builtin_diagram(name);
    const Report r = validate(d);
    CHECK_MESSAGE(r.all_passed(), r);
    auto back = parse_khd(serialize_khd(d));
    CHECK(serialize_khd(back) == serialize_khd(d));
    CHECK(back.points.size() == d.points.size());
  }
  const auto w = builtin_diagram("weeks");
  CHECK(w.genus == 2);
  CHECK(w.points.size() == 18);
  CHECK(w.upper[0].order == std::vector<std::string>{"q1", "q7", "p4", "p1", "q3", "p8", "q5", "p6", "p3"});
  CHECK(w.upper[0].theta == mpq_class(-1, 2));
  CHECK(w.lower[0].theta == mpq_class(1, 2));
  CHECK(w.lower[0].phi == mpq_class(1, 2));
  CHECK(builtin_diagram("torus3").points.size() == 12);
  CHECK(builtin_diagram("sphere3").points.size() == 1);
  CHECK_THROWS_AS(builtin_diagram("poincare"), Error);
}

TEST_CASE("parsing") {
  const auto d = parse_khd(kMinimal);
  CHECK(d.points.size() == 1);
  CHECK(validate(d).all_passed());
  CHECK(rotation_exponents(d)[0].s == 0);

  auto code = [](const std::string& text) {
    try {
      parse_khd(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::bad_params;
  };
  CHECK(code(std::string(kMinimal) + "point x on a b theta_eta 0 theta_mu 0 phi_eta 0 phi_mu 0\n") ==
        ErrorCode::duplicate_point_id);
  CHECK(code("genus 1\npoint x on a b theta_eta 0 theta_mu 0 phi_eta 0 phi_mu 0\n") == ErrorCode::unknown_curve_ref);
  try {
    parse_khd("genus 1\nlower a theta 1/2 phi 1/2 order\nupper b theta 1/x phi 0 order\n");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() == 15);
  }
}

TEST_CASE("validation reports every violation") {
  auto d = builtin_diagram("weeks");
  d.upper[0].theta = -d.upper[0].theta;
  Report r = validate(d);
  CHECK_FALSE(r.passed("curve mu1 admissible"));
  CHECK(r.failure_count() == 1);

  d = builtin_diagram("weeks");
  d.points[0].theta_mu = mpq_class(1, 8);
  d.upper[1].order.pop_back();
  r = validate(d);
  CHECK_FALSE(r.passed("point p1 rotations are quarter-integers"));
  CHECK_FALSE(r.passed("point p1 has integral s"));
  CHECK_FALSE(r.passed("curve mu2 order is a permutation of its points"));
  CHECK_THROWS_AS(rotation_exponents(d), Error);
}
