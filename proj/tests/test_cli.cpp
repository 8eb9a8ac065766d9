#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "kuperberg/cli.hpp"

using namespace kuperberg;

namespace {

const std::string kData = KUPERBERG_DATA_DIR;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

struct Invocation {
  std::vector<std::string> args;
  int code;
  std::string expect;  // substring of stdout (or stderr for failures)
};

}  // namespace

TEST_CASE("regression corpus") {
  const std::vector<Invocation> corpus = {
      {{"catalog-list"}, 0, "algebra=sweedler_h4"},
      {{"invariant", "catalog:group_algebra_Z2", "builtin:torus3"}, 0, "value=8\n"},
      {{"invariant", "catalog:sweedler_h4", kData + "/weeks.khd", "--degree", "1"}, 0, "value=25\n"},
      {{"invariant", "catalog:sweedler_h4", "builtin:weeks", "--naive"}, 0, "value=-25\n"},
      {{"twist-check", "catalog:sweedler_h4", kData + "/h4_twist.cocycle", "builtin:weeks"}, 0, "result=EQUAL"},
      {{"twist-check", "catalog:dual_group_algebra_Z2xZ2", kData + "/klein_sign.cocycle", kData + "/torus3.khd"},
       0,
       "result=EQUAL"},
      {{"validate", kData + "/broken.khd"}, 1, "result=INVALID"},
      {{"validate", "builtin:weeks"}, 0, "result=VALID"},
      {{"axioms", kData + "/sweedler_h4.hopf"}, 0, "axioms.failures=0"},
      {{"integrals", "catalog:taft_3"}, 0, "alpha(g)=[0,1]"},
      {{"invariant", "catalog:sweedler_h4", "builtin:nosuch"}, 2, "UnknownDiagram"},
      {{"invariant", "catalog:sweedler_h4", "builtin:weeks", "--budget", "2"}, 1, "PlanFailure"},
  };
  for (const auto& inv : corpus) {
    std::vector<std::string> args = inv.args;
    args.push_back("--machine");
    const Outcome a = run(args);
    const Outcome b = run(args);
    CAPTURE(args);
    CAPTURE(a.out);
    CAPTURE(a.err);
    CHECK(a.code == inv.code);
    CHECK((a.code == 0 || a.code == 1 ? a.out + a.err : a.err).find(inv.expect) != std::string::npos);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"invariant", "catalog:sweedler_h4"}).code == 2);
  CHECK(run({"invariant", "catalog:sweedler_h4", "builtin:weeks", "--convention", "sideways"}).code == 2);
  CHECK(run({"exponents", kData + "/does_not_exist.khd"}).code == 2);
  CHECK(run({"suites", "catalog:group_algebra_Z2", "--trials", "0"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("malformed and broken inputs") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto bad_syntax = (dir / "kuperberg_bad.khd").string();
  std::ofstream(bad_syntax) << "genus 1\nlower eta1 theta one\n";
  const Outcome s = run({"validate", bad_syntax});
  CHECK(s.code == 2);
  CHECK(s.err.find("line 2") != std::string::npos);

  std::ifstream in(kData + "/sweedler_h4.hopf");
  std::stringstream text;
  text << in.rdbuf();
  std::string broken = text.str();
  broken.replace(broken.find("antipode 2 3 -1"), 15, "antipode 2 3 1");
  const auto broken_path = (dir / "kuperberg_broken.hopf").string();
  std::ofstream(broken_path) << broken;
  const Outcome a = run({"axioms", broken_path, "--machine"});
  CHECK(a.code == 1);
  CHECK(a.out.find("axioms.failed=") != std::string::npos);
  CHECK(run({"integrals", broken_path}).code == 1);
  CHECK(run({"integrals", broken_path, "--no-verify"}).code != 2);
}

TEST_CASE("suites and human output") {
  const Outcome s = run({"suites", "catalog:sweedler_h4", "--trials", "2", "--cocycle", kData + "/h4_twist.cocycle"});
  CHECK(s.code == 0);
  CHECK(s.out.find("PASS") != std::string::npos);
  const Outcome h = run({"invariant", "catalog:sweedler_h4", "builtin:weeks"});
  CHECK(h.code == 0);
  CHECK(h.out.find("value:") != std::string::npos);
  CHECK(run({"exponents", "builtin:torus3", "--machine"}).out.find("point.p1=1 0") != std::string::npos);
}
