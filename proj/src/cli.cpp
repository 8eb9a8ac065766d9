#include "kuperberg/cli.hpp"

#include <CLI11.hpp>

#include <iomanip>
#include <sstream>

#include "kuperberg/catalog.hpp"
#include "kuperberg/error.hpp"
#include "kuperberg/evaluator.hpp"
#include "kuperberg/heegaard.hpp"
#include "kuperberg/hopf_io.hpp"
#include "kuperberg/twist.hpp"
#include "text.hpp"

namespace kuperberg {

namespace {

struct Options {
  std::string field;
  bool allow_degenerate = false;
  bool no_verify = false;
  bool machine = false;
  std::string convention = "g-action";
  std::uint64_t budget = 0;  // 0: default_budget()
  long degree = 0;
  bool naive = false;
  int trials = 10;
  std::uint64_t seed = 1;
  std::string cocycle;
  std::vector<std::string> inputs;
};

// Human output aligns "key: value"; machine output is one key=value record per line.
class Printer {
 public:
  Printer(std::ostream& os, bool machine) : os_(os), machine_(machine) {}
  void kv(const std::string& key, const std::string& value) {
    if (machine_)
      os_ << key << '=' << value << '\n';
    else
      os_ << std::left << std::setw(24) << key + ":" << value << '\n';
  }
  bool machine() const { return machine_; }

  // Returns the number of failures.
  std::size_t report(const std::string& prefix, const Report& r) {
    kv(prefix + ".checks", std::to_string(r.checks().size()));
    kv(prefix + ".failures", std::to_string(r.failure_count()));
    for (const auto& f : r.failures()) kv(prefix + ".failed", f.name + " | " + f.witness);
    return r.failure_count();
  }

 private:
  std::ostream& os_;
  bool machine_;
};

std::string scalar_text(const Scalar& s, bool machine) { return machine ? text::coefficient_text(s) : s.to_string(); }

std::string vector_text(const HopfAlgebra& H, const Vector& v, bool machine) {
  if (machine) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + text::coefficient_text(v[i]);
    return out;
  }
  return TensorElement::from_vector(H.field(), v).to_string(H.basis_labels());
}

constexpr std::string_view kCatalogPrefix = "catalog:";
constexpr std::string_view kBuiltinPrefix = "builtin:";

HopfAlgebra load_algebra(const std::string& source, const Options& o) {
  if (source.starts_with(kCatalogPrefix)) {
    CatalogOptions c;
    if (!o.field.empty()) c.field = Field::parse(o.field);
    c.allow_degenerate = o.allow_degenerate;
    return catalog(source.substr(kCatalogPrefix.size()), c);
  }
  if (!o.field.empty()) throw Error(ErrorCode::bad_params, "--field only applies to catalog algebras");
  return load_hopf(source, !o.no_verify);
}

FramedHeegaardDiagram load_diagram(const std::string& source) {
  if (source.starts_with(kBuiltinPrefix)) return builtin_diagram(source.substr(kBuiltinPrefix.size()));
  return load_khd(source);
}

EvaluateOptions evaluate_options(const Options& o) {
  EvaluateOptions e;
  e.degree_offset = o.degree;
  e.convention = parse_convention(o.convention);
  e.budget = o.budget ? o.budget : default_budget();
  return e;
}

int cmd_axioms(const Options& o, Printer& p) {
  Options relaxed = o;
  relaxed.no_verify = true;  // the point is to report, not to refuse
  const HopfAlgebra H = load_algebra(o.inputs[0], relaxed);
  p.kv("algebra", H.name());
  p.kv("dim", std::to_string(H.dim()));
  p.kv("field", H.field().to_string());
  return p.report("axioms", check_hopf_axioms(H)) ? 1 : 0;
}

int cmd_integrals(const Options& o, Printer& p) {
  const HopfAlgebra H = load_algebra(o.inputs[0], o);
  const IntegralPair P = compute_integrals(H);
  const bool m = p.machine();
  p.kv("algebra", H.name());
  p.kv("field", H.field().to_string());
  p.kv("Lambda", vector_text(H, P.Lambda, m));
  p.kv("lambda", vector_text(H, P.lambda, m));
  p.kv("g", vector_text(H, P.g, m));
  p.kv("alpha", vector_text(H, P.alpha, m));
  p.kv("alpha(g)", scalar_text(dot(P.alpha, P.g), m));
  p.kv("eps(Lambda)", scalar_text(H.counit_of(P.Lambda), m));
  p.kv("unimodular", P.g == H.unit() && P.alpha == H.counit() ? "yes" : "no");
  return p.report("integrals", check_integrals(H, P)) ? 1 : 0;
}

int cmd_validate(const Options& o, Printer& p) {
  const FramedHeegaardDiagram d = load_diagram(o.inputs[0]);
  p.kv("diagram", d.name);
  p.kv("genus", std::to_string(d.genus));
  p.kv("points", std::to_string(d.points.size()));
  const Report r = validate(d);
  const auto failures = p.report("validate", r);
  p.kv("result", failures ? "INVALID" : "VALID");
  return failures ? 1 : 0;
}

int cmd_exponents(const Options& o, Printer& p) {
  const FramedHeegaardDiagram d = load_diagram(o.inputs[0]);
  p.kv("diagram", d.name);
  for (const auto& e : rotation_exponents(d)) {
    const std::string v = "S^" + std::to_string(e.s) + " T^" + std::to_string(e.t);
    p.kv("point." + e.point, p.machine() ? std::to_string(e.s) + " " + std::to_string(e.t) : v);
  }
  return 0;
}

int cmd_invariant(const Options& o, Printer& p) {
  const HopfAlgebra H = load_algebra(o.inputs[0], o);
  const FramedHeegaardDiagram d = load_diagram(o.inputs[1]);
  const IntegralPair P = compute_integrals(H);
  const EvaluateOptions e = evaluate_options(o);
  const InvariantResult r = o.naive ? evaluate_naive(H, P, d, e) : evaluate(H, P, d, e);
  p.kv("algebra", r.algebra);
  p.kv("diagram", r.diagram);
  p.kv("field", H.field().to_string());
  p.kv("convention", std::string(to_string(r.convention)));
  p.kv("degree_offset", std::to_string(r.degree_offset));
  p.kv("method", o.naive ? "naive" : "planned");
  p.kv("value", scalar_text(r.value, p.machine()));
  if (!o.naive) {
    p.kv("plan.cost_estimate", std::to_string(r.cost_estimate));
    p.kv("plan.max_intermediate", std::to_string(r.stats.max_intermediate));
    p.kv("plan.join_pairs", std::to_string(r.stats.join_pairs));
    p.kv("plan.steps", std::to_string(r.stats.steps));
  }
  return 0;
}

int cmd_twist_check(const Options& o, Printer& p) {
  const HopfAlgebra H = load_algebra(o.inputs[0], o);
  const TensorElement F = load_cocycle(o.inputs[1], H);
  const FramedHeegaardDiagram d = load_diagram(o.inputs[2]);
  const Cocycle C = verify_cocycle(H, F);
  const IntegralPair P = compute_integrals(H);
  const GaugeResult g = gauge_check(H, P, C, d, evaluate_options(o));
  p.kv("algebra", H.name());
  p.kv("diagram", d.name);
  p.kv("convention", o.convention);
  p.kv("z", scalar_text(g.z, p.machine()));
  p.kv("z_twisted", scalar_text(g.z_twisted, p.machine()));
  p.kv("result", g.equal ? "EQUAL" : "DIFFERENT");
  return g.equal ? 0 : 1;
}

int cmd_suites(const Options& o, Printer& p) {
  const HopfAlgebra H = load_algebra(o.inputs[0], o);
  const IntegralPair P = compute_integrals(H);
  p.kv("algebra", H.name());
  p.kv("trials", std::to_string(o.trials));
  p.kv("seed", std::to_string(o.seed));
  std::size_t failures = p.report("trace", trace_identity_suite(H, P, o.trials, o.seed));
  failures += p.report("exchange", lemma_suite(H, P, o.trials, o.seed));
  if (!o.cocycle.empty()) {
    const Cocycle C = verify_cocycle(H, load_cocycle(o.cocycle, H));
    failures += p.report("cocycle", prop22_suite(H, P, C, 4, o.trials, o.seed));
    failures += p.report("twist", twist_invariants(H, C, 4));
  }
  p.kv("result", failures ? "FAIL" : "PASS");
  return failures ? 1 : 0;
}

int cmd_catalog_list(const Options&, Printer& p) {
  for (const auto& name : catalog_names()) p.kv("algebra", name);
  for (const auto& name : builtin_diagram_names()) p.kv("diagram", name);
  return 0;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::syntax_error:
    case ErrorCode::parse_error:
    case ErrorCode::bad_field:
    case ErrorCode::bad_params:
    case ErrorCode::unknown_algebra:
    case ErrorCode::unknown_diagram:
    case ErrorCode::duplicate_point_id:
    case ErrorCode::unknown_curve_ref:
    case ErrorCode::dimension_mismatch:
    case ErrorCode::field_mismatch:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Kuperberg invariants of framed Heegaard diagrams over exact fields", "kuperberg"};
  app.require_subcommand(1, 1);
  app.add_flag("--machine", o.machine, "Print key=value records");

  const auto algebra_flags = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "Field for catalog algebras: rational, prime:P, cyclotomic:N");
    sub->add_flag("--allow-degenerate", o.allow_degenerate, "Allow prime fields dividing the dimension");
    sub->add_flag("--no-verify", o.no_verify, "Skip the axiom check when reading a .hopf file");
  };
  const auto evaluation_flags = [&](CLI::App* sub) {
    sub->add_option("--convention", o.convention, "Half-integer cointegral convention")
        ->check(CLI::IsMember({"g-action", "antipode-inverse", "antipode"}));
    sub->add_option("--budget", o.budget, "Term budget for contraction (default 2^26 or KUPERBERG_BUDGET)")
        ->check(CLI::PositiveNumber);
  };

  struct Command {
    CLI::App* app;
    int (*run)(const Options&, Printer&);
  };
  std::vector<Command> commands;
  const auto add = [&](const char* name, const char* help, std::vector<const char*> positionals,
                       int (*fn)(const Options&, Printer&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    if (!positionals.empty()) {
      std::string names;
      for (auto n : positionals) names += std::string(names.empty() ? "" : " ") + n;
      sub->add_option("inputs", o.inputs, names)->required()->expected(static_cast<int>(positionals.size()));
    }
    sub->add_flag("--machine", o.machine, "Print key=value records");
    commands.push_back({sub, fn});
    return sub;
  };

  algebra_flags(add("axioms", "Check the Hopf algebra axioms", {"ALGEBRA"}, cmd_axioms));
  algebra_flags(add("integrals", "Integrals, cointegrals and modular data", {"ALGEBRA"}, cmd_integrals));
  add("validate", "Validate a framed Heegaard diagram", {"DIAGRAM"}, cmd_validate);
  add("exponents", "Antipode and T exponents at each intersection point", {"DIAGRAM"}, cmd_exponents);
  {
    CLI::App* sub = add("invariant", "Evaluate the invariant", {"ALGEBRA", "DIAGRAM"}, cmd_invariant);
    algebra_flags(sub);
    evaluation_flags(sub);
    sub->add_option("--degree", o.degree, "Framing degree offset");
    sub->add_flag("--naive", o.naive, "Use brute-force expansion instead of a contraction plan");
  }
  {
    CLI::App* sub = add("twist-check", "Compare the invariant before and after a twist",
                        {"ALGEBRA", "COCYCLE", "DIAGRAM"}, cmd_twist_check);
    algebra_flags(sub);
    evaluation_flags(sub);
  }
  {
    CLI::App* sub = add("suites", "Run the randomized identity suites", {"ALGEBRA"}, cmd_suites);
    algebra_flags(sub);
    sub->add_option("--trials", o.trials, "Random trials per identity")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--cocycle", o.cocycle, "Also run the cocycle identities for this twist");
  }
  add("catalog-list", "List catalog algebras and built-in diagrams", {}, cmd_catalog_list);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (const auto& c : commands)
      if (c.app->parsed()) err << c.app->help();
    if (std::none_of(commands.begin(), commands.end(), [](const Command& c) { return c.app->parsed(); }))
      err << app.help();
    return 2;
  }

  Printer printer(out, o.machine);
  for (const auto& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      return c.run(o, printer);
    } catch (const SyntaxError& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return exit_code_for(e.code());
    } catch (const std::exception& e) {
      err << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

}  // namespace kuperberg
