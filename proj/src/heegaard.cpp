#include "kuperberg/heegaard.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "kuperberg/error.hpp"
#include "text.hpp"

namespace kuperberg {

namespace {

// "p10" sorts after "p9": compare the alphabetic prefix, then the numeric suffix.
bool natural_less(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::size_t i = s.size();
    while (i > 0 && s[i - 1] >= '0' && s[i - 1] <= '9') --i;
    const std::string digits = s.substr(i);
    return std::tuple(s.substr(0, i), digits.size(), digits);
  };
  return split(a) < split(b);
}

bool has_denominator_dividing(const mpq_class& q, unsigned long d) {
  return mpz_divisible_p(mpz_class(d).get_mpz_t(), q.get_den().get_mpz_t()) != 0;
}

bool is_odd_half(const mpq_class& q) { return q.get_den() == 2; }

std::string rational_text(const mpq_class& q) { return q.get_str(); }

std::string curve_line(const CurveRecord& c) {
  std::ostringstream os;
  os << (c.kind == CurveKind::lower ? "lower " : "upper ") << c.id << " theta " << rational_text(c.theta) << " phi "
     << rational_text(c.phi) << " order";
  for (const auto& p : c.order) os << ' ' << p;
  return os.str();
}

long exact_integer(const mpq_class& q, const std::string& what) {
  if (q.get_den() != 1) throw Error(ErrorCode::non_integral_exponent, what + " = " + q.get_str() + " is not an integer");
  return q.get_num().get_si();
}

mpq_class s_value(const IntersectionPoint& p) { return 2 * (p.theta_eta - p.theta_mu) + mpq_class(1, 2); }
mpq_class t_value(const IntersectionPoint& p) { return p.phi_eta - p.phi_mu; }

}  // namespace

const CurveRecord* FramedHeegaardDiagram::find_curve(std::string_view id) const {
  for (const auto* list : {&lower, &upper})
    for (const auto& c : *list)
      if (c.id == id) return &c;
  return nullptr;
}

const IntersectionPoint* FramedHeegaardDiagram::find_point(std::string_view id) const {
  for (const auto& p : points)
    if (p.id == id) return &p;
  return nullptr;
}

std::size_t FramedHeegaardDiagram::point_index(std::string_view id) const {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (points[i].id == id) return i;
  throw Error(ErrorCode::invalid_diagram, "no point '" + std::string(id) + "'");
}

FramedHeegaardDiagram parse_khd(std::string_view source) {
  using text::at;
  const auto lines = text::tokenize(source);
  FramedHeegaardDiagram d;
  bool have_genus = false;
  std::set<std::string> curve_ids;
  // Curve references are resolved after all lines are read, so their positions are kept.
  struct Ref {
    std::size_t line, column;
    std::string id;
  };
  std::vector<Ref> refs;

  auto keyword = [&](const text::Line& line, std::size_t i, std::string_view word) {
    const auto& t = at(line, i, "'" + std::string(word) + "'");
    if (t.text != word) throw SyntaxError(line.number, t.column, "'" + std::string(word) + "'");
  };
  auto rational = [&](const text::Line& line, std::size_t i) { return text::to_rational(line, at(line, i, "rational a/b")); };

  for (const auto& line : lines) {
    const std::string_view key = line.tokens[0].text;
    if (key == "name") {
      d.name = std::string(at(line, 1, "diagram name").text);
      text::expect_end(line, 2);
    } else if (key == "genus") {
      if (have_genus) throw SyntaxError(line.number, 1, "a single 'genus' line");
      d.genus = text::to_index(line, at(line, 1, "genus"), "genus");
      have_genus = true;
      text::expect_end(line, 2);
    } else if (key == "lower" || key == "upper") {
      CurveRecord c;
      c.kind = key == "lower" ? CurveKind::lower : CurveKind::upper;
      const auto& id = at(line, 1, "curve id");
      c.id = std::string(id.text);
      if (!curve_ids.insert(c.id).second) throw SyntaxError(line.number, id.column, "a curve id not used before");
      keyword(line, 2, "theta");
      c.theta = rational(line, 3);
      keyword(line, 4, "phi");
      c.phi = rational(line, 5);
      keyword(line, 6, "order");
      for (std::size_t i = 7; i < line.tokens.size(); ++i) c.order.emplace_back(line.tokens[i].text);
      (c.kind == CurveKind::lower ? d.lower : d.upper).push_back(std::move(c));
    } else if (key == "point") {
      IntersectionPoint p;
      p.id = std::string(at(line, 1, "point id").text);
      if (d.find_point(p.id))
        throw Error(ErrorCode::duplicate_point_id,
                    "line " + std::to_string(line.number) + ": point '" + p.id + "' is defined twice");
      keyword(line, 2, "on");
      const auto& lo = at(line, 3, "lower curve id");
      const auto& up = at(line, 4, "upper curve id");
      p.lower = std::string(lo.text);
      p.upper = std::string(up.text);
      refs.push_back({line.number, lo.column, p.lower});
      refs.push_back({line.number, up.column, p.upper});
      keyword(line, 5, "theta_eta");
      p.theta_eta = rational(line, 6);
      keyword(line, 7, "theta_mu");
      p.theta_mu = rational(line, 8);
      keyword(line, 9, "phi_eta");
      p.phi_eta = rational(line, 10);
      keyword(line, 11, "phi_mu");
      p.phi_mu = rational(line, 12);
      text::expect_end(line, 13);
      d.points.push_back(std::move(p));
    } else {
      throw SyntaxError(line.number, line.tokens[0].column, "one of name, genus, lower, upper, point");
    }
  }
  if (!have_genus) throw SyntaxError(lines.empty() ? 1 : lines.back().number, 1, "a 'genus' line");
  for (const auto& r : refs)
    if (!curve_ids.count(r.id))
      throw Error(ErrorCode::unknown_curve_ref, "line " + std::to_string(r.line) + ", column " +
                                                    std::to_string(r.column) + ": no curve named '" + r.id + "'");
  return d;
}

FramedHeegaardDiagram load_khd(const std::string& path) {
  FramedHeegaardDiagram d = parse_khd(text::read_file(path));
  if (d.name.empty()) {
    std::string stem = path.substr(path.find_last_of('/') + 1);
    d.name = stem.substr(0, stem.rfind('.'));
  }
  return d;
}

std::string serialize_khd(const FramedHeegaardDiagram& d) {
  std::ostringstream os;
  if (!d.name.empty()) os << "name " << d.name << '\n';
  os << "genus " << d.genus << '\n';
  auto by_id = [](const auto& a, const auto& b) { return natural_less(a.id, b.id); };
  for (auto list : {d.lower, d.upper}) {
    std::sort(list.begin(), list.end(), by_id);
    for (const auto& c : list) os << curve_line(c) << '\n';
  }
  auto points = d.points;
  std::sort(points.begin(), points.end(), by_id);
  for (const auto& p : points)
    os << "point " << p.id << " on " << p.lower << ' ' << p.upper << " theta_eta " << rational_text(p.theta_eta)
       << " theta_mu " << rational_text(p.theta_mu) << " phi_eta " << rational_text(p.phi_eta) << " phi_mu "
       << rational_text(p.phi_mu) << '\n';
  return os.str();
}

Report validate(const FramedHeegaardDiagram& d) {
  Report r;
  r.record("genus positive", d.genus >= 1, "genus 0");
  r.record("lower curve count", d.lower.size() == d.genus,
           std::to_string(d.lower.size()) + " lower curves for genus " + std::to_string(d.genus));
  r.record("upper curve count", d.upper.size() == d.genus,
           std::to_string(d.upper.size()) + " upper curves for genus " + std::to_string(d.genus));

  for (const auto& p : d.points) {
    const CurveRecord* lo = d.find_curve(p.lower);
    const CurveRecord* up = d.find_curve(p.upper);
    r.record("point " + p.id + " lies on a lower curve", lo && lo->kind == CurveKind::lower, "'" + p.lower + "' is not a lower curve");
    r.record("point " + p.id + " lies on an upper curve", up && up->kind == CurveKind::upper, "'" + p.upper + "' is not an upper curve");
    const bool quarter = has_denominator_dividing(p.theta_eta, 4) && has_denominator_dividing(p.theta_mu, 4);
    r.record("point " + p.id + " rotations are quarter-integers", quarter,
             "theta_eta " + p.theta_eta.get_str() + ", theta_mu " + p.theta_mu.get_str());
    const bool half = has_denominator_dividing(p.phi_eta, 2) && has_denominator_dividing(p.phi_mu, 2);
    r.record("point " + p.id + " twist counts are half-integers", half,
             "phi_eta " + p.phi_eta.get_str() + ", phi_mu " + p.phi_mu.get_str());
    r.record("point " + p.id + " has integral s", s_value(p).get_den() == 1, "s = " + s_value(p).get_str());
    r.record("point " + p.id + " has integral t", t_value(p).get_den() == 1, "t = " + t_value(p).get_str());
  }

  for (const auto* list : {&d.lower, &d.upper})
    for (const auto& c : *list) {
      const bool lower = c.kind == CurveKind::lower;
      std::multiset<std::string> listed(c.order.begin(), c.order.end());
      std::multiset<std::string> incident;
      for (const auto& p : d.points)
        if ((lower ? p.lower : p.upper) == c.id) incident.insert(p.id);
      std::string witness;
      if (listed != incident) {
        std::ostringstream os;
        os << "order lists";
        for (const auto& id : listed) os << ' ' << id;
        os << " but incident points are";
        for (const auto& id : incident) os << ' ' << id;
        witness = os.str();
      }
      r.record("curve " + c.id + " order is a permutation of its points", listed == incident, witness);
      r.record("curve " + c.id + " total rotation is a half-integer", is_odd_half(c.theta), "theta " + c.theta.get_str());
      r.record("curve " + c.id + " total twist is a half-integer", is_odd_half(c.phi),
               "phi " + c.phi.get_str() + " (the base point contributes half a unit)");
      const bool admissible = lower ? c.theta == c.phi : c.theta == -c.phi;
      r.record("curve " + c.id + " admissible", admissible,
               std::string(lower ? "theta != phi" : "theta != -phi") + ": theta " + c.theta.get_str() + ", phi " +
                   c.phi.get_str());
    }
  return r;
}

std::vector<PointExponent> rotation_exponents(const FramedHeegaardDiagram& d) {
  std::vector<PointExponent> out;
  out.reserve(d.points.size());
  for (const auto& p : d.points)
    out.push_back({p.id, exact_integer(s_value(p), "s(" + p.id + ")"), exact_integer(t_value(p), "t(" + p.id + ")")});
  return out;
}

namespace {

struct PointRow {
  const char* id;
  const char* lower;
  const char* upper;
  mpq_class theta_eta, theta_mu;
};

FramedHeegaardDiagram assemble(std::string name, std::size_t genus, const std::vector<CurveRecord>& curves,
                               const std::vector<PointRow>& rows) {
  FramedHeegaardDiagram d;
  d.name = std::move(name);
  d.genus = genus;
  for (const auto& c : curves) (c.kind == CurveKind::lower ? d.lower : d.upper).push_back(c);
  for (const auto& r : rows) d.points.push_back({r.id, r.lower, r.upper, r.theta_eta, r.theta_mu, 0, 0});
  return d;
}

CurveRecord curve(const char* id, CurveKind kind, mpq_class theta, std::vector<std::string> order) {
  // No twist fronts away from the base points, so phi is fixed by admissibility.
  const mpq_class phi = kind == CurveKind::lower ? theta : mpq_class(-theta);
  return {id, kind, std::move(order), theta, phi};
}

mpq_class q(long num, long den = 1) { return mpq_class(num, den); }

FramedHeegaardDiagram weeks() {
  const auto L = CurveKind::lower, U = CurveKind::upper;
  std::vector<CurveRecord> curves{
      curve("eta1", L, q(1, 2), {"p1", "p2", "p3", "p4", "p5", "p6", "p7", "p8", "p9"}),
      curve("eta2", L, q(1, 2), {"q1", "q2", "q3", "q4", "q5", "q6", "q7", "q8", "q9"}),
      curve("mu1", U, q(-1, 2), {"q1", "q7", "p4", "p1", "q3", "p8", "q5", "p6", "p3"}),
      curve("mu2", U, q(1, 2), {"p9", "q4", "p7", "q6", "q9", "p2", "p5", "q8", "q2"}),
  };
  std::vector<PointRow> rows{
      {"p1", "eta1", "mu1", q(0), q(3, 4)},  {"p2", "eta1", "mu2", q(0), q(1, 4)},
      {"p3", "eta1", "mu1", q(0), q(3, 4)},  {"p4", "eta1", "mu1", q(0), q(7, 4)},
      {"p5", "eta1", "mu2", q(0), q(5, 4)},  {"p6", "eta1", "mu1", q(0), q(7, 4)},
      {"p7", "eta1", "mu2", q(0), q(3, 4)},  {"p8", "eta1", "mu1", q(0), q(3, 4)},
      {"p9", "eta1", "mu2", q(1, 4), q(0)},  {"q1", "eta2", "mu1", q(-1, 4), q(1, 2)},
      {"q2", "eta2", "mu2", q(0), q(1, 4)},  {"q3", "eta2", "mu1", q(0), q(1, 4)},
      {"q4", "eta2", "mu2", q(0), q(1, 4)},  {"q5", "eta2", "mu1", q(0), q(5, 4)},
      {"q6", "eta2", "mu2", q(0), q(5, 4)},  {"q7", "eta2", "mu1", q(0), q(3, 4)},
      {"q8", "eta2", "mu2", q(0), q(1, 4)},  {"q9", "eta2", "mu2", q(0), q(1, 4)},
  };
  return assemble("weeks", 2, curves, rows);
}

FramedHeegaardDiagram torus3() {
  const auto L = CurveKind::lower, U = CurveKind::upper;
  std::vector<CurveRecord> curves{
      curve("eta1", L, q(1, 2), {"p1", "p2", "p3", "p4"}), curve("eta2", L, q(1, 2), {"q1", "q2", "q3", "q4"}),
      curve("eta3", L, q(1, 2), {"r1", "r2", "r3", "r4"}), curve("mu1", U, q(-1, 2), {"p1", "r4", "p3", "r2"}),
      curve("mu2", U, q(-1, 2), {"q1", "p2", "q3", "p4"}), curve("mu3", U, q(-1, 2), {"r1", "q2", "r3", "q4"}),
  };
  std::vector<PointRow> rows{
      {"p1", "eta1", "mu1", q(1, 4), q(0)},     {"p2", "eta1", "mu2", q(1, 2), q(-1, 4)},
      {"p3", "eta1", "mu1", q(1, 2), q(-1, 4)}, {"p4", "eta1", "mu2", q(1, 2), q(1, 4)},
      {"q1", "eta2", "mu2", q(1, 4), q(0)},     {"q2", "eta2", "mu3", q(1, 2), q(1, 4)},
      {"q3", "eta2", "mu2", q(1, 2), q(-1, 4)}, {"q4", "eta2", "mu3", q(1, 2), q(-1, 4)},
      {"r1", "eta3", "mu3", q(1, 4), q(0)},     {"r2", "eta3", "mu1", q(1, 2), q(-3, 4)},
      {"r3", "eta3", "mu3", q(1, 2), q(-1, 4)}, {"r4", "eta3", "mu1", q(1, 2), q(-1, 4)},
  };
  return assemble("torus3", 3, curves, rows);
}

// Genus one, one crossing with s = 0, and both twisted integrals untwisted, so Z = lambda(Lambda) = 1.
FramedHeegaardDiagram sphere3() {
  std::vector<CurveRecord> curves{curve("eta1", CurveKind::lower, q(1, 2), {"p1"}),
                                  curve("mu1", CurveKind::upper, q(1, 2), {"p1"})};
  return assemble("sphere3", 1, curves, {{"p1", "eta1", "mu1", q(0), q(1, 4)}});
}

// Genus one with parallel curves: Z = eps(Lambda) lambda(1).
FramedHeegaardDiagram s1xs2() {
  std::vector<CurveRecord> curves{curve("eta1", CurveKind::lower, q(1, 2), {}),
                                  curve("mu1", CurveKind::upper, q(1, 2), {})};
  return assemble("s1xs2", 1, curves, {});
}

}  // namespace

FramedHeegaardDiagram builtin_diagram(std::string_view name) {
  if (name == "weeks") return weeks();
  if (name == "torus3") return torus3();
  if (name == "sphere3") return sphere3();
  if (name == "s1xs2") return s1xs2();
  throw Error(ErrorCode::unknown_diagram, "no built-in diagram '" + std::string(name) + "'");
}

std::vector<std::string> builtin_diagram_names() { return {"weeks", "torus3", "sphere3", "s1xs2"}; }

}  // namespace kuperberg
