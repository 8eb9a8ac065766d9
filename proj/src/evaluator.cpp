#include "kuperberg/evaluator.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <unordered_map>

#include "kuperberg/error.hpp"

namespace kuperberg {

namespace {

void require_valid(const FramedHeegaardDiagram& d) {
  const Report r = validate(d);
  if (!r.all_passed()) {
    const auto f = r.failures().front();
    throw Error(ErrorCode::invalid_diagram, d.name + ": " + f.name + " (" + f.witness + ")");
  }
}

Scalar degree_factor(const IntegralPair& P, long offset) {
  return dot(P.alpha, P.g).pow(offset);
}

// S^s T^t as one matrix, T applied first.
Matrix point_map(const HopfAlgebra& H, const IntegralPair& P, const PointExponent& e) {
  Matrix m = H.antipode_matrix(e.s);
  if (e.t != 0) m = m * tmap_matrix(H, P).pow(e.t);
  return m;
}

Scalar run(const TensorNetwork& net, std::uint64_t budget) {
  return contract(net, plan_network(net, budget), budget);
}

// Literal trace formulas are written against this: edges are single-use, S-powers are cached.
class Formula {
 public:
  explicit Formula(const HopfAlgebra& H) : H_(H), net_(H) {}

  TensorNetwork& net() { return net_; }
  std::vector<EdgeId> split(const Vector& x, std::size_t n) { return net_.coproduct(net_.element(x), n); }
  EdgeId el(const Vector& x) { return net_.element(x); }
  EdgeId S(long p, EdgeId e) {
    if (p == 0) return e;
    auto it = powers_.find(p);
    if (it == powers_.end()) it = powers_.emplace(p, H_.antipode_matrix(p)).first;
    return net_.apply(it->second, e, "S^" + std::to_string(p));
  }
  EdgeId mul(const std::vector<EdgeId>& factors) { return net_.product(factors); }
  void pair(const Vector& f, EdgeId e) { net_.pair(f, e); }
  /// Rank-one multilinear map: prod phi_i(args_i) times y.
  EdgeId rank_one(const std::vector<Vector>& phis, const Vector& y, const std::vector<EdgeId>& args) {
    for (std::size_t i = 0; i < args.size(); ++i) net_.pair(phis[i], args[i], "phi");
    return net_.element(y, "map value");
  }

 private:
  const HopfAlgebra& H_;
  TensorNetwork net_;
  std::map<long, Matrix> powers_;
};

}  // namespace

TensorNetwork build_network(const HopfAlgebra& H, const IntegralPair& P, const FramedHeegaardDiagram& d,
                            CointegralConvention convention) {
  require_valid(d);
  const auto exponents = rotation_exponents(d);
  TensorNetwork net(H);

  std::unordered_map<std::string, EdgeId> leg_of;
  for (const auto& eta : d.lower) {
    const EdgeId L = net.element(twisted_integral(H, P, eta.theta), "integral " + eta.id);
    const auto legs = net.coproduct(L, eta.order.size());
    for (std::size_t k = 0; k < legs.size(); ++k) leg_of[eta.order[k]] = legs[k];
  }

  std::unordered_map<std::string, EdgeId> label_of;
  for (const auto& e : exponents) {
    const EdgeId leg = leg_of.at(e.point);
    label_of[e.point] = (e.s == 0 && e.t == 0) ? leg : net.apply(point_map(H, P, e), leg, "label " + e.point);
  }

  for (const auto& mu : d.upper) {
    std::vector<EdgeId> word;
    for (const auto& p : mu.order) word.push_back(label_of.at(p));
    net.pair(twisted_cointegral(H, P, -mu.theta, convention), net.product(word), "cointegral " + mu.id);
  }
  return net;
}

ContractionPlan plan_contraction(const FramedHeegaardDiagram& d, const HopfAlgebra& H, const IntegralPair& P,
                                 const EvaluateOptions& options) {
  const TensorNetwork net = build_network(H, P, d, options.convention);
  if (options.plan) {
    check_plan(net, *options.plan);
    return *options.plan;
  }
  return plan_network(net, options.budget);
}

InvariantResult evaluate(const HopfAlgebra& H, const IntegralPair& P, const FramedHeegaardDiagram& d,
                         const EvaluateOptions& options) {
  const TensorNetwork net = build_network(H, P, d, options.convention);
  const ContractionPlan plan = options.plan ? *options.plan : plan_network(net, options.budget);
  InvariantResult r;
  r.value = contract(net, plan, options.budget, &r.stats) * degree_factor(P, options.degree_offset);
  r.diagram = d.name;
  r.algebra = H.name();
  r.degree_offset = options.degree_offset;
  r.convention = options.convention;
  r.cost_estimate = plan.cost_estimate;
  return r;
}

namespace {

// Brute-force data shared by both expansion directions.
struct NaiveSetup {
  std::vector<std::vector<Vector>> images;  // images[p][a] = S^s T^t (e_a) at point p
  struct Lower {
    std::vector<std::size_t> points;  // point index of each leg
    TensorElement expansion;
  };
  std::vector<Lower> lower;
  struct Upper {
    std::vector<std::size_t> points;
    Vector functional;
  };
  std::vector<Upper> upper;
  Scalar prefactor;  // counits of integrals on lower curves without points
};

NaiveSetup naive_setup(const HopfAlgebra& H, const IntegralPair& P, const FramedHeegaardDiagram& d,
                       CointegralConvention convention) {
  NaiveSetup s;
  const auto exponents = rotation_exponents(d);
  for (const auto& e : exponents) {
    const Matrix m = point_map(H, P, e);
    std::vector<Vector> cols;
    for (std::size_t a = 0; a < H.dim(); ++a) cols.push_back(m.column(a));
    s.images.push_back(std::move(cols));
  }
  s.prefactor = Scalar::one(H.field());
  for (const auto& eta : d.lower) {
    const Vector L = twisted_integral(H, P, eta.theta);
    if (eta.order.empty()) {
      s.prefactor *= H.counit_of(L);
      continue;
    }
    NaiveSetup::Lower l{{}, iterated_coproduct(H, eta.order.size(), L)};
    for (const auto& id : eta.order) l.points.push_back(d.point_index(id));
    s.lower.push_back(std::move(l));
  }
  for (const auto& mu : d.upper) {
    NaiveSetup::Upper u;
    for (const auto& id : mu.order) u.points.push_back(d.point_index(id));
    u.functional = twisted_cointegral(H, P, -mu.theta, convention);
    s.upper.push_back(std::move(u));
  }
  return s;
}

// Sum over every combination of coproduct summands, one per lower curve.
Scalar expand_lower(const HopfAlgebra& H, const NaiveSetup& s, std::uint64_t combos) {
  std::vector<std::vector<std::pair<TensorElement::Key, Scalar>>> terms;
  for (const auto& l : s.lower) terms.emplace_back(l.expansion.terms().begin(), l.expansion.terms().end());
  Scalar total = Scalar::zero(H.field());
  std::vector<std::size_t> idx(terms.size(), 0);
  std::vector<std::uint32_t> basis_at(s.images.size(), 0);
  for (std::uint64_t c = 0; c < combos; ++c) {
    Scalar coeff = Scalar::one(H.field());
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto& [key, value] = terms[i][idx[i]];
      coeff *= value;
      for (std::size_t k = 0; k < key.size(); ++k) basis_at[s.lower[i].points[k]] = key[k];
    }
    for (const auto& u : s.upper) {
      if (coeff.is_zero()) break;
      Vector acc = H.unit();
      for (auto p : u.points) acc = H.multiply(acc, s.images[p][basis_at[p]]);
      coeff *= dot(u.functional, acc);
    }
    total += coeff;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (++idx[i] < terms[i].size()) break;
      idx[i] = 0;
    }
  }
  return total;
}

// Sum over basis assignments along the upper curves for which every word pairs nonzero, looking
// the lower-curve coefficients up afterwards. Cheap when products of basis images are sparse.
Scalar expand_upper(const HopfAlgebra& H, const NaiveSetup& s, std::uint64_t budget) {
  using Assignment = std::vector<std::uint32_t>;
  std::uint64_t visited = 0;
  const auto spend = [&](std::uint64_t n) {
    visited += n;
    if (visited > budget) throw Error(ErrorCode::budget_exceeded, "naive expansion exceeds " + std::to_string(budget) + " terms");
  };
  std::vector<std::vector<std::pair<Assignment, Scalar>>> supports;
  for (const auto& u : s.upper) {
    std::vector<std::pair<Assignment, Scalar>> support;
    Assignment a(u.points.size());
    std::function<void(std::size_t, const Vector&)> walk = [&](std::size_t k, const Vector& prefix) {
      spend(1);
      if (k == u.points.size()) {
        Scalar v = dot(u.functional, prefix);
        if (!v.is_zero()) support.emplace_back(a, std::move(v));
        return;
      }
      for (std::uint32_t b = 0; b < H.dim(); ++b) {
        Vector next = H.multiply(prefix, s.images[u.points[k]][b]);
        if (std::all_of(next.begin(), next.end(), [](const Scalar& c) { return c.is_zero(); })) continue;
        a[k] = b;
        walk(k + 1, next);
      }
    };
    walk(0, H.unit());
    supports.push_back(std::move(support));
  }

  std::uint64_t combos = 1;
  for (const auto& sup : supports) {
    if (sup.empty()) return Scalar::zero(H.field());
    if (sup.size() > budget / combos) throw Error(ErrorCode::budget_exceeded, "naive expansion exceeds budget");
    combos *= sup.size();
  }
  spend(combos);

  Scalar total = Scalar::zero(H.field());
  std::vector<std::size_t> idx(supports.size(), 0);
  std::vector<std::uint32_t> basis_at(s.images.size(), 0);
  for (std::uint64_t c = 0; c < combos; ++c) {
    Scalar coeff = Scalar::one(H.field());
    for (std::size_t j = 0; j < supports.size(); ++j) {
      const auto& [assignment, value] = supports[j][idx[j]];
      coeff *= value;
      for (std::size_t k = 0; k < assignment.size(); ++k) basis_at[s.upper[j].points[k]] = assignment[k];
    }
    for (const auto& l : s.lower) {
      if (coeff.is_zero()) break;
      TensorElement::Key key;
      for (auto p : l.points) key.push_back(basis_at[p]);
      coeff *= l.expansion.coefficient(key);
    }
    total += coeff;
    for (std::size_t j = 0; j < supports.size(); ++j) {
      if (++idx[j] < supports[j].size()) break;
      idx[j] = 0;
    }
  }
  return total;
}

}  // namespace

InvariantResult evaluate_naive(const HopfAlgebra& H, const IntegralPair& P, const FramedHeegaardDiagram& d,
                               const EvaluateOptions& options, std::uint64_t budget) {
  require_valid(d);
  const NaiveSetup s = naive_setup(H, P, d, options.convention);

  // Lower side if its summand count fits, otherwise try the upper side under the same budget.
  std::uint64_t combos = 1;
  bool lower_fits = true;
  for (const auto& l : s.lower) {
    const std::uint64_t n = l.expansion.size();
    if (n == 0) {
      combos = 0;
      break;
    }
    if (n > budget / combos) lower_fits = false;
    if (lower_fits) combos *= n;
  }
  InvariantResult r;
  Scalar total;
  if (combos == 0) {
    total = Scalar::zero(H.field());
  } else if (lower_fits) {
    total = expand_lower(H, s, combos);
    r.stats.join_pairs = combos;
  } else {
    try {
      total = expand_upper(H, s, budget);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::budget_exceeded) throw;
      throw Error(ErrorCode::budget_exceeded, "naive expansion of " + d.name + " needs more than " +
                                                  std::to_string(budget) + " terms from either side");
    }
  }
  r.value = total * s.prefactor * degree_factor(P, options.degree_offset);
  r.diagram = d.name;
  r.algebra = H.name();
  r.degree_offset = options.degree_offset;
  r.convention = options.convention;
  return r;
}

Scalar weeks_closed_form(const HopfAlgebra& H, const IntegralPair& P) {
  Formula f(H);
  const auto A = f.split(P.Lambda, 9);
  const auto B = f.split(P.Lambda, 9);
  f.pair(P.lambda, f.mul({A[2], f.S(-2, A[5]), f.S(-1, B[4]), A[7], f.S(1, B[2]), A[0], f.S(-2, A[3]), B[6], B[0]}));
  f.pair(P.lambda, f.mul({f.S(1, A[8]), B[3], f.S(-1, A[6]), f.S(-2, B[5]), B[8], A[1], f.S(-2, A[4]), B[7], B[1]}));
  return run(f.net(), default_budget());
}

Scalar torus_closed_form(const HopfAlgebra& H, const IntegralPair& P) {
  Formula f(H);
  const auto A = f.split(P.Lambda, 4);
  const auto B = f.split(P.Lambda, 4);
  const auto C = f.split(P.Lambda, 4);
  f.pair(P.lambda, f.mul({f.S(2, C[1]), f.S(1, A[2]), f.S(1, C[3]), A[0]}));
  f.pair(P.lambda, f.mul({A[3], f.S(1, B[2]), f.S(1, A[1]), B[0]}));
  f.pair(P.lambda, f.mul({f.S(1, B[3]), f.S(1, C[2]), B[1], C[0]}));
  return run(f.net(), default_budget());
}

GaugeResult gauge_check(const HopfAlgebra& H, const IntegralPair& P, const Cocycle& C,
                        const FramedHeegaardDiagram& d, const EvaluateOptions& options) {
  const HopfAlgebra HF = twist_hopf(H, C).first;
  const IntegralPair PF = compute_integrals(HF);
  EvaluateOptions opts = options;
  opts.plan.reset();  // a plan for H need not suit H_F
  GaugeResult g;
  g.z = evaluate(H, P, d, options).value;
  g.z_twisted = evaluate(HF, PF, d, opts).value;
  g.equal = g.z == g.z_twisted;
  return g;
}

namespace {

// Random data for one trial of the exchange identities.
struct TrialData {
  Vector x, y, z, w1, w2, w3;
  std::vector<Vector> phi_y, phi_z;
};

TrialData draw(const HopfAlgebra& H, std::mt19937_64& rng) {
  const auto r = [&] { return random_element(H.field(), H.dim(), rng); };
  TrialData t{r(), r(), r(), r(), r(), r(), {}, {}};
  for (int i = 0; i < 8; ++i) t.phi_y.push_back(r());
  for (int i = 0; i < 8; ++i) t.phi_z.push_back(r());
  return t;
}

// x moves out of the right-hand trace and into every argument as S(x_k) on the right.
Scalar exchange_right(const HopfAlgebra& H, const IntegralPair& P, const TrialData& t, bool rhs) {
  Formula f(H);
  const auto A = f.split(P.Lambda, 9);
  const auto B = f.split(P.Lambda, 9);
  std::vector<EdgeId> X;
  if (rhs) X = f.split(t.x, 15);
  const auto arg = [&](EdgeId e, int k) { return rhs ? f.mul({e, f.S(1, X[k - 1])}) : e; };
  const EdgeId Y = f.rank_one(t.phi_y, t.y,
                              {arg(B[6], 2), arg(A[4], 11), arg(A[1], 14), arg(B[7], 1), arg(B[4], 4), arg(A[6], 9),
                               arg(B[2], 6)});
  const EdgeId Z = f.rank_one(t.phi_z, t.z,
                              {arg(A[2], 13), arg(A[5], 10), arg(B[3], 5), arg(A[7], 8), arg(B[1], 7), arg(A[0], 15),
                               arg(A[3], 12), arg(B[5], 3)});
  f.pair(P.lambdaS, f.mul({f.S(-1, B[0]), Y, A[8]}));
  if (rhs)
    f.pair(P.lambdaS, f.mul({Z, B[8]}));
  else
    f.pair(P.lambdaS, f.mul({f.el(t.x), Z, B[8]}));
  return run(f.net(), default_budget());
}

// x moves out of S^{-1}(x) in the second trace and into every argument as x_k on the left.
Scalar exchange_left(const HopfAlgebra& H, const IntegralPair& P, const TrialData& t, bool rhs) {
  Formula f(H);
  const auto A = f.split(P.Lambda, 9);
  const auto B = f.split(P.Lambda, 9);
  std::vector<EdgeId> X;
  if (rhs) X = f.split(t.x, 15);
  const auto arg = [&](EdgeId e, int k) { return rhs ? f.mul({X[k - 1], e}) : e; };
  const EdgeId Y = f.rank_one(t.phi_y, t.y,
                              {arg(B[0], 1), arg(B[6], 14), arg(A[4], 7), arg(A[1], 4), arg(B[7], 15), arg(B[4], 12),
                               arg(A[6], 9)});
  const EdgeId Z = f.rank_one(t.phi_z, t.z,
                              {arg(A[2], 5), arg(A[5], 8), arg(B[3], 11), arg(A[7], 10), arg(B[1], 2), arg(A[0], 3),
                               arg(A[3], 6), arg(B[5], 13)});
  f.pair(P.lambdaS, f.mul({Y, f.S(-1, B[2]), A[8]}));
  if (rhs)
    f.pair(P.lambdaS, f.mul({Z, B[8]}));
  else
    f.pair(P.lambdaS, f.mul({Z, f.S(-1, f.el(t.x)), B[8]}));
  return run(f.net(), default_budget());
}

// One integral, three legs: x on the first argument against S^{-1}(x_1) in front and S(x_2)
// inside the second argument.
Scalar single_exchange(const HopfAlgebra& H, const IntegralPair& P, const TrialData& t, bool rhs) {
  Formula f(H);
  const auto A = f.split(P.Lambda, 3);
  if (rhs) {
    const auto X = f.split(t.x, 2);
    const EdgeId Xv = f.rank_one({t.phi_y[0]}, t.y, {A[0]});
    const EdgeId Yv = f.rank_one({t.phi_z[0]}, t.z, {f.mul({A[1], f.S(1, X[1])})});
    f.pair(P.lambdaS, f.mul({f.S(-1, X[0]), Xv, Yv, A[2]}));
  } else {
    const EdgeId Xv = f.rank_one({t.phi_y[0]}, t.y, {f.mul({A[0], f.el(t.x)})});
    const EdgeId Yv = f.rank_one({t.phi_z[0]}, t.z, {A[1]});
    f.pair(P.lambdaS, f.mul({Xv, Yv, A[2]}));
  }
  return run(f.net(), default_budget());
}

// The three legs of x travel between neighbouring factors under different antipode powers.
Scalar antipode_power_exchange(const HopfAlgebra& H, const IntegralPair& P, const TrialData& t, bool rhs) {
  Formula f(H);
  const auto A = f.split(P.Lambda, 9);
  const auto B = f.split(P.Lambda, 9);
  const auto X = f.split(t.x, 3);
  const EdgeId w1 = f.el(t.w1), w2 = f.el(t.w2), w3 = f.el(t.w3);
  const auto left = [&](int k, EdgeId e) { return f.mul({X[k - 1], e}); };
  const auto right = [&](EdgeId e, int k) { return f.mul({e, X[k - 1]}); };
  if (!rhs) {
    f.pair(P.lambdaS, f.mul({f.S(-1, B[0]), f.S(-1, B[6]), f.S(-3, A[4]), w2, f.S(-1, right(A[1], 2)),
                             f.S(-1, B[7]), f.S(-3, B[4]), f.S(-2, A[6]), f.S(-1, B[2]), A[8]}));
    f.pair(P.lambdaS, f.mul({f.S(-2, right(A[2], 3)), w3, f.S(-4, A[5]), f.S(-3, B[3]), f.S(-2, A[7]),
                             f.S(-1, B[1]), f.S(-2, right(A[0], 1)), w1, f.S(-4, A[3]), f.S(-2, B[5]), B[8]}));
  } else {
    f.pair(P.lambdaS, f.mul({f.S(-1, B[0]), f.S(-1, B[6]), f.S(-3, left(2, A[4])), w2, f.S(-1, A[1]),
                             f.S(-1, B[7]), f.S(-3, B[4]), f.S(-2, A[6]), f.S(-1, B[2]), A[8]}));
    f.pair(P.lambdaS, f.mul({f.S(-2, A[2]), w3, f.S(-4, left(3, A[5])), f.S(-3, B[3]), f.S(-2, A[7]),
                             f.S(-1, B[1]), f.S(-2, A[0]), w1, f.S(-4, left(1, A[3])), f.S(-2, B[5]), B[8]}));
  }
  return run(f.net(), default_budget());
}

}  // namespace

Report lemma_suite(const HopfAlgebra& H, const IntegralPair& P, int trials, std::uint64_t seed) {
  using Side = Scalar (*)(const HopfAlgebra&, const IntegralPair&, const TrialData&, bool);
  const std::pair<const char*, Side> identities[] = {
      {"integral exchange on the right", exchange_right},
      {"integral exchange on the left", exchange_left},
      {"single integral exchange", single_exchange},
      {"antipode power exchange", antipode_power_exchange},
  };
  std::mt19937_64 rng(seed);
  Report report;
  for (int trial = 0; trial < trials; ++trial) {
    TrialData t = draw(H, rng);
    if (trial == 0) t.x = H.unit();  // the degenerate case must hold trivially
    for (const auto& [name, side] : identities) {
      const Scalar lhs = side(H, P, t, false);
      const Scalar rhs = side(H, P, t, true);
      report.record(std::string(name) + " trial " + std::to_string(trial), lhs == rhs,
                    "lhs " + lhs.to_string() + ", rhs " + rhs.to_string());
    }
  }
  return report;
}

}  // namespace kuperberg
