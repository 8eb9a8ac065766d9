#include "kuperberg/network.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "kuperberg/error.hpp"

namespace kuperberg {

namespace {

unsigned bits_for(std::size_t dim) {
  unsigned b = 1;
  while ((std::size_t{1} << b) < dim) ++b;
  return b;
}

// How two nodes line up: which positions are summed over and where the survivors go.
struct Layout {
  std::vector<unsigned> a_shared, b_shared, a_rest, b_rest;
  std::vector<EdgeId> out_edges;
};

Layout layout(const std::vector<EdgeId>& a, const std::vector<EdgeId>& b) {
  Layout l;
  for (unsigned i = 0; i < a.size(); ++i) {
    auto it = std::find(b.begin(), b.end(), a[i]);
    if (it == b.end()) {
      l.a_rest.push_back(i);
      l.out_edges.push_back(a[i]);
    } else {
      l.a_shared.push_back(i);
      l.b_shared.push_back(static_cast<unsigned>(it - b.begin()));
    }
  }
  for (unsigned j = 0; j < b.size(); ++j)
    if (std::find(a.begin(), a.end(), b[j]) == a.end()) {
      l.b_rest.push_back(j);
      l.out_edges.push_back(b[j]);
    }
  return l;
}

struct Packer {
  unsigned bits;
  std::uint64_t mask;
  explicit Packer(unsigned b) : bits(b), mask((std::uint64_t{1} << b) - 1) {}
  std::uint64_t extract(std::uint64_t key, const std::vector<unsigned>& positions) const {
    std::uint64_t out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i) out |= ((key >> (bits * positions[i])) & mask) << (bits * i);
    return out;
  }
};

bool fits(std::size_t rank, unsigned bits) { return rank * bits <= 64; }

using Support = std::vector<std::uint64_t>;

std::uint64_t join_count(const Support& a, const Support& b, const Layout& l, const Packer& p) {
  std::unordered_map<std::uint64_t, std::uint64_t> hist;
  for (auto k : b) ++hist[p.extract(k, l.b_shared)];
  std::uint64_t total = 0;
  for (auto k : a) {
    auto it = hist.find(p.extract(k, l.a_shared));
    if (it != hist.end()) total += it->second;
  }
  return total;
}

Support join_support(const Support& a, const Support& b, const Layout& l, const Packer& p) {
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> index;
  for (auto k : b) index[p.extract(k, l.b_shared)].push_back(p.extract(k, l.b_rest));
  std::unordered_set<std::uint64_t> out;
  const unsigned shift = static_cast<unsigned>(p.bits * l.a_rest.size());
  for (auto k : a) {
    auto it = index.find(p.extract(k, l.a_shared));
    if (it == index.end()) continue;
    const std::uint64_t ra = p.extract(k, l.a_rest);
    for (auto rb : it->second) out.insert(ra | (shift < 64 ? rb << shift : 0));
  }
  Support s(out.begin(), out.end());
  std::sort(s.begin(), s.end());
  return s;
}

using Entries = std::vector<std::pair<std::uint64_t, Scalar>>;

Entries join_entries(const Entries& a, const Entries& b, const Layout& l, const Packer& p, std::uint64_t* pairs) {
  std::unordered_map<std::uint64_t, std::vector<std::pair<std::uint64_t, const Scalar*>>> index;
  for (const auto& [k, v] : b) index[p.extract(k, l.b_shared)].emplace_back(p.extract(k, l.b_rest), &v);
  std::unordered_map<std::uint64_t, Scalar> out;
  const unsigned shift = static_cast<unsigned>(p.bits * l.a_rest.size());
  std::uint64_t count = 0;
  for (const auto& [k, v] : a) {
    auto it = index.find(p.extract(k, l.a_shared));
    if (it == index.end()) continue;
    const std::uint64_t ra = p.extract(k, l.a_rest);
    for (const auto& [rb, w] : it->second) {
      auto [slot, inserted] = out.try_emplace(ra | (shift < 64 ? rb << shift : 0));
      if (inserted) slot->second = Scalar::zero(v.field());
      slot->second.add_product(v, *w);
      ++count;
    }
  }
  if (pairs) *pairs += count;
  Entries e;
  e.reserve(out.size());
  for (auto& [k, v] : out)
    if (!v.is_zero()) e.emplace_back(k, std::move(v));
  std::sort(e.begin(), e.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  return e;
}

}  // namespace

// ------------------------------------------------------------------ builder

TensorNetwork::TensorNetwork(const HopfAlgebra& H)
    : field_(H.field()), dim_(H.dim()), bits_(bits_for(H.dim())), unit_(H.unit()) {
  const auto b = bits_;
  for (std::size_t a = 0; a < dim_; ++a) {
    for (const auto& t : H.comult(a))
      comult_entries_.emplace_back(a | (std::uint64_t{t.left} << b) | (std::uint64_t{t.right} << (2 * b)), t.coeff);
    for (std::size_t c = 0; c < dim_; ++c)
      for (const auto& t : H.mult().product(a, c))
        mult_entries_.emplace_back(a | (std::uint64_t{c} << b) | (std::uint64_t{t.index} << (2 * b)), t.coeff);
    if (!H.counit()[a].is_zero()) counit_entries_.emplace_back(a, H.counit()[a]);
  }
}

void TensorNetwork::add_node(std::string label, std::vector<EdgeId> edges, Entries entries) {
  if (!fits(edges.size(), bits_)) throw Error(ErrorCode::plan_failure, "node rank too large to pack");
  nodes_.push_back({std::move(label), std::move(edges), std::move(entries)});
}

EdgeId TensorNetwork::element(const Vector& v, std::string label) {
  if (v.size() != dim_) throw Error(ErrorCode::dimension_mismatch, "network element");
  Entries e;
  for (std::size_t a = 0; a < dim_; ++a)
    if (!v[a].is_zero()) e.emplace_back(a, v[a]);
  const EdgeId out = fresh();
  add_node(std::move(label), {out}, std::move(e));
  return out;
}

std::vector<EdgeId> TensorNetwork::coproduct(EdgeId x, std::size_t n) {
  if (n == 0) {
    add_node("counit", {x}, counit_entries_);
    return {};
  }
  std::vector<EdgeId> legs;
  EdgeId current = x;
  for (std::size_t k = 1; k < n; ++k) {
    const EdgeId leg = fresh(), rest = fresh();
    add_node("coproduct", {current, leg, rest}, comult_entries_);
    legs.push_back(leg);
    current = rest;
  }
  legs.push_back(current);
  return legs;
}

EdgeId TensorNetwork::apply(const Matrix& map, EdgeId x, std::string label) {
  Entries e;
  for (std::size_t a = 0; a < dim_; ++a)
    for (std::size_t r = 0; r < dim_; ++r)
      if (!map(r, a).is_zero()) e.emplace_back(a | (std::uint64_t{r} << bits_), map(r, a));
  const EdgeId out = fresh();
  add_node(std::move(label), {x, out}, std::move(e));
  return out;
}

EdgeId TensorNetwork::product(EdgeId a, EdgeId b) {
  const EdgeId out = fresh();
  add_node("product", {a, b, out}, mult_entries_);
  return out;
}

EdgeId TensorNetwork::product(const std::vector<EdgeId>& factors) {
  if (factors.empty()) return element(unit_, "unit");
  EdgeId acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = product(acc, factors[i]);
  return acc;
}

void TensorNetwork::pair(const Vector& covector, EdgeId x, std::string label) {
  Entries e;
  for (std::size_t a = 0; a < dim_; ++a)
    if (!covector[a].is_zero()) e.emplace_back(a, covector[a]);
  add_node(std::move(label), {x}, std::move(e));
}

std::vector<EdgeId> TensorNetwork::tensor(const TensorElement& t, std::string label) {
  std::vector<EdgeId> legs;
  for (std::size_t i = 0; i < t.arity(); ++i) legs.push_back(fresh());
  Entries e;
  for (const auto& [key, c] : t.terms()) {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < key.size(); ++i) k |= std::uint64_t{key[i]} << (bits_ * i);
    e.emplace_back(k, c);
  }
  add_node(std::move(label), legs, std::move(e));
  return legs;
}

// ------------------------------------------------------------------ planning

std::uint64_t default_budget() {
  if (const char* env = std::getenv("KUPERBERG_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 26;
}

ContractionPlan plan_network(const TensorNetwork& net, std::uint64_t budget) {
  const Packer packer(net.bits());
  ContractionPlan plan;
  std::map<std::size_t, std::pair<std::vector<EdgeId>, Support>> live;
  std::vector<std::vector<std::size_t>> owners(net.edge_count());
  for (std::size_t i = 0; i < net.nodes().size(); ++i) {
    const auto& n = net.nodes()[i];
    plan.nodes.push_back(n.label);
    Support s;
    for (const auto& [k, v] : n.entries) s.push_back(k);
    live[i] = {n.edges, std::move(s)};
    for (auto e : n.edges) owners[e].push_back(i);
  }
  for (EdgeId e = 0; e < owners.size(); ++e)
    if (owners[e].size() != 2)
      throw Error(ErrorCode::plan_failure, "edge " + std::to_string(e) + " has " + std::to_string(owners[e].size()) +
                                               " endpoints; the network is not closed");

  std::map<std::pair<std::size_t, std::size_t>, std::uint64_t> cost_cache;
  std::size_t next_id = net.nodes().size();
  while (live.size() > 1) {
    std::set<std::pair<std::size_t, std::size_t>> candidates;
    for (const auto& [id, node] : live)
      for (auto e : node.first)
        for (auto other : owners[e])
          if (other != id) candidates.insert({std::min(id, other), std::max(id, other)});
    if (candidates.empty()) {
      // Disconnected pieces: take an outer product of the two smallest.
      std::vector<std::pair<std::size_t, std::size_t>> by_size;
      for (const auto& [id, node] : live) by_size.push_back({node.second.size(), id});
      std::sort(by_size.begin(), by_size.end());
      candidates.insert({std::min(by_size[0].second, by_size[1].second), std::max(by_size[0].second, by_size[1].second)});
    }

    std::optional<std::pair<std::uint64_t, std::pair<std::size_t, std::size_t>>> best;
    std::uint64_t cheapest_over = std::numeric_limits<std::uint64_t>::max();
    for (const auto& c : candidates) {
      const auto& A = live.at(c.first);
      const auto& B = live.at(c.second);
      const Layout l = layout(A.first, B.first);
      if (!fits(l.out_edges.size(), net.bits())) continue;
      auto it = cost_cache.find(c);
      if (it == cost_cache.end()) it = cost_cache.emplace(c, join_count(A.second, B.second, l, packer)).first;
      if (it->second > budget) {
        cheapest_over = std::min(cheapest_over, it->second);
        continue;
      }
      if (!best || it->second < best->first) best = {it->second, c};
    }
    if (!best)
      throw Error(ErrorCode::plan_failure,
                  "every remaining contraction exceeds the budget of " + std::to_string(budget) + " terms" +
                      (cheapest_over != std::numeric_limits<std::uint64_t>::max()
                           ? " (cheapest needs " + std::to_string(cheapest_over) + ")"
                           : std::string{}));

    const auto [a, b] = best->second;
    auto A = std::move(live.at(a));
    auto B = std::move(live.at(b));
    live.erase(a);
    live.erase(b);
    for (auto it = cost_cache.begin(); it != cost_cache.end();)
      it = (it->first.first == a || it->first.second == a || it->first.first == b || it->first.second == b)
               ? cost_cache.erase(it)
               : std::next(it);
    const Layout l = layout(A.first, B.first);
    Support s = join_support(A.second, B.second, l, packer);
    plan.steps.push_back({a, b, best->first, s.size()});
    plan.cost_estimate = std::max(plan.cost_estimate, best->first);
    plan.max_intermediate = std::max(plan.max_intermediate, s.size());
    const std::size_t id = next_id++;
    for (auto e : l.out_edges)
      for (auto& o : owners[e])
        if (o == a || o == b) o = id;
    live[id] = {l.out_edges, std::move(s)};
  }
  return plan;
}

void check_plan(const TensorNetwork& net, const ContractionPlan& plan) {
  std::set<std::size_t> live;
  for (std::size_t i = 0; i < net.nodes().size(); ++i) live.insert(i);
  std::size_t next_id = net.nodes().size();
  for (const auto& s : plan.steps) {
    if (s.left == s.right || !live.count(s.left) || !live.count(s.right))
      throw Error(ErrorCode::plan_failure,
                  "step (" + std::to_string(s.left) + ", " + std::to_string(s.right) + ") uses a node that is not live");
    live.erase(s.left);
    live.erase(s.right);
    live.insert(next_id++);
  }
  if (live.size() != 1) throw Error(ErrorCode::plan_failure, "plan leaves " + std::to_string(live.size()) + " nodes");
}

Scalar contract(const TensorNetwork& net, const ContractionPlan& plan, std::uint64_t budget, ContractionStats* stats) {
  check_plan(net, plan);
  const Packer packer(net.bits());
  std::map<std::size_t, std::pair<std::vector<EdgeId>, Entries>> live;
  for (std::size_t i = 0; i < net.nodes().size(); ++i) live[i] = {net.nodes()[i].edges, net.nodes()[i].entries};
  ContractionStats local;
  std::size_t next_id = net.nodes().size();
  for (const auto& step : plan.steps) {
    auto A = std::move(live.at(step.left));
    auto B = std::move(live.at(step.right));
    live.erase(step.left);
    live.erase(step.right);
    const Layout l = layout(A.first, B.first);
    if (!fits(l.out_edges.size(), net.bits())) throw Error(ErrorCode::plan_failure, "intermediate rank too large");
    const std::uint64_t predicted = join_count(
        [&] { Support s; for (const auto& e : A.second) s.push_back(e.first); return s; }(),
        [&] { Support s; for (const auto& e : B.second) s.push_back(e.first); return s; }(), l, packer);
    if (predicted > budget)
      throw Error(ErrorCode::plan_failure, "step needs " + std::to_string(predicted) + " terms, budget is " +
                                               std::to_string(budget));
    Entries e = join_entries(A.second, B.second, l, packer, &local.join_pairs);
    local.max_intermediate = std::max(local.max_intermediate, e.size());
    ++local.steps;
    live[next_id++] = {l.out_edges, std::move(e)};
  }
  if (stats) *stats = local;
  const auto& last = live.begin()->second;
  if (!last.first.empty()) throw Error(ErrorCode::plan_failure, "contraction left open edges");
  return last.second.empty() ? Scalar::zero(net.field()) : last.second.front().second;
}

}  // namespace kuperberg
