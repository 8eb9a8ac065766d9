#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "kuperberg/hopf.hpp"

namespace kuperberg {

using EdgeId = std::uint32_t;

/// A sparse tensor whose legs are network edges. Keys pack one index per edge, edges[0] in the
/// lowest bits.
struct NetworkNode {
  std::string label;
  std::vector<EdgeId> edges;
  std::vector<std::pair<std::uint64_t, Scalar>> entries;
};

/// Builds a closed tensor network over H whose contraction is a scalar. Every edge carries an
/// element of H; each builder call consumes its input edges and returns fresh output edges, so
/// every edge ends up joining exactly one producer to one consumer.
class TensorNetwork {
 public:
  explicit TensorNetwork(const HopfAlgebra& H);

  EdgeId element(const Vector& v, std::string label = "element");
  /// Legs of Delta^n(x), left to right. n = 0 pairs x with the counit and returns no edges.
  std::vector<EdgeId> coproduct(EdgeId x, std::size_t n);
  EdgeId apply(const Matrix& map, EdgeId x, std::string label = "map");
  EdgeId product(EdgeId a, EdgeId b);
  /// Left-to-right product; the empty product is the unit.
  EdgeId product(const std::vector<EdgeId>& factors);
  void pair(const Vector& covector, EdgeId x, std::string label = "functional");
  /// An explicit element of H^{(x)n}, one edge per leg.
  std::vector<EdgeId> tensor(const TensorElement& t, std::string label = "tensor");

  const std::vector<NetworkNode>& nodes() const noexcept { return nodes_; }
  std::size_t edge_count() const noexcept { return next_edge_; }
  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return dim_; }
  unsigned bits() const noexcept { return bits_; }

 private:
  EdgeId fresh() { return next_edge_++; }
  void add_node(std::string label, std::vector<EdgeId> edges, std::vector<std::pair<std::uint64_t, Scalar>> entries);

  Field field_;
  std::size_t dim_;
  unsigned bits_;
  std::vector<NetworkNode> nodes_;
  EdgeId next_edge_ = 0;
  // Comultiplication and multiplication nodes are reused in many places; their entry lists are
  // built once.
  std::vector<std::pair<std::uint64_t, Scalar>> comult_entries_, mult_entries_, counit_entries_;
  Vector unit_;
};

struct ContractionStep {
  std::size_t left;
  std::size_t right;
  std::uint64_t join_pairs;   // predicted work: matching entry pairs
  std::size_t result_terms;  // predicted support size of the result
};

/// Pairwise elimination order. Initial nodes are numbered 0..n-1 and step k creates node n+k.
struct ContractionPlan {
  std::vector<std::string> nodes;
  std::vector<ContractionStep> steps;
  std::uint64_t cost_estimate = 0;   // largest predicted join count of any step
  std::size_t max_intermediate = 0;  // largest predicted intermediate support
};

struct ContractionStats {
  std::size_t max_intermediate = 0;
  std::uint64_t join_pairs = 0;
  std::size_t steps = 0;
};

/// 2^26 unless the KUPERBERG_BUDGET environment variable holds a positive integer.
std::uint64_t default_budget();

/// Greedy order on supports: repeatedly contract the pair of adjacent nodes with the fewest
/// matching entry pairs, ties broken by the lowest node ids. Throws plan_failure if every
/// remaining candidate exceeds `budget` or the packed key would overflow.
ContractionPlan plan_network(const TensorNetwork& net, std::uint64_t budget);

/// Checks that a user-supplied order is a valid elimination (every id live, one node left).
void check_plan(const TensorNetwork& net, const ContractionPlan& plan);

/// Executes a plan exactly. Throws plan_failure when a step exceeds `budget`.
Scalar contract(const TensorNetwork& net, const ContractionPlan& plan, std::uint64_t budget,
                ContractionStats* stats = nullptr);

}  // namespace kuperberg
