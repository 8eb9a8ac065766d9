#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kuperberg/group.hpp"
#include "kuperberg/heegaard.hpp"
#include "kuperberg/hopf.hpp"
#include "kuperberg/network.hpp"
#include "kuperberg/report.hpp"
#include "kuperberg/twist.hpp"

namespace kuperberg {

struct EvaluateOptions {
  long degree_offset = 0;
  CointegralConvention convention = CointegralConvention::g_action;
  std::uint64_t budget = default_budget();
  /// Replaces the greedy order when set; must come from the same diagram and algebra.
  std::optional<ContractionPlan> plan;
};

struct InvariantResult {
  Scalar value;
  std::string diagram;
  std::string algebra;
  long degree_offset = 0;
  CointegralConvention convention = CointegralConvention::g_action;
  ContractionStats stats;
  std::uint64_t cost_estimate = 0;
};

/// The network whose contraction is Z(M, f, H) at framing degree zero. Throws invalid_diagram
/// when d fails validation and non_integral_exponent from the rotation data.
TensorNetwork build_network(const HopfAlgebra& H, const IntegralPair& P, const FramedHeegaardDiagram& d,
                            CointegralConvention convention = CointegralConvention::g_action);

ContractionPlan plan_contraction(const FramedHeegaardDiagram& d, const HopfAlgebra& H, const IntegralPair& P,
                                 const EvaluateOptions& options = {});

/// Z(M, f, H) times alpha(g)^degree_offset. Throws plan_failure when no order fits the budget.
InvariantResult evaluate(const HopfAlgebra& H, const IntegralPair& P, const FramedHeegaardDiagram& d,
                         const EvaluateOptions& options = {});

/// Expands every combination of coproduct summands directly, without a network. Refuses with
/// budget_exceeded when the number of combinations passes `budget` (2^30 by default).
InvariantResult evaluate_naive(const HopfAlgebra& H, const IntegralPair& P, const FramedHeegaardDiagram& d,
                               const EvaluateOptions& options = {},
                               std::uint64_t budget = std::uint64_t{1} << 30);

/// The two-factor trace expression for the Weeks manifold; equals alpha(g) Z(W, f0, H).
Scalar weeks_closed_form(const HopfAlgebra& H, const IntegralPair& P);
/// The three-factor trace expression for the 3-torus.
Scalar torus_closed_form(const HopfAlgebra& H, const IntegralPair& P);

struct GaugeResult {
  bool equal = false;
  Scalar z;
  Scalar z_twisted;
};

/// Evaluates d over H and over H_F (integrals recomputed from H_F).
GaugeResult gauge_check(const HopfAlgebra& H, const IntegralPair& P, const Cocycle& C,
                        const FramedHeegaardDiagram& d, const EvaluateOptions& options = {});

/// Both sides of the four trace-manipulation identities used in the gauge invariance argument,
/// on `trials` random elements and rank-one multilinear maps.
Report lemma_suite(const HopfAlgebra& H, const IntegralPair& P, int trials, std::uint64_t seed = 1);

}  // namespace kuperberg
