#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>

#include "kuperberg/group.hpp"
#include "kuperberg/hopf.hpp"

namespace kuperberg {

/// A normalized 2-cocycle F with its inverse. verify_cocycle is the checked way to build one;
/// aggregate construction is allowed so tests can feed in deliberately broken inverses.
struct Cocycle {
  TensorElement F;
  TensorElement Finv;
};

struct TwistArtifacts {
  Vector u;     // f1 S(f2)
  Vector uinv;  // S(d1) d2
  Vector Q;     // u S(u^{-1})
};

/// Inverts F in H (x) H by a linear solve and checks normalization and the cocycle condition.
/// Throws not_invertible, not_normalized or cocycle_condition_fails with a witness.
Cocycle verify_cocycle(const HopfAlgebra& H, const TensorElement& F);

TwistArtifacts twist_artifacts(const HopfAlgebra& H, const Cocycle& C);

/// H_F: same algebra, Delta_F = F Delta F^{-1}, S_F = u S(.) u^{-1}. Throws axiom_failure if
/// the result is not a Hopf algebra.
std::pair<HopfAlgebra, TwistArtifacts> twist_hopf(const HopfAlgebra& H, const Cocycle& C);

/// F_n and F_n^{-1}: F_1 = 1, F_2 = F, F_{n+1} = (1 (x) F_n)(id (x) Delta^n)(F).
std::pair<TensorElement, TensorElement> iterated_fn(const HopfAlgebra& H, const Cocycle& C, std::size_t n);

/// Checks the nine cocycle identities. Item (1) runs over m + n <= n_max, items (2)-(8) over
/// tensor lengths up to n_max, item (9) over `trials` random rank-one maps Y per length.
Report prop22_suite(const HopfAlgebra& H, const IntegralPair& P, const Cocycle& C, std::size_t n_max, int trials,
                    std::uint64_t seed = 1);

/// Extra twist invariants: Delta_F^n = F_n Delta^n F_n^{-1} (n <= n_max), S_F^2 = Q S^2 Q^{-1},
/// u u^{-1} = 1, and untwisting H_F by F^{-1} recovers H.
Report twist_invariants(const HopfAlgebra& H, const Cocycle& C, std::size_t n_max);

/// F = sum beta(a, b) e_a (x) e_b on the dual group algebra of G. Throws zero_entry.
TensorElement bicharacter_cocycle(const HopfAlgebra& dual, const GroupTable& G,
                                  const std::function<Scalar(std::uint32_t, std::uint32_t)>& beta);

/// beta((x1, y1), (x2, y2)) = (-1)^{x1 y2} on Z2 x Z2, in coordinates of the direct product.
Scalar klein_sign_bicharacter(const GroupTable& G, const Field& field, std::uint32_t a, std::uint32_t b);

/// F = 1 (x) 1 + c e (x) e with e = (1 - g)/2 for a grouplike g of order 2.
TensorElement idempotent_cocycle(const HopfAlgebra& H, const Vector& g, const Scalar& c);

/// .cocycle text: a header line "twists <algebra name>" followed by lines "i j coeff".
/// Throws bad_params when the header names a different algebra than H.
TensorElement parse_cocycle(std::string_view text, const HopfAlgebra& H);
TensorElement load_cocycle(const std::string& path, const HopfAlgebra& H);
std::string serialize_cocycle(const TensorElement& F, const HopfAlgebra& H);

}  // namespace kuperberg
