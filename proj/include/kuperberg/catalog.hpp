#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kuperberg/group.hpp"
#include "kuperberg/hopf.hpp"

namespace kuperberg {

/// The one-dimensional Hopf algebra k.
HopfAlgebra trivial_algebra(const Field& field);
/// k[G] with grouplike basis.
HopfAlgebra group_algebra(const GroupTable& G, const Field& field);
/// k^G with the basis of minimal idempotents e_a; Delta(e_a) = sum_{bc=a} e_b (x) e_c.
HopfAlgebra dual_group_algebra(const GroupTable& G, const Field& field);
/// Taft algebra of dimension n^2: g^n = 1, x^n = 0, x g = zeta g x, Delta(x) = x (x) 1 + g (x) x.
/// Basis g^i x^j at index j*n + i. Throws bad_params if the field lacks a primitive n-th root of unity.
HopfAlgebra taft_algebra(std::uint32_t n, const Field& field);
/// Sweedler's four-dimensional algebra (the Taft algebra with n = 2), basis 1, g, x, gx.
HopfAlgebra sweedler_h4(const Field& field);

/// A primitive n-th root of unity in `field`, or nullopt.
std::optional<Scalar> primitive_root_of_unity(const Field& field, std::uint32_t n);

struct CatalogOptions {
  std::optional<Field> field;  // defaults per algebra; see default_field
  bool allow_degenerate = false;
};

/// Field used when none is requested: Q, except Q(zeta_n) for taft_n with n > 2.
Field default_field(std::string_view name);

/// Looks up "trivial", "group_algebra_<G>", "dual_group_algebra_<G>", "sweedler_h4" or "taft_<n>",
/// where <G> is any name accepted by group_by_name. Prime fields whose characteristic divides the
/// dimension are refused unless allow_degenerate is set.
HopfAlgebra catalog(std::string_view name, const CatalogOptions& options = {});

/// Representative names for listing; the pattern forms above accept more.
std::vector<std::string> catalog_names();

}  // namespace kuperberg
