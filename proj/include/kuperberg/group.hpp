#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace kuperberg {

/// A finite group given by its full multiplication table. Element 0 need not be the identity.
class GroupTable {
 public:
  /// Throws bad_params unless `table` (order x order, row-major) is a group law.
  GroupTable(std::string name, std::vector<std::string> labels, std::vector<std::uint32_t> table,
             std::vector<std::vector<std::uint32_t>> coordinates = {});

  const std::string& name() const noexcept { return name_; }
  std::size_t order() const noexcept { return labels_.size(); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a * order() + b]; }
  std::uint32_t identity() const noexcept { return identity_; }
  std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }
  const std::string& label(std::uint32_t a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  bool is_abelian() const;
  /// Coordinates in the cyclic factors of a direct product; {a} for indecomposable tables.
  const std::vector<std::uint32_t>& coordinates(std::uint32_t a) const { return coordinates_[a]; }

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::uint32_t> table_;
  std::vector<std::vector<std::uint32_t>> coordinates_;
  std::uint32_t identity_ = 0;
  std::vector<std::uint32_t> inverse_;
};

GroupTable cyclic_group(std::uint32_t n);
/// Symmetric group on n <= 5 letters, elements labelled in one-line notation.
GroupTable symmetric_group(std::uint32_t n);
/// Dihedral group of order 2n.
GroupTable dihedral_group(std::uint32_t n);
GroupTable quaternion_group();
GroupTable direct_product(const std::vector<GroupTable>& factors);

/// "Z4", "S3", "D4", "Q8", "Z2xZ2", "1"; throws unknown_algebra for anything else.
GroupTable group_by_name(std::string_view name);

/// Generators are the letters a, b, c, ...; an upper-case letter denotes the inverse.
struct Presentation {
  std::size_t generators = 0;
  std::vector<std::string> relators;
};

/// The fundamental group of the Weeks manifold.
Presentation weeks_presentation();
/// The free abelian group of rank 3.
Presentation three_torus_presentation();

/// Number of homomorphisms pi -> G, by brute force over generator images.
/// Throws budget_exceeded when |G|^generators exceeds `budget`.
std::uint64_t hom_count(const Presentation& pi, const GroupTable& G, std::uint64_t budget = std::uint64_t{1} << 26);

}  // namespace kuperberg
