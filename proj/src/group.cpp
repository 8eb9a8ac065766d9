#include "kuperberg/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>

#include "kuperberg/error.hpp"

namespace kuperberg {

GroupTable::GroupTable(std::string name, std::vector<std::string> labels, std::vector<std::uint32_t> table,
                       std::vector<std::vector<std::uint32_t>> coordinates)
    : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(table)), coordinates_(std::move(coordinates)) {
  const std::size_t n = labels_.size();
  auto bad = [&](const std::string& why) { throw Error(ErrorCode::bad_params, name_ + " is not a group: " + why); };
  if (n == 0) bad("empty");
  if (table_.size() != n * n) bad("table is not square");
  for (auto v : table_)
    if (v >= n) bad("entry out of range");

  bool found = false;
  for (std::uint32_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::uint32_t a = 0; a < n && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) bad("no identity");

  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      for (std::uint32_t c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
          bad("not associative at (" + labels_[a] + ", " + labels_[b] + ", " + labels_[c] + ")");

  inverse_.assign(n, 0);
  for (std::uint32_t a = 0; a < n; ++a) {
    auto it = std::find_if(table_.begin() + a * n, table_.begin() + (a + 1) * n,
                           [&](std::uint32_t v) { return v == identity_; });
    if (it == table_.begin() + (a + 1) * n) bad(labels_[a] + " has no inverse");
    inverse_[a] = static_cast<std::uint32_t>(it - (table_.begin() + a * n));
    if (mul(inverse_[a], a) != identity_) bad(labels_[a] + " has no two-sided inverse");
  }

  if (coordinates_.empty())
    for (std::uint32_t a = 0; a < n; ++a) coordinates_.push_back({a});
  if (coordinates_.size() != n) bad("coordinate list has the wrong length");
}

bool GroupTable::is_abelian() const {
  for (std::uint32_t a = 0; a < order(); ++a)
    for (std::uint32_t b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

GroupTable cyclic_group(std::uint32_t n) {
  if (n == 0 || n > 64) throw Error(ErrorCode::bad_params, "cyclic group order must be in [1, 64]");
  std::vector<std::string> labels;
  std::vector<std::uint32_t> table(n * n);
  for (std::uint32_t a = 0; a < n; ++a) {
    labels.push_back(std::to_string(a));
    for (std::uint32_t b = 0; b < n; ++b) table[a * n + b] = (a + b) % n;
  }
  return GroupTable("Z" + std::to_string(n), std::move(labels), std::move(table));
}

GroupTable symmetric_group(std::uint32_t n) {
  if (n == 0 || n > 5) throw Error(ErrorCode::bad_params, "symmetric group degree must be in [1, 5]");
  std::vector<std::vector<std::uint32_t>> perms;
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::vector<std::string> labels;
  for (const auto& q : perms) {
    std::string s;
    for (auto v : q) s += static_cast<char>('1' + v);
    labels.push_back(s);
  }
  const std::size_t m = perms.size();
  std::vector<std::uint32_t> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      // (a b)(i) = a(b(i)).
      std::vector<std::uint32_t> c(n);
      for (std::uint32_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
      table[a * m + b] = static_cast<std::uint32_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return GroupTable("S" + std::to_string(n), std::move(labels), std::move(table));
}

GroupTable dihedral_group(std::uint32_t n) {
  if (n == 0 || n > 32) throw Error(ErrorCode::bad_params, "dihedral parameter must be in [1, 32]");
  // Element (f, k) = s^f r^k is stored at index f*n + k; r^k s = s r^{-k}.
  const std::uint32_t m = 2 * n;
  std::vector<std::string> labels;
  for (std::uint32_t f = 0; f < 2; ++f)
    for (std::uint32_t k = 0; k < n; ++k)
      labels.push_back(std::string(f ? "s" : "") + (k == 0 ? (f ? "" : "1") : "r" + std::to_string(k)));
  std::vector<std::uint32_t> table(m * m);
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = 0; b < m; ++b) {
      const std::uint32_t fa = a / n, ka = a % n, fb = b / n, kb = b % n;
      const std::uint32_t k = fb ? (n + kb - ka) % n : (ka + kb) % n;
      table[a * m + b] = ((fa + fb) % 2) * n + k;
    }
  return GroupTable("D" + std::to_string(n), std::move(labels), std::move(table));
}

GroupTable quaternion_group() {
  // Index 2u + sign for the units 1, i, j, k; sign bit 1 means negative.
  static const int unit_mul[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  const char* names = "1ijk";
  std::vector<std::string> labels;
  for (int u = 0; u < 4; ++u)
    for (int s = 0; s < 2; ++s) labels.push_back(std::string(s ? "-" : "") + names[u]);
  std::vector<std::uint32_t> table(64);
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      const auto& r = unit_mul[a / 2][b / 2];
      table[a * 8 + b] = static_cast<std::uint32_t>(2 * r[0] + ((a % 2 + b % 2 + r[1]) % 2));
    }
  return GroupTable("Q8", std::move(labels), std::move(table));
}

GroupTable direct_product(const std::vector<GroupTable>& factors) {
  if (factors.empty()) throw Error(ErrorCode::bad_params, "empty direct product");
  if (factors.size() == 1) return factors.front();
  std::size_t order = 1;
  std::string name;
  for (const auto& f : factors) {
    order *= f.order();
    name += (name.empty() ? "" : "x") + f.name();
  }
  if (order > 4096) throw Error(ErrorCode::bad_params, "direct product too large");

  // Mixed radix with the first factor most significant.
  auto digits = [&](std::size_t a) {
    std::vector<std::uint32_t> d(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
      d[i] = static_cast<std::uint32_t>(a % factors[i].order());
      a /= factors[i].order();
    }
    return d;
  };
  auto index = [&](const std::vector<std::uint32_t>& d) {
    std::size_t a = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) a = a * factors[i].order() + d[i];
    return static_cast<std::uint32_t>(a);
  };

  std::vector<std::string> labels;
  std::vector<std::vector<std::uint32_t>> coords;
  for (std::size_t a = 0; a < order; ++a) {
    const auto d = digits(a);
    std::string s = "(";
    std::vector<std::uint32_t> c;
    for (std::size_t i = 0; i < d.size(); ++i) {
      s += (i ? "," : "") + factors[i].label(d[i]);
      const auto& sub = factors[i].coordinates(d[i]);
      c.insert(c.end(), sub.begin(), sub.end());
    }
    labels.push_back(s + ")");
    coords.push_back(std::move(c));
  }
  std::vector<std::uint32_t> table(order * order);
  for (std::size_t a = 0; a < order; ++a)
    for (std::size_t b = 0; b < order; ++b) {
      auto da = digits(a);
      const auto db = digits(b);
      for (std::size_t i = 0; i < da.size(); ++i) da[i] = factors[i].mul(da[i], db[i]);
      table[a * order + b] = index(da);
    }
  return GroupTable(name, std::move(labels), std::move(table), std::move(coords));
}

GroupTable group_by_name(std::string_view name) {
  auto unknown = [&]() -> GroupTable {
    throw Error(ErrorCode::unknown_algebra, "unknown group '" + std::string(name) + "'");
  };
  if (name == "1" || name == "trivial") return cyclic_group(1);
  if (name == "Q8") return quaternion_group();

  std::vector<GroupTable> factors;
  std::size_t start = 0;
  while (start <= name.size()) {
    std::size_t end = name.find('x', start);
    if (end == std::string_view::npos) end = name.size();
    const std::string_view part = name.substr(start, end - start);
    if (part == "Q8") {
      factors.push_back(quaternion_group());
    } else {
      if (part.size() < 2) return unknown();
      std::uint32_t n = 0;
      auto [ptr, ec] = std::from_chars(part.data() + 1, part.data() + part.size(), n);
      if (ec != std::errc() || ptr != part.data() + part.size()) return unknown();
      switch (part[0]) {
        case 'Z': factors.push_back(cyclic_group(n)); break;
        case 'S': factors.push_back(symmetric_group(n)); break;
        case 'D': factors.push_back(dihedral_group(n)); break;
        default: return unknown();
      }
    }
    start = end + 1;
  }
  return direct_product(factors);
}

Presentation weeks_presentation() { return {2, {"aabbAbAbb", "abbaaBaBa"}}; }

Presentation three_torus_presentation() { return {3, {"abAB", "acAC", "bcBC"}}; }

std::uint64_t hom_count(const Presentation& pi, const GroupTable& G, std::uint64_t budget) {
  for (const auto& r : pi.relators)
    for (char ch : r) {
      const int g = std::tolower(static_cast<unsigned char>(ch)) - 'a';
      if (!std::isalpha(static_cast<unsigned char>(ch)) || g < 0 || static_cast<std::size_t>(g) >= pi.generators)
        throw Error(ErrorCode::bad_params, "relator '" + r + "' uses an unknown generator");
    }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < pi.generators; ++i) {
    if (total > budget / G.order()) throw Error(ErrorCode::budget_exceeded, "too many generator assignments");
    total *= G.order();
  }

  std::vector<std::uint32_t> image(pi.generators, 0);
  std::uint64_t count = 0;
  for (std::uint64_t step = 0; step < total; ++step) {
    bool ok = true;
    for (const auto& r : pi.relators) {
      std::uint32_t v = G.identity();
      for (char ch : r) {
        const auto g = static_cast<std::size_t>(std::tolower(static_cast<unsigned char>(ch)) - 'a');
        v = G.mul(v, std::isupper(static_cast<unsigned char>(ch)) ? G.inverse(image[g]) : image[g]);
      }
      if (v != G.identity()) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    for (std::size_t i = 0; i < image.size(); ++i) {
      if (++image[i] < G.order()) break;
      image[i] = 0;
    }
  }
  return count;
}

}  // namespace kuperberg
