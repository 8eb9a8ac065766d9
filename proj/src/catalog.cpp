#include "kuperberg/catalog.hpp"

#include <charconv>

#include "kuperberg/error.hpp"

namespace kuperberg {

namespace {

bool has_order(const Scalar& x, std::uint32_t n) {
  if (!x.pow(n).is_one()) return false;
  std::uint32_t m = n;
  for (std::uint32_t q = 2; q <= m; ++q) {
    if (m % q) continue;
    if (x.pow(n / q).is_one()) return false;
    while (m % q == 0) m /= q;
  }
  return true;
}

HopfAlgebra finish(std::string name, const Field& field, std::vector<std::string> basis,
                   std::shared_ptr<MultTable> mult, Vector unit, Comultiplication comult, Vector counit,
                   Matrix antipode) {
  return HopfAlgebra(HopfData{std::move(name), field, std::move(basis), std::move(mult), std::move(unit),
                              std::move(comult), std::move(counit), std::move(antipode)});
}

}  // namespace

std::optional<Scalar> primitive_root_of_unity(const Field& field, std::uint32_t n) {
  if (n == 0) return std::nullopt;
  const Scalar one = Scalar::one(field);
  if (n == 1) return one;
  if (n == 2) return field.characteristic() == 2 ? std::nullopt : std::optional<Scalar>(-one);
  switch (field.kind()) {
    case FieldKind::rational: return std::nullopt;
    case FieldKind::prime: {
      const std::uint32_t p = field.parameter();
      if ((p - 1) % n) return std::nullopt;
      for (std::uint32_t a = 2; a < p; ++a) {
        const Scalar x = Scalar::from_int(field, a);
        if (has_order(x, n)) return x;
      }
      return std::nullopt;
    }
    case FieldKind::cyclotomic: {
      const std::uint32_t m = field.parameter();
      const Scalar z = Scalar::zeta(field);
      // Roots of unity in Q(zeta_m) are +-zeta^k.
      for (std::uint32_t k = 0; k < 2 * m; ++k) {
        for (const Scalar& c : {z.pow(k), -z.pow(k)})
          if (has_order(c, n)) return c;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

HopfAlgebra trivial_algebra(const Field& field) {
  auto mult = std::make_shared<MultTable>(field, 1);
  const Scalar one = Scalar::one(field);
  mult->add(0, 0, 0, one);
  Matrix S = Matrix::identity(field, 1);
  return finish("trivial", field, {"1"}, mult, {one}, {{CoproductTerm{0, 0, one}}}, {one}, S);
}

HopfAlgebra group_algebra(const GroupTable& G, const Field& field) {
  const std::size_t n = G.order();
  const Scalar one = Scalar::one(field);
  auto mult = std::make_shared<MultTable>(field, n);
  std::vector<std::string> basis;
  Comultiplication comult(n);
  Matrix S(field, n, n);
  for (std::uint32_t a = 0; a < n; ++a) {
    basis.push_back("[" + G.label(a) + "]");
    for (std::uint32_t b = 0; b < n; ++b) mult->add(a, b, G.mul(a, b), one);
    comult[a].push_back({a, a, one});
    S(G.inverse(a), a) = one;
  }
  return finish("group_algebra_" + G.name(), field, std::move(basis), mult,
                unit_vector(field, n, G.identity()), std::move(comult), Vector(n, one), std::move(S));
}

HopfAlgebra dual_group_algebra(const GroupTable& G, const Field& field) {
  const std::size_t n = G.order();
  const Scalar one = Scalar::one(field);
  auto mult = std::make_shared<MultTable>(field, n);
  std::vector<std::string> basis;
  Comultiplication comult(n);
  Matrix S(field, n, n);
  for (std::uint32_t a = 0; a < n; ++a) {
    basis.push_back("e[" + G.label(a) + "]");
    mult->add(a, a, a, one);
    S(G.inverse(a), a) = one;
  }
  for (std::uint32_t b = 0; b < n; ++b)
    for (std::uint32_t c = 0; c < n; ++c) comult[G.mul(b, c)].push_back({b, c, one});
  return finish("dual_group_algebra_" + G.name(), field, std::move(basis), mult, Vector(n, one), std::move(comult),
                unit_vector(field, n, G.identity()), std::move(S));
}

HopfAlgebra taft_algebra(std::uint32_t n, const Field& field) {
  if (n < 2 || n > 8) throw Error(ErrorCode::bad_params, "Taft parameter must be in [2, 8]");
  const auto zeta = primitive_root_of_unity(field, n);
  if (!zeta)
    throw Error(ErrorCode::bad_params,
                field.to_string() + " has no primitive " + std::to_string(n) + "-th root of unity");
  const std::size_t dim = n * n;
  auto idx = [n](std::uint32_t i, std::uint32_t j) { return static_cast<std::size_t>(j * n + i); };
  const Scalar one = Scalar::one(field);

  auto mult = std::make_shared<MultTable>(field, dim);
  std::vector<std::string> basis(dim);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = 0; i < n; ++i) {
      std::string s;
      if (i) s += i == 1 ? "g" : "g^" + std::to_string(i);
      if (j) s += j == 1 ? "x" : "x^" + std::to_string(j);
      basis[idx(i, j)] = s.empty() ? "1" : s;
      // (g^i x^j)(g^k x^l) = zeta^{jk} g^{i+k} x^{j+l}.
      for (std::uint32_t l = 0; l < n; ++l)
        for (std::uint32_t k = 0; k < n; ++k)
          if (j + l < n) mult->add(idx(i, j), idx(k, l), idx((i + k) % n, j + l), zeta->pow(j * k));
    }

  const Vector unit = unit_vector(field, dim, idx(0, 0));
  const Vector g = unit_vector(field, dim, idx(1, 0));
  const Vector x = unit_vector(field, dim, idx(0, 1));
  const Vector g_inv = unit_vector(field, dim, idx(n - 1, 0));

  const TensorElement dg = TensorElement::pure(field, {g, g});
  const TensorElement dx = TensorElement::pure(field, {x, unit}) + TensorElement::pure(field, {g, x});
  const Vector sg = g_inv;
  const Vector sx = scale(-one, mult->multiply(g_inv, x));

  Comultiplication comult(dim);
  Vector counit = zero_vector(field, dim);
  Matrix S(field, dim, dim);
  for (std::uint32_t j = 0; j < n; ++j)
    for (std::uint32_t i = 0; i < n; ++i) {
      TensorElement d = TensorElement::pure(field, {unit, unit});
      Vector s = unit;
      for (std::uint32_t a = 0; a < i; ++a) {
        d = multiply(*mult, d, dg);
        s = mult->multiply(sg, s);  // S is an anti-homomorphism
      }
      Vector sxj = unit;
      for (std::uint32_t b = 0; b < j; ++b) {
        d = multiply(*mult, d, dx);
        sxj = mult->multiply(sx, sxj);
      }
      s = mult->multiply(sxj, s);
      const std::size_t e = idx(i, j);
      for (const auto& [k, c] : d.terms()) comult[e].push_back({k[0], k[1], c});
      if (j == 0) counit[e] = one;
      for (std::size_t r = 0; r < dim; ++r) S(r, e) = s[r];
    }
  const std::string name = n == 2 ? "sweedler_h4" : "taft_" + std::to_string(n);
  return finish(name, field, std::move(basis), mult, unit, std::move(comult), std::move(counit), std::move(S));
}

HopfAlgebra sweedler_h4(const Field& field) { return taft_algebra(2, field); }

Field default_field(std::string_view name) {
  if (name.starts_with("taft_")) {
    std::uint32_t n = 0;
    auto [ptr, ec] = std::from_chars(name.data() + 5, name.data() + name.size(), n);
    if (ec == std::errc() && ptr == name.data() + name.size() && n > 2) return Field::cyclotomic(n);
  }
  return Field::rational();
}

HopfAlgebra catalog(std::string_view name, const CatalogOptions& options) {
  const Field field = options.field ? *options.field : default_field(name);
  auto build = [&]() -> HopfAlgebra {
    if (name == "trivial" || name == "k") return trivial_algebra(field);
    if (name == "sweedler_h4") return sweedler_h4(field);
    if (name.starts_with("group_algebra_")) return group_algebra(group_by_name(name.substr(14)), field);
    if (name.starts_with("dual_group_algebra_")) return dual_group_algebra(group_by_name(name.substr(19)), field);
    if (name.starts_with("taft_")) {
      std::uint32_t n = 0;
      auto [ptr, ec] = std::from_chars(name.data() + 5, name.data() + name.size(), n);
      if (ec != std::errc() || ptr != name.data() + name.size())
        throw Error(ErrorCode::unknown_algebra, "bad Taft name '" + std::string(name) + "'");
      return taft_algebra(n, field);
    }
    throw Error(ErrorCode::unknown_algebra, "unknown catalog algebra '" + std::string(name) + "'");
  };
  HopfAlgebra H = build();
  const std::uint32_t p = field.characteristic();
  if (p != 0 && H.dim() % p == 0 && !options.allow_degenerate)
    throw Error(ErrorCode::bad_params, "characteristic " + std::to_string(p) + " divides dim " +
                                           std::to_string(H.dim()) + "; pass the degenerate override to proceed");
  return H;
}

std::vector<std::string> catalog_names() {
  return {"trivial",
          "group_algebra_Z2",
          "group_algebra_Z3",
          "group_algebra_Z4",
          "group_algebra_Z2xZ2",
          "group_algebra_S3",
          "group_algebra_D4",
          "group_algebra_Q8",
          "group_algebra_Z2xZ4",
          "group_algebra_Z2xZ2xZ2",
          "dual_group_algebra_Z2",
          "dual_group_algebra_Z3",
          "dual_group_algebra_Z2xZ2",
          "dual_group_algebra_S3",
          "sweedler_h4",
          "taft_3",
          "taft_4"};
}

}  // namespace kuperberg
