#include "kuperberg/hopf_io.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

#include "kuperberg/error.hpp"
#include "text.hpp"

namespace kuperberg {

HopfAlgebra parse_hopf(std::string_view source, bool verify) {
  using text::at;
  const auto lines = text::tokenize(source);

  std::string name = "unnamed";
  std::optional<std::size_t> dim;
  Field field;  // rational unless a 'field' line says otherwise
  std::vector<std::string> basis;
  std::shared_ptr<MultTable> mult;
  Vector unit, counit;
  Comultiplication comult;
  Matrix antipode;

  auto need_dim = [&](const text::Line& line) {
    if (!dim) throw SyntaxError(line.number, 1, "'dim' before structure constants");
    if (!mult) {
      mult = std::make_shared<MultTable>(field, *dim);
      unit = zero_vector(field, *dim);
      counit = zero_vector(field, *dim);
      comult.assign(*dim, {});
      antipode = Matrix(field, *dim, *dim);
    }
  };
  auto index = [&](const text::Line& line, std::size_t i, const char* what) {
    const auto& t = at(line, i, what);
    const std::size_t v = text::to_index(line, t, what);
    if (v >= *dim) throw SyntaxError(line.number, t.column, std::string(what) + " below dim");
    return v;
  };

  for (const auto& line : lines) {
    const std::string_view key = line.tokens[0].text;
    if (key == "name") {
      name = std::string(at(line, 1, "algebra name").text);
      text::expect_end(line, 2);
    } else if (key == "dim") {
      if (dim) throw SyntaxError(line.number, 1, "a single 'dim' line");
      dim = text::to_index(line, at(line, 1, "dimension"), "dimension");
      if (*dim == 0) throw SyntaxError(line.number, line.tokens[1].column, "positive dimension");
      text::expect_end(line, 2);
    } else if (key == "field") {
      if (mult) throw SyntaxError(line.number, 1, "'field' before structure constants");
      std::string field_text(at(line, 1, "field kind").text);
      if (line.tokens.size() > 2) field_text += " " + std::string(line.tokens[2].text);
      try {
        field = Field::parse(field_text);
      } catch (const Error&) {
        throw SyntaxError(line.number, line.tokens[1].column, "rational, prime P or cyclotomic N");
      }
      text::expect_end(line, field_text.find(' ') == std::string::npos ? 2 : 3);
    } else if (key == "basis") {
      for (std::size_t i = 1; i < line.tokens.size(); ++i) basis.emplace_back(line.tokens[i].text);
    } else if (key == "unit" || key == "counit") {
      need_dim(line);
      const std::size_t i = index(line, 1, "basis index");
      (key == "unit" ? unit : counit)[i] += text::to_scalar(line, at(line, 2, "coefficient"), field);
      text::expect_end(line, 3);
    } else if (key == "mult") {
      need_dim(line);
      const std::size_t i = index(line, 1, "basis index"), j = index(line, 2, "basis index"),
                        k = index(line, 3, "basis index");
      mult->add(i, j, k, text::to_scalar(line, at(line, 4, "coefficient"), field));
      text::expect_end(line, 5);
    } else if (key == "comult") {
      need_dim(line);
      const std::size_t i = index(line, 1, "basis index"), j = index(line, 2, "basis index"),
                        k = index(line, 3, "basis index");
      const Scalar c = text::to_scalar(line, at(line, 4, "coefficient"), field);
      if (!c.is_zero())
        comult[i].push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k), c});
      text::expect_end(line, 5);
    } else if (key == "antipode") {
      need_dim(line);
      const std::size_t i = index(line, 1, "basis index"), j = index(line, 2, "basis index");
      antipode(j, i) += text::to_scalar(line, at(line, 3, "coefficient"), field);
      text::expect_end(line, 4);
    } else {
      throw SyntaxError(line.number, line.tokens[0].column,
                        "one of name, dim, field, basis, unit, counit, mult, comult, antipode");
    }
  }
  if (!dim) throw SyntaxError(lines.empty() ? 1 : lines.back().number, 1, "a 'dim' line");
  if (!mult) throw SyntaxError(lines.back().number, 1, "structure constants");
  if (basis.empty())
    for (std::size_t i = 0; i < *dim; ++i) basis.push_back("e" + std::to_string(i));
  if (basis.size() != *dim)
    throw Error(ErrorCode::dimension_mismatch,
                "basis has " + std::to_string(basis.size()) + " labels but dim is " + std::to_string(*dim));

  // Merge repeated comult entries so the stored table is canonical.
  for (auto& terms : comult) {
    std::vector<CoproductTerm> merged;
    for (const auto& t : terms) {
      auto it = std::find_if(merged.begin(), merged.end(),
                             [&](const CoproductTerm& m) { return m.left == t.left && m.right == t.right; });
      if (it == merged.end())
        merged.push_back(t);
      else
        it->coeff += t.coeff;
    }
    std::erase_if(merged, [](const CoproductTerm& t) { return t.coeff.is_zero(); });
    terms = std::move(merged);
  }

  HopfAlgebra H(HopfData{name, field, basis, mult, unit, comult, counit, antipode});
  if (verify) {
    const Report r = check_hopf_axioms(H);
    if (!r.all_passed()) {
      std::ostringstream os;
      os << name << " fails the Hopf axioms:";
      for (const auto& c : r.failures()) os << ' ' << c.name << " (witness " << c.witness << ");";
      throw Error(ErrorCode::axiom_failure, os.str());
    }
  }
  return H;
}

HopfAlgebra load_hopf(const std::string& path, bool verify) { return parse_hopf(text::read_file(path), verify); }

std::string serialize_hopf(const HopfAlgebra& H) {
  std::ostringstream os;
  os << "name " << H.name() << '\n' << "dim " << H.dim() << '\n' << "field " << H.field().to_string() << '\n';
  os << "basis";
  for (const auto& b : H.basis_labels()) os << ' ' << b;
  os << '\n';
  const std::size_t n = H.dim();
  for (std::size_t i = 0; i < n; ++i)
    if (!H.unit()[i].is_zero()) os << "unit " << i << ' ' << text::coefficient_text(H.unit()[i]) << '\n';
  for (std::size_t i = 0; i < n; ++i)
    if (!H.counit()[i].is_zero()) os << "counit " << i << ' ' << text::coefficient_text(H.counit()[i]) << '\n';
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      auto terms = H.mult().product(i, j);
      std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
      for (const auto& t : terms) os << "mult " << i << ' ' << j << ' ' << t.index << ' ' << text::coefficient_text(t.coeff) << '\n';
    }
  for (std::size_t i = 0; i < n; ++i) {
    auto terms = H.comult(i);
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return std::pair(a.left, a.right) < std::pair(b.left, b.right); });
    for (const auto& t : terms)
      os << "comult " << i << ' ' << t.left << ' ' << t.right << ' ' << text::coefficient_text(t.coeff) << '\n';
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!H.antipode()(j, i).is_zero()) os << "antipode " << i << ' ' << j << ' ' << text::coefficient_text(H.antipode()(j, i)) << '\n';
  return os.str();
}

}  // namespace kuperberg
