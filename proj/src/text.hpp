#pragma once

// Line tokenizer shared by the .hopf, .cocycle and .khd readers.

#include <gmpxx.h>

#include <charconv>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kuperberg/error.hpp"
#include "kuperberg/scalar.hpp"

namespace kuperberg::text {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::vector<Token> tokens;
  std::size_t end_column;
};

/// Splits text into non-empty lines of whitespace-separated tokens; '#' starts a comment.
inline std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}, raw.size() + 1};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      const std::size_t start = i;
      while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t' && raw[i] != '\r') ++i;
      if (i > start) line.tokens.push_back({raw.substr(start, i - start), start + 1});
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    pos = end + 1;
  }
  return lines;
}

/// Token i of a line, or a SyntaxError naming what was expected.
inline const Token& at(const Line& line, std::size_t i, const std::string& expected) {
  if (i >= line.tokens.size()) throw SyntaxError(line.number, line.end_column, expected);
  return line.tokens[i];
}

inline void expect_end(const Line& line, std::size_t count) {
  if (line.tokens.size() > count) throw SyntaxError(line.number, line.tokens[count].column, "end of line");
}

inline std::size_t to_index(const Line& line, const Token& t, const std::string& what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size())
    throw SyntaxError(line.number, t.column, what + " (non-negative integer)");
  return v;
}

inline mpq_class to_rational(const Line& line, const Token& t) {
  const std::string s(t.text);
  const auto slash = s.find('/');
  auto is_int = [](std::string_view p) {
    if (!p.empty() && (p[0] == '-' || p[0] == '+')) p.remove_prefix(1);
    if (p.empty()) return false;
    for (char c : p)
      if (c < '0' || c > '9') return false;
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num) || !is_int(den) || den[0] == '-' || den[0] == '+')
    throw SyntaxError(line.number, t.column, "rational number a/b");
  mpq_class q(mpz_class(num[0] == '+' ? num.substr(1) : num), mpz_class(den));
  if (q.get_den() == 0) throw SyntaxError(line.number, t.column, "nonzero denominator");
  q.canonicalize();
  return q;
}

inline Scalar to_scalar(const Line& line, const Token& t, const Field& field) {
  try {
    return Scalar::parse_in(field, t.text);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::division_by_zero || e.code() == ErrorCode::field_mismatch) throw;
    throw SyntaxError(line.number, t.column, "coefficient (a/b or [c0,c1,...])");
  }
}

/// Coefficient text as the readers accept it: "a/b", a residue, or "[c0,c1,...]".
inline std::string coefficient_text(const Scalar& s) {
  switch (s.field().kind()) {
    case FieldKind::rational: return s.rational_value().get_str();
    case FieldKind::prime: return std::to_string(s.residue());
    case FieldKind::cyclotomic: {
      std::string out = "[";
      const auto& c = s.coefficients();
      for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + c[i].get_str();
      return out + "]";
    }
  }
  return {};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::parse_error, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace kuperberg::text
