#ifndef HSJET_DOCUMENT_HPP
#define HSJET_DOCUMENT_HPP

#include <hsjet/presentations.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hsjet {

/// Input error with a 1-based source position.
class ParseError : public Error {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_, column_;
};

/// A parsed input file: field, variety and an optional point.
struct InputDocument {
  VarietyPresentation variety;
  std::optional<PointAssignment> point;
};

namespace detail {

struct Token {
  enum Kind { Ident, Number, Symbol, End } kind = End;
  std::string text;
  std::size_t line = 1, column = 1;
};

class Lexer {
public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      Token t;
      t.line = line_;
      t.column = col_;
      if (pos_ >= src_.size()) {
        out.push_back(t);
        return out;
      }
      char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Ident;
        while (pos_ < src_.size() && is_ident_char(src_[pos_])) t.text += take();
        // d[1,0]x keeps its bracketed order inside one token
        if (t.text == "d" && pos_ < src_.size() && src_[pos_] == '[') {
          while (pos_ < src_.size() && src_[pos_] != ']') t.text += take();
          if (pos_ >= src_.size()) throw ParseError(t.line, t.column, "unterminated derivative order");
          t.text += take();
          while (pos_ < src_.size() && is_ident_char(src_[pos_])) t.text += take();
        }
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        t.kind = Token::Number;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += take();
      } else if (std::string_view("+-*/^(),;=").find(c) != std::string_view::npos) {
        t.kind = Token::Symbol;
        t.text = take();
      } else {
        throw ParseError(t.line, t.column, std::string("unexpected character '") + c + "'");
      }
      out.push_back(std::move(t));
    }
  }

private:
  static bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  char take() {
    char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') take();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0, line_ = 1, col_ = 1;
};

/// Recursive-descent parser over a token stream.
class Parser {
public:
  Parser(std::vector<Token> toks) : t_(std::move(toks)) {}

  const Token& peek() const { return t_[i_]; }
  bool at_end() const { return peek().kind == Token::End; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(t.line, t.column, msg); }

  bool accept(std::string_view sym) {
    if (peek().kind == Token::Symbol && peek().text == sym) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(std::string_view sym) {
    if (!accept(sym)) fail(peek(), "expected '" + std::string(sym) + "'" + found());
  }
  bool accept_keyword(std::string_view kw) {
    if (peek().kind == Token::Ident && peek().text == kw) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw)) fail(peek(), "expected '" + std::string(kw) + "'" + found());
  }
  Token expect_kind(Token::Kind k, const std::string& what) {
    if (peek().kind != k) fail(peek(), "expected " + what + found());
    return t_[i_++];
  }
  std::string found() const { return at_end() ? " at end of input" : ", found '" + peek().text + "'"; }

  unsigned natural(const Token& t) const {
    if (t.text.size() > 9) fail(t, "number too large");
    return static_cast<unsigned>(std::stoul(t.text));
  }

  /// Identifier list, optionally comma separated, up to ';'.
  std::vector<Token> ident_list() {
    std::vector<Token> out;
    while (peek().kind == Token::Ident) {
      out.push_back(t_[i_++]);
      accept(",");
    }
    return out;
  }

private:
  std::vector<Token> t_;
  std::size_t i_ = 0;
};

/// Expression evaluator: polynomials in the declared variables over the parametric field.
class ExprReader {
public:
  ExprReader(Parser& p, const FieldDescriptor& f, const std::vector<std::string>& vars)
      : p_(p), f_(f), vars_(vars) {}

  DiffPoly poly() {
    DiffPoly acc;
    bool neg = p_.accept("-");
    if (!neg) p_.accept("+");
    acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (p_.accept("+")) acc += term();
      else if (p_.accept("-")) acc -= term();
      else return acc;
    }
  }

private:
  DiffPoly term() {
    DiffPoly acc = factor();
    for (;;) {
      if (p_.accept("*")) {
        acc = acc * factor();
      } else if (p_.peek().kind == Token::Symbol && p_.peek().text == "/") {
        Token slash = p_.peek();
        p_.accept("/");
        Token start = p_.peek();
        DiffPoly den = factor();
        if (!den.is_constant()) p_.fail(start, "variety variable in denominator");
        BaseElem d = den.constant_coeff();
        if (d.is_zero()) p_.fail(slash, "division by zero");
        acc = acc.scaled(d.inverse());
      } else {
        return acc;
      }
    }
  }

  DiffPoly factor() {
    DiffPoly base = atom();
    if (p_.accept("^")) {
      Token e = p_.expect_kind(Token::Number, "exponent");
      base = base.pow(p_.natural(e));
    }
    return base;
  }

  DiffPoly atom() {
    const Token& t = p_.peek();
    const std::uint64_t p = f_.characteristic;
    if (t.kind == Token::Number) {
      Token n = p_.expect_kind(Token::Number, "number");
      return diff_const(BaseElem(Scalar::mod(mpz_class(n.text), p)));
    }
    if (t.kind == Token::Ident) {
      Token id = p_.expect_kind(Token::Ident, "identifier");
      return identifier(id);
    }
    if (p_.accept("(")) {
      DiffPoly inner = poly();
      p_.expect(")");
      return inner;
    }
    p_.fail(t, "expected a number, identifier or '('" + p_.found());
  }

  std::optional<unsigned> var_index(const std::string& name) const {
    for (unsigned i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  DiffPoly identifier(const Token& id) {
    const std::uint64_t p = f_.characteristic;
    const std::size_t n = f_.derivation_count;
    for (unsigned i = 0; i < f_.parameter_names.size(); ++i)
      if (f_.parameter_names[i] == id.text) return diff_const(BaseElem::param(f_, i));
    if (auto v = var_index(id.text)) return diff_var(*v, n, p);
    if (auto s = derivative_symbol(id)) return diff_symbol(*s, p);
    p_.fail(id, "undeclared identifier '" + id.text + "'");
  }

  /// d2x (one derivation) or d[2,0]x.
  std::optional<DiffSymbol> derivative_symbol(const Token& id) const {
    const std::string& s = id.text;
    if (s.size() < 2 || s[0] != 'd') return std::nullopt;
    std::vector<unsigned> order;
    std::size_t k = 1;
    if (s[1] == '[') {
      std::size_t close = s.find(']');
      std::string body = s.substr(2, close - 2);
      std::size_t start = 0;
      while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        std::string piece = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (piece.empty() || piece.find_first_not_of("0123456789") != std::string::npos || piece.size() > 9)
          p_.fail(id, "malformed derivative order in '" + s + "'");
        order.push_back(static_cast<unsigned>(std::stoul(piece)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      k = close + 1;
    } else {
      while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
      if (k == 1 || k - 1 > 9) return std::nullopt;
      order.push_back(static_cast<unsigned>(std::stoul(s.substr(1, k - 1))));
    }
    auto v = var_index(s.substr(k));
    if (!v) return std::nullopt;
    if (order.size() != f_.derivation_count) p_.fail(id, "derivative order length does not match derivation count");
    return DiffSymbol{*v, MultiIndex(order)};
  }

  Parser& p_;
  const FieldDescriptor& f_;
  const std::vector<std::string>& vars_;
};

inline void check_fresh(const Parser& p, const Token& t, const std::vector<std::string>& seen) {
  if (std::find(seen.begin(), seen.end(), t.text) != seen.end()) p.fail(t, "duplicate identifier '" + t.text + "'");
  static const std::vector<std::string> reserved{"char", "params", "derivations", "vars", "gens", "point"};
  if (std::find(reserved.begin(), reserved.end(), t.text) != reserved.end()) p.fail(t, "reserved word '" + t.text + "'");
  if (t.text.size() > 1 && t.text[0] == 'd' && (std::isdigit(static_cast<unsigned char>(t.text[1])) || t.text[1] == '['))
    p.fail(t, "identifier '" + t.text + "' clashes with derivative notation");
}

}  // namespace detail

/// Parse an expression over the field and variables; used for points and maps.
inline DiffPoly parse_poly(std::string_view text, const FieldDescriptor& field, const std::vector<std::string>& vars) {
  detail::Parser p(detail::Lexer(text).run());
  DiffPoly f = detail::ExprReader(p, field, vars).poly();
  if (!p.at_end()) p.fail(p.peek(), "unexpected trailing input" + p.found());
  return f;
}

namespace detail {

inline BaseElem field_value(const DiffPoly& v, const FieldDescriptor& field) {
  BaseElem c = v.constant_coeff();
  return c.is_zero() ? BaseElem::scalar(field, 0) : c;
}

/// Assignments "x = e, y = e" up to `stop`; every variable is assigned exactly once.
inline PointAssignment read_point(Parser& p, const FieldDescriptor& field, const std::vector<std::string>& vars,
                                  std::string_view stop) {
  static const std::vector<std::string> no_vars;
  ExprReader values(p, field, no_vars);
  std::vector<std::optional<BaseElem>> vals(vars.size());
  do {
    Token id = p.expect_kind(Token::Ident, "variable name");
    auto it = std::find(vars.begin(), vars.end(), id.text);
    if (it == vars.end()) p.fail(id, "undeclared variable '" + id.text + "'");
    auto& slot = vals[static_cast<std::size_t>(it - vars.begin())];
    if (slot) p.fail(id, "variable '" + id.text + "' assigned twice");
    p.expect("=");
    slot = field_value(values.poly(), field);
  } while (p.accept(","));
  const Token end = p.peek();
  if (stop.empty()) {
    if (!p.at_end()) p.fail(end, "expected ',' or end of input" + p.found());
  } else {
    p.expect(stop);
  }
  PointAssignment out;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!vals[i]) p.fail(end, "point does not assign '" + vars[i] + "'");
    out.push_back(*vals[i]);
  }
  return out;
}

}  // namespace detail

/// "x = s, y = 1/s" against the declared variables.
inline PointAssignment parse_point(std::string_view text, const FieldDescriptor& field,
                                   const std::vector<std::string>& vars) {
  detail::Parser p(detail::Lexer(text).run());
  return detail::read_point(p, field, vars, "");
}

/// Morphism given as "y = f1, z = f2" over the source variables.
struct MorphismSpec {
  std::vector<std::string> target_names;
  Morphism images;
};

inline MorphismSpec parse_map(std::string_view text, const FieldDescriptor& field,
                              const std::vector<std::string>& source_vars) {
  detail::Parser p(detail::Lexer(text).run());
  detail::ExprReader reader(p, field, source_vars);
  MorphismSpec out;
  do {
    detail::Token id = p.expect_kind(detail::Token::Ident, "target variable name");
    if (std::find(out.target_names.begin(), out.target_names.end(), id.text) != out.target_names.end())
      p.fail(id, "target variable '" + id.text + "' assigned twice");
    p.expect("=");
    detail::Token start = p.peek();
    DiffPoly f = reader.poly();
    if (max_symbol_order(f) != 0) p.fail(start, "map images may not contain derivative symbols");
    out.target_names.push_back(id.text);
    out.images.push_back(std::move(f));
  } while (p.accept(","));
  if (!p.at_end()) p.fail(p.peek(), "expected ',' or end of input" + p.found());
  return out;
}

/// char N; params ...; derivations N; vars ...; gens p, ...; [point x = ..., ...;]
inline InputDocument parse_document(std::string_view text) {
  detail::Parser p(detail::Lexer(text).run());
  using detail::Token;

  p.expect_keyword("char");
  Token ct = p.expect_kind(Token::Number, "characteristic");
  if (ct.text.size() > 10) p.fail(ct, "characteristic too large");
  std::uint64_t ch = std::stoull(ct.text);
  if (ch != 0 && !FieldDescriptor::is_prime(ch)) p.fail(ct, "characteristic " + ct.text + " is neither 0 nor prime");
  if (ch >= (std::uint64_t{1} << 31)) p.fail(ct, "characteristic must be below 2^31");
  p.expect(";");

  std::vector<std::string> seen;
  p.expect_keyword("params");
  std::vector<std::string> params;
  for (const Token& t : p.ident_list()) {
    detail::check_fresh(p, t, seen);
    seen.push_back(t.text);
    params.push_back(t.text);
  }
  p.expect(";");

  p.expect_keyword("derivations");
  Token nt = p.expect_kind(Token::Number, "derivation count");
  unsigned n = p.natural(nt);
  if (n > params.size()) p.fail(nt, "more derivations than parameters");
  p.expect(";");

  p.expect_keyword("vars");
  std::vector<std::string> vars;
  for (const Token& t : p.ident_list()) {
    detail::check_fresh(p, t, seen);
    seen.push_back(t.text);
    vars.push_back(t.text);
  }
  if (vars.empty()) p.fail(p.peek(), "expected at least one variable" + p.found());
  p.expect(";");

  FieldDescriptor field(ch, params, n);
  InputDocument doc{VarietyPresentation{field, static_cast<unsigned>(vars.size()), {}, vars}, std::nullopt};

  p.expect_keyword("gens");
  detail::ExprReader reader(p, field, vars);
  if (!p.accept(";")) {
    do {
      detail::Token start = p.peek();
      DiffPoly g = reader.poly();
      if (max_symbol_order(g) != 0) p.fail(start, "generators may not contain derivative symbols");
      doc.variety.generators.push_back(std::move(g));
    } while (p.accept(","));
    p.expect(";");
  }

  if (p.accept_keyword("point")) doc.point = detail::read_point(p, field, vars, ";");
  if (!p.at_end()) p.fail(p.peek(), "unexpected input after document" + p.found());
  return doc;
}

/// Canonical text of a document; parse_document(print_document(d)) reproduces d.
inline std::string print_document(const InputDocument& d) {
  const VarietyPresentation& v = d.variety;
  const NameTable names = v.names();
  std::string out = "char " + std::to_string(v.field.characteristic) + ";\nparams";
  for (const auto& s : v.field.parameter_names) out += " " + s;
  out += ";\nderivations " + std::to_string(v.field.derivation_count) + ";\nvars";
  for (unsigned i = 0; i < v.var_count; ++i) out += " " + names.var(i);
  out += ";\ngens ";
  for (std::size_t j = 0; j < v.generators.size(); ++j) out += (j ? ", " : "") + diff_poly_string(v.generators[j], names);
  out += ";\n";
  if (d.point) {
    out += "point ";
    for (unsigned i = 0; i < d.point->size(); ++i)
      out += (i ? ", " : "") + names.var(i) + " = " + (*d.point)[i].to_string(names.params);
    out += ";\n";
  }
  return out;
}

}  // namespace hsjet

#endif  // HSJET_DOCUMENT_HPP
