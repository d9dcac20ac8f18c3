#include "pcfss/parse.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <vector>

namespace pcfss {

ParseError::ParseError(SourcePos pos, const std::string& msg)
    : std::runtime_error(std::to_string(pos.line) + ":" + std::to_string(pos.col) + ": " + msg),
      pos_(pos),
      detail_(msg) {}

namespace {

enum class Tok {
  Ident, Real, Let, In, If, Then, Else, Lam, Fix, Sample, Score, Skip, UnitT, RealT,
  LParen, RParen, Colon, Dot, Comma, Eq, Arrow, End
};

struct Token {
  Tok kind;
  std::string text;
  double real = 0.0;
  SourcePos pos;
};

const char* describe(Tok k) {
  switch (k) {
    case Tok::Ident: return "identifier";
    case Tok::Real: return "real literal";
    case Tok::Let: return "'let'";
    case Tok::In: return "'in'";
    case Tok::If: return "'if'";
    case Tok::Then: return "'then'";
    case Tok::Else: return "'else'";
    case Tok::Lam: return "'lam'";
    case Tok::Fix: return "'fix'";
    case Tok::Sample: return "'sample'";
    case Tok::Score: return "'score'";
    case Tok::Skip: return "'skip'";
    case Tok::UnitT: return "'Unit'";
    case Tok::RealT: return "'Real'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Colon: return "':'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::Eq: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9') || c == '\''; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourcePos p{line_, col_};
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, "", 0.0, p});
        return out;
      }
      char c = src_[i_];
      if (is_ident_start(c)) {
        std::size_t b = i_;
        while (i_ < src_.size() && is_ident_char(src_[i_])) advance();
        std::string word(src_.substr(b, i_ - b));
        out.push_back(keyword(word, p));
        continue;
      }
      if (is_digit(c) || (c == '-' && i_ + 1 < src_.size() &&
                          (is_digit(src_[i_ + 1]) || src_.substr(i_, 4) == "-inf"))) {
        out.push_back(number(p));
        continue;
      }
      advance();
      switch (c) {
        case '(': out.push_back({Tok::LParen, "(", 0.0, p}); break;
        case ')': out.push_back({Tok::RParen, ")", 0.0, p}); break;
        case ':': out.push_back({Tok::Colon, ":", 0.0, p}); break;
        case '.': out.push_back({Tok::Dot, ".", 0.0, p}); break;
        case ',': out.push_back({Tok::Comma, ",", 0.0, p}); break;
        case '=': out.push_back({Tok::Eq, "=", 0.0, p}); break;
        case '-':
          if (i_ < src_.size() && src_[i_] == '>') {
            advance();
            out.push_back({Tok::Arrow, "->", 0.0, p});
            break;
          }
          [[fallthrough]];
        default:
          throw ParseError(p, std::string("unexpected character '") + c + "'");
      }
    }
  }

 private:
  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (c == '#') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else {
        return;
      }
    }
  }

  Token keyword(const std::string& w, SourcePos p) {
    static const std::pair<const char*, Tok> table[] = {
        {"let", Tok::Let},     {"in", Tok::In},       {"if", Tok::If},
        {"then", Tok::Then},   {"else", Tok::Else},   {"lam", Tok::Lam},
        {"fix", Tok::Fix},     {"sample", Tok::Sample}, {"score", Tok::Score},
        {"skip", Tok::Skip},   {"Unit", Tok::UnitT},  {"Real", Tok::RealT}};
    for (const auto& [name, k] : table)
      if (w == name) return {k, w, 0.0, p};
    if (w == "nan") return {Tok::Real, w, std::numeric_limits<double>::quiet_NaN(), p};
    if (w == "inf") return {Tok::Real, w, std::numeric_limits<double>::infinity(), p};
    return {Tok::Ident, w, 0.0, p};
  }

  Token number(SourcePos p) {
    std::size_t b = i_;
    if (src_[i_] == '-') advance();
    if (src_.substr(i_, 3) == "inf" && !(i_ + 3 < src_.size() && is_ident_char(src_[i_ + 3]))) {
      for (int k = 0; k < 3; ++k) advance();
      return {Tok::Real, "-inf", -std::numeric_limits<double>::infinity(), p};
    }
    while (i_ < src_.size() && is_digit(src_[i_])) advance();
    bool has_point = false;
    if (i_ + 1 < src_.size() && src_[i_] == '.' && is_digit(src_[i_ + 1])) {
      has_point = true;
      advance();
      while (i_ < src_.size() && is_digit(src_[i_])) advance();
    }
    if (i_ < src_.size() && (src_[i_] == 'e' || src_[i_] == 'E')) {
      std::size_t save = i_;
      int sl = line_, sc = col_;
      advance();
      if (i_ < src_.size() && (src_[i_] == '+' || src_[i_] == '-')) advance();
      if (i_ < src_.size() && is_digit(src_[i_])) {
        while (i_ < src_.size() && is_digit(src_[i_])) advance();
      } else {
        i_ = save;
        line_ = sl;
        col_ = sc;
      }
    }
    std::string text(src_.substr(b, i_ - b));
    if (!has_point)
      throw ParseError(p, "real literal '" + text + "' needs a decimal point, as in 1.0 or 2.5e-3");
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc::result_out_of_range) {
      v = std::strtod(text.c_str(), nullptr);
    } else if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ParseError(p, "malformed real literal '" + text + "'");
    }
    return {Tok::Real, text, v, p};
  }

  std::string_view src_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, const PrimRegistry& prims)
      : toks_(std::move(toks)), prims_(prims) {}

  Term program() {
    Term t = term();
    expect_end();
    return t;
  }

  Type whole_type() {
    Type t = type();
    expect_end();
    return t;
  }

 private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_ == toks_.size() - 1 ? i_ : i_++]; }
  bool at(Tok k) const { return peek().kind == k; }

  const Token& expect(Tok k, const char* context) {
    if (!at(k))
      throw ParseError(peek().pos, std::string("expected ") + describe(k) + " " + context +
                                       ", found " + found());
    return next();
  }

  std::string found() const {
    const Token& t = peek();
    if (t.kind == Tok::Ident || t.kind == Tok::Real) return "'" + t.text + "'";
    return describe(t.kind);
  }

  void expect_end() {
    if (at(Tok::End)) return;
    if (starts_value())
      throw ParseError(peek().pos,
                       "application takes exactly one value argument; let-bind the partial "
                       "application first (let g = f x in g y)");
    throw ParseError(peek().pos, "unexpected " + found() + " after complete term");
  }

  bool is_prim_name(const Token& t) const {
    return t.kind == Tok::Ident && prims_.find(t.text).has_value();
  }

  bool starts_value() const {
    switch (peek().kind) {
      case Tok::Ident: return !is_prim_name(peek());
      case Tok::Real:
      case Tok::Skip:
      case Tok::Lam:
      case Tok::Fix:
      case Tok::LParen: return true;
      default: return false;
    }
  }

  std::string ident(const char* context) {
    const Token& t = expect(Tok::Ident, context);
    if (prims_.find(t.text))
      throw ParseError(t.pos, "'" + t.text + "' is a primitive and cannot be used as a name");
    return t.text;
  }

  Type type() {
    SourcePos p = peek().pos;
    Type left = [&]() {
      if (at(Tok::UnitT)) {
        next();
        return Type::unit();
      }
      if (at(Tok::RealT)) {
        next();
        return Type::real();
      }
      if (at(Tok::LParen)) {
        next();
        Type inner = type();
        expect(Tok::RParen, "to close type");
        return inner;
      }
      throw ParseError(p, "expected a type (Unit, Real, A -> B), found " + found());
    }();
    if (at(Tok::Arrow)) {
      next();
      return Type::arrow(left, type());
    }
    return left;
  }

  // A term that must be a value; used in argument positions.
  Value value(const char* role) {
    SourcePos p = peek().pos;
    if (!starts_value()) {
      if (is_prim_name(peek()) || at(Tok::Sample) || at(Tok::Score) || at(Tok::Let) ||
          at(Tok::If))
        throw ParseError(p, std::string(role) +
                                " must be a value; let-bind the computation first "
                                "(let y = ... in ...)");
      throw ParseError(p, std::string("expected a value as ") + role + ", found " + found());
    }
    return value_now(role);
  }

  Value value_now(const char* role) {
    const Token& t = peek();
    SourcePos p = t.pos;
    switch (t.kind) {
      case Tok::Ident: return Value::var(ident("variable"), p);
      case Tok::Real: {
        double a = next().real;
        return Value::real(a, p);
      }
      case Tok::Skip: next(); return Value::skip(p);
      case Tok::Lam: {
        next();
        std::string x = ident("after 'lam'");
        expect(Tok::Colon, "after lambda parameter");
        Type a = type();
        expect(Tok::Dot, "after lambda parameter type");
        Term body = term();
        return Value::lam(x, a, body, p);
      }
      case Tok::Fix: {
        next();
        std::string f = ident("after 'fix'");
        std::string x = ident("as fix parameter");
        expect(Tok::Colon, "after fix parameter");
        SourcePos tp = peek().pos;
        Type c = type();
        if (!c.is_arrow()) throw ParseError(tp, "fix needs an arrow type A -> B");
        expect(Tok::Dot, "after fix type");
        Term body = term();
        return Value::fix(f, x, c.domain(), c.codomain(), body, p);
      }
      case Tok::LParen: {
        next();
        Term inner = term();
        expect(Tok::RParen, "to close parenthesis");
        if (!inner.is_value())
          throw ParseError(p, std::string(role) +
                                  " must be a value; let-bind the parenthesized computation "
                                  "(let y = ... in ...)");
        return inner.value();
      }
      default: break;
    }
    throw ParseError(p, std::string("expected a value as ") + role + ", found " + found());
  }

  Term term() {
    const Token& t = peek();
    SourcePos p = t.pos;
    switch (t.kind) {
      case Tok::Let: {
        next();
        std::string x = ident("after 'let'");
        expect(Tok::Eq, "in let binding");
        Term m = term();
        expect(Tok::In, "after let-bound term");
        Term n = term();
        return Term::let(x, m, n, p);
      }
      case Tok::If: {
        next();
        Value g = value("if guard");
        expect(Tok::Then, "after if guard");
        Term m = term();
        expect(Tok::Else, "after then-branch");
        Term n = term();
        return Term::if_(g, m, n, p);
      }
      case Tok::Sample: next(); return Term::sample(p);
      case Tok::Score: {
        next();
        expect(Tok::LParen, "after 'score'");
        Value v = value("score argument");
        expect(Tok::RParen, "to close score");
        return Term::score(v, p);
      }
      case Tok::Ident:
        if (is_prim_name(t)) {
          PrimId fid = *prims_.find(t.text);
          std::string name = next().text;
          expect(Tok::LParen, "after primitive name");
          std::vector<Value> args;
          if (!at(Tok::RParen)) {
            args.push_back(value("primitive argument"));
            while (at(Tok::Comma)) {
              next();
              args.push_back(value("primitive argument"));
            }
          }
          expect(Tok::RParen, "to close primitive arguments");
          return Term::prim(fid, std::move(args), p);
        }
        break;
      case Tok::LParen: {
        // Parenthesized term; only a value may be applied.
        next();
        Term inner = term();
        expect(Tok::RParen, "to close parenthesis");
        if (!inner.is_value()) {
          if (starts_value())
            throw ParseError(p,
                             "only values can be applied; let-bind the parenthesized "
                             "computation (let g = ... in g x)");
          return inner;
        }
        return application(inner.value(), p);
      }
      default: break;
    }
    if (!starts_value())
      throw ParseError(p, "expected a term, found " + found());
    Value v = value_now("term");
    return application(v, p);
  }

  Term application(const Value& fn, SourcePos p) {
    if (!starts_value()) {
      if (is_prim_name(peek()) || at(Tok::Sample) || at(Tok::Score) || at(Tok::Let) ||
          at(Tok::If))
        throw ParseError(peek().pos,
                         "function argument must be a value; let-bind it first "
                         "(let y = ... in f y)");
      return Term::val(fn, p);
    }
    Value arg = value("function argument");
    if (starts_value())
      throw ParseError(peek().pos,
                       "application takes exactly one value argument; let-bind the partial "
                       "application first (let g = f x in g y)");
    return Term::app(fn, arg, p);
  }

  std::vector<Token> toks_;
  const PrimRegistry& prims_;
  std::size_t i_ = 0;
};

std::string type_in_fix(const Type& t) {
  if (t.is_arrow()) return "(" + t.str() + ")";
  return t.str();
}

class Printer {
 public:
  explicit Printer(const PrimRegistry& prims) : prims_(prims) {}

  std::string term(const Term& t) {
    switch (t.kind()) {
      case Term::Kind::Val: return value(t.value());
      case Term::Kind::App: return atom(t.value()) + " " + atom(t.arg());
      case Term::Kind::Let:
        return "let " + t.var() + " = " + term(t.bound()) + " in " + term(t.body());
      case Term::Kind::If:
        return "if " + atom(t.value()) + " then " + term(t.then_branch()) + " else " +
               term(t.else_branch());
      case Term::Kind::Prim: {
        std::string s = prims_.at(t.prim_id()).name + "(";
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) s += ", ";
          s += atom(t.args()[i]);
        }
        return s + ")";
      }
      case Term::Kind::Sample: return "sample";
      case Term::Kind::Score: return "score(" + atom(t.value()) + ")";
    }
    return "?";
  }

  std::string value(const Value& v) {
    switch (v.kind()) {
      case Value::Kind::Skip: return "skip";
      case Value::Kind::Var: return v.name();
      case Value::Kind::Real: return format_real(v.real());
      case Value::Kind::Lam:
        return "lam " + v.name() + ": " + v.type().str() + ". " + term(v.body());
      case Value::Kind::Fix:
        return "fix " + v.name() + " " + v.param() + ": " + type_in_fix(v.type()) + " -> " +
               v.result_type().str() + ". " + term(v.body());
    }
    return "?";
  }

  std::string atom(const Value& v) {
    if (v.kind() == Value::Kind::Lam || v.kind() == Value::Kind::Fix) return "(" + value(v) + ")";
    return value(v);
  }

 private:
  const PrimRegistry& prims_;
};

}  // namespace

Term parse_program(std::string_view source, const PrimRegistry& prims) {
  Parser p(Lexer(source).run(), prims);
  return p.program();
}

Type parse_type(std::string_view source) {
  Parser p(Lexer(source).run(), builtin_prims());
  return p.whole_type();
}

std::string format_real(double a) {
  if (std::isnan(a)) return "nan";
  if (std::isinf(a)) return a > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, a);
  std::string s(buf, ptr);
  if (s.find('.') != std::string::npos) return s;
  auto e = s.find('e');
  if (e == std::string::npos) return s + ".0";
  return s.substr(0, e) + ".0" + s.substr(e);
}

std::string print_term(const Term& t, const PrimRegistry& prims) { return Printer(prims).term(t); }

std::string print_value(const Value& v, const PrimRegistry& prims) {
  return Printer(prims).value(v);
}

}  // namespace pcfss
