#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "cerl/frontend.hpp"

namespace cerl {

namespace {

enum class Tok {
  Atom, Var, Int, Keyword, Punct, End,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const std::set<std::string, std::less<>> kKeywords = {
    "case", "of", "when", "end", "let", "in", "letrec", "do", "call",
    "primop", "apply", "try", "catch", "fun",
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@';
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourcePos at = pos_;
      if (i_ >= src_.size()) {
        out.push_back({Tok::End, "end of input", at});
        return out;
      }
      char c = src_[i_];
      if (c == '\'') {
        out.push_back({Tok::Atom, quoted(), at});
      } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                 (c == '-' && i_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_ + 1])))) {
        std::string s(1, c);
        advance();
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) s += advance();
        out.push_back({Tok::Int, s, at});
      } else if (ident_start(c)) {
        std::string s;
        while (i_ < src_.size() && ident_char(src_[i_])) s += advance();
        if (std::isupper(static_cast<unsigned char>(s[0])) || s[0] == '_') {
          out.push_back({Tok::Var, s, at});
        } else if (kKeywords.count(s)) {
          out.push_back({Tok::Keyword, s, at});
        } else {
          throw ParseError(at, "unquoted atom '" + s + "'; atoms must be written in single quotes");
        }
      } else {
        out.push_back({Tok::Punct, punct(at), at});
      }
    }
  }

 private:
  char advance() {
    char c = src_[i_++];
    if (c == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    return c;
  }

  bool starts(std::string_view s) const { return src_.substr(i_, s.size()) == s; }

  void skip_space() {
    while (i_ < src_.size()) {
      char c = src_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (i_ < src_.size() && src_[i_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  std::string quoted() {
    SourcePos at = pos_;
    advance();
    std::string s;
    for (;;) {
      if (i_ >= src_.size()) throw ParseError(at, "unterminated atom");
      char c = advance();
      if (c == '\'') return s;
      if (c == '\\') {
        if (i_ >= src_.size()) throw ParseError(at, "unterminated atom");
        char e = advance();
        s += e == 'n' ? '\n' : e == 't' ? '\t' : e;
      } else {
        s += c;
      }
    }
  }

  std::string punct(SourcePos at) {
    if (starts("-|")) throw ParseError(at, "annotations are not supported; strip annotations upstream");
    for (std::string_view p : {"->", "=>", "~{", "}~"}) {
      if (starts(p)) {
        advance();
        advance();
        return std::string(p);
      }
    }
    char c = src_[i_];
    if (std::string_view("(){}[]<>,|:/=;").find(c) == std::string_view::npos) {
      throw ParseError(at, std::string("unexpected character '") + c + "'");
    }
    advance();
    return std::string(1, c);
  }

  std::string_view src_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(Lexer(src).run()) {
    for (const auto& t : toks_) {
      if (t.kind == Tok::Var) used_.insert(t.text);
    }
  }

  SourceUnit unit() {
    SourceUnit u;
    if (looks_like_definition()) {
      while (peek().kind != Tok::End) {
        SourcePos at = peek().pos;
        u.definitions.push_back(Definition{definition(), at});
      }
    } else {
      u.expression = expression();
      expect_end();
    }
    return u;
  }

  ExprPtr whole_expression() {
    ExprPtr e = expression();
    expect_end();
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  Token next() {
    Token t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }

  bool is(Tok kind, std::string_view text, std::size_t ahead = 0) const {
    return peek(ahead).kind == kind && peek(ahead).text == text;
  }
  bool is_punct(std::string_view p, std::size_t ahead = 0) const { return is(Tok::Punct, p, ahead); }
  bool is_keyword(std::string_view k) const { return is(Tok::Keyword, k); }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    if (t.kind == Tok::Atom) found = "atom '" + t.text + "'";
    throw ParseError(t.pos, "unexpected " + found, std::move(expected));
  }

  void expect_punct(std::string_view p) {
    if (!is_punct(p)) fail({std::string(p)});
    next();
  }

  void expect_keyword(std::string_view k) {
    if (!is_keyword(k)) fail({std::string(k)});
    next();
  }

  void expect_end() {
    if (peek().kind != Tok::End) fail({"end of input"});
  }

  std::string variable() {
    if (peek().kind != Tok::Var) fail({"variable"});
    return next().text;
  }

  std::string atom_name() {
    if (peek().kind != Tok::Atom) fail({"atom"});
    return next().text;
  }

  Integer integer_literal() {
    if (peek().kind != Tok::Int) fail({"integer"});
    return Integer(next().text);
  }

  bool looks_like_definition() const {
    return peek().kind == Tok::Atom && is_punct("/", 1) && peek(2).kind == Tok::Int && is_punct("=", 3);
  }

  FunId funid() {
    std::string name = atom_name();
    expect_punct("/");
    Integer k = integer_literal();
    if (k < 0) throw ParseError(peek().pos, "negative arity");
    return FunId{name, static_cast<std::size_t>(k)};
  }

  FunDef definition() {
    SourcePos at = peek().pos;
    FunId id = funid();
    expect_punct("=");
    if (!is_keyword("fun")) fail({"fun"});
    next();
    std::vector<std::string> params = var_list_parens();
    expect_punct("->");
    ExprPtr body = expression();
    if (params.size() != id.arity) {
      throw ParseError(at, "'" + id.atom + "'/" + std::to_string(id.arity) + " is defined with " +
                               std::to_string(params.size()) + " parameters");
    }
    return FunDef{std::move(id), std::move(params), std::move(body)};
  }

  std::vector<std::string> var_list_parens() {
    expect_punct("(");
    std::vector<std::string> out;
    if (!is_punct(")")) {
      out.push_back(variable());
      while (is_punct(",")) {
        next();
        out.push_back(variable());
      }
    }
    expect_punct(")");
    return out;
  }

  // <X, Y> or a single X
  std::vector<std::string> binders() {
    if (peek().kind == Tok::Var) return {next().text};
    expect_punct("<");
    std::vector<std::string> out;
    if (!is_punct(">")) {
      out.push_back(variable());
      while (is_punct(",")) {
        next();
        out.push_back(variable());
      }
    }
    expect_punct(">");
    return out;
  }

  std::vector<ExprPtr> args() {
    expect_punct("(");
    std::vector<ExprPtr> out;
    if (!is_punct(")")) {
      out.push_back(expression());
      while (is_punct(",")) {
        next();
        out.push_back(expression());
      }
    }
    expect_punct(")");
    return out;
  }

  std::string fresh() {
    for (;;) {
      std::string name = "_Details" + std::to_string(++fresh_);
      if (used_.insert(name).second) return name;
    }
  }

  ExprPtr expression() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: return expr::val(val::integer(integer_literal()));
      case Tok::Var: return expr::var(next().text);
      case Tok::Atom: {
        if (is_punct("/", 1) && peek(2).kind == Tok::Int) {
          FunId f = funid();
          return expr::val(val::funid(f.atom, f.arity));
        }
        return expr::atom(next().text);
      }
      case Tok::Keyword: return keyword_expression();
      case Tok::Punct: return bracketed();
      case Tok::End: break;
    }
    fail({"expression"});
  }

  ExprPtr bracketed() {
    if (is_punct("(")) {
      next();
      ExprPtr e = expression();
      expect_punct(")");
      return e;
    }
    if (is_punct("<")) {
      next();
      std::vector<ExprPtr> es = comma_list(">");
      return expr::values(std::move(es));
    }
    if (is_punct("{")) {
      next();
      return expr::tuple(comma_list("}"));
    }
    if (is_punct("~{")) {
      next();
      std::vector<std::pair<ExprPtr, ExprPtr>> pairs;
      if (!is_punct("}~")) {
        for (;;) {
          ExprPtr k = expression();
          expect_punct("=>");
          pairs.emplace_back(k, expression());
          if (!is_punct(",")) break;
          next();
        }
      }
      expect_punct("}~");
      return expr::map(std::move(pairs));
    }
    if (is_punct("[")) {
      next();
      if (is_punct("]")) {
        next();
        return expr::val(val::nil());
      }
      std::vector<ExprPtr> heads{expression()};
      while (is_punct(",")) {
        next();
        heads.push_back(expression());
      }
      ExprPtr tail = expr::val(val::nil());
      if (is_punct("|")) {
        next();
        tail = expression();
      }
      expect_punct("]");
      for (auto it = heads.rbegin(); it != heads.rend(); ++it) tail = expr::cons(*it, tail);
      return tail;
    }
    fail({"expression"});
  }

  std::vector<ExprPtr> comma_list(std::string_view close) {
    std::vector<ExprPtr> out;
    if (!is_punct(close)) {
      out.push_back(expression());
      while (is_punct(",")) {
        next();
        out.push_back(expression());
      }
    }
    expect_punct(close);
    return out;
  }

  ExprPtr keyword_expression() {
    std::string k = next().text;
    if (k == "fun") {
      std::vector<std::string> params = var_list_parens();
      expect_punct("->");
      return expr::fun(std::move(params), expression());
    }
    if (k == "case") {
      ExprPtr scrutinee = expression();
      expect_keyword("of");
      std::vector<Clause> cls;
      while (!is_keyword("end")) {
        cls.push_back(clause());
        if (is_punct(";")) next();
      }
      next();
      return expr::case_(std::move(scrutinee), std::move(cls));
    }
    if (k == "let") {
      std::vector<std::string> vars = binders();
      expect_punct("=");
      ExprPtr bound = expression();
      expect_keyword("in");
      return expr::let(std::move(vars), std::move(bound), expression());
    }
    if (k == "letrec") {
      Ext ext;
      while (!is_keyword("in")) {
        if (peek().kind != Tok::Atom) fail({"function definition", "in"});
        ext.push_back(definition());
      }
      next();
      return expr::letrec(std::move(ext), expression());
    }
    if (k == "do") {
      ExprPtr first = expression();
      return expr::seq(std::move(first), expression());
    }
    if (k == "call") {
      ExprPtr m = expression();
      expect_punct(":");
      ExprPtr f = expression();
      return expr::call(std::move(m), std::move(f), args());
    }
    if (k == "primop") {
      std::string name = atom_name();
      return expr::primop(std::move(name), args());
    }
    if (k == "apply") {
      ExprPtr f = expression();
      return expr::apply(std::move(f), args());
    }
    if (k == "try") {
      ExprPtr body = expression();
      expect_keyword("of");
      std::vector<std::string> vars = binders();
      expect_punct("->");
      ExprPtr on_value = expression();
      expect_keyword("catch");
      SourcePos at = peek().pos;
      std::vector<std::string> cvars = binders();
      if (cvars.size() == 2) cvars.push_back(fresh());
      if (cvars.size() != 3) throw ParseError(at, "catch binds 2 or 3 variables");
      expect_punct("->");
      return expr::try_(std::move(body), std::move(vars), std::move(on_value), std::move(cvars), expression());
    }
    throw ParseError(toks_[pos_ - 1].pos, "unexpected keyword '" + k + "'", {"expression"});
  }

  Clause clause() {
    std::vector<PatternPtr> ps;
    if (is_punct("<")) {
      next();
      if (!is_punct(">")) {
        ps.push_back(pattern());
        while (is_punct(",")) {
          next();
          ps.push_back(pattern());
        }
      }
      expect_punct(">");
    } else {
      ps.push_back(pattern());
    }
    ExprPtr guard = expr::atom("true");
    if (is_keyword("when")) {
      next();
      guard = expression();
    }
    expect_punct("->");
    return Clause{std::move(ps), std::move(guard), expression()};
  }

  PatternPtr pattern() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Int: return pat::integer(integer_literal());
      case Tok::Var: return pat::var(next().text);
      case Tok::Atom: return pat::atom(next().text);
      default: break;
    }
    if (is_punct("{")) {
      next();
      std::vector<PatternPtr> elems;
      if (!is_punct("}")) {
        elems.push_back(pattern());
        while (is_punct(",")) {
          next();
          elems.push_back(pattern());
        }
      }
      expect_punct("}");
      return pat::tuple(std::move(elems));
    }
    if (is_punct("~{")) {
      next();
      std::vector<std::pair<PatternPtr, PatternPtr>> pairs;
      if (!is_punct("}~")) {
        for (;;) {
          PatternPtr k = pattern();
          expect_punct("=>");
          pairs.emplace_back(k, pattern());
          if (!is_punct(",")) break;
          next();
        }
      }
      expect_punct("}~");
      return pat::map(std::move(pairs));
    }
    if (is_punct("[")) {
      next();
      if (is_punct("]")) {
        next();
        return pat::nil();
      }
      std::vector<PatternPtr> heads{pattern()};
      while (is_punct(",")) {
        next();
        heads.push_back(pattern());
      }
      PatternPtr tail = pat::nil();
      if (is_punct("|")) {
        next();
        tail = pattern();
      }
      expect_punct("]");
      return pat::list(std::move(heads), std::move(tail));
    }
    fail({"pattern"});
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::set<std::string> used_;
  std::size_t fresh_ = 0;
};

ValuePtr constant(const ExprPtr& e) {
  if (const ValuePtr* v = e->as_value()) {
    return std::holds_alternative<Var>((*v)->node) ? nullptr : *v;
  }
  if (const auto* c = std::get_if<expr::Cons>(&e->node)) {
    ValuePtr h = constant(c->head);
    ValuePtr t = constant(c->tail);
    return h && t ? val::cons(h, t) : nullptr;
  }
  if (const auto* t = std::get_if<expr::Tuple>(&e->node)) {
    std::vector<ValuePtr> elems;
    for (const auto& x : t->elems) {
      ValuePtr v = constant(x);
      if (!v) return nullptr;
      elems.push_back(v);
    }
    return val::tuple(std::move(elems));
  }
  if (const auto* m = std::get_if<expr::Map>(&e->node)) {
    std::vector<std::pair<ValuePtr, ValuePtr>> pairs;
    for (const auto& [k, x] : m->pairs) {
      ValuePtr kv = constant(k);
      ValuePtr xv = constant(x);
      if (!kv || !xv) return nullptr;
      pairs.emplace_back(kv, xv);
    }
    return val::map(std::move(pairs));
  }
  return nullptr;
}

std::string describe(SourcePos pos, const std::string& message, const std::vector<std::string>& expected) {
  std::ostringstream os;
  os << pos.line << ":" << pos.column << ": " << message;
  if (!expected.empty()) {
    os << "; expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) os << (i + 1 == expected.size() ? " or " : ", ");
      os << expected[i];
    }
  }
  return os.str();
}

}  // namespace

ParseError::ParseError(SourcePos p, std::string msg, std::vector<std::string> exp)
    : std::runtime_error(describe(p, msg, exp)),
      pos(p),
      message(std::move(msg)),
      expected(std::move(exp)) {}

Ext SourceUnit::ext() const {
  Ext out;
  for (const auto& d : definitions) out.push_back(d.def);
  return out;
}

ExprPtr SourceUnit::entry_expr(const std::vector<ValuePtr>& args, const std::optional<FunId>& entry) const {
  std::vector<ExprPtr> arg_exprs;
  for (const auto& a : args) arg_exprs.push_back(expr::val(a));
  if (!has_definitions()) {
    if (entry) throw std::invalid_argument("--entry needs a file of definitions");
    return args.empty() ? expression : expr::apply(expression, std::move(arg_exprs));
  }
  FunId target = entry.value_or(definitions.back().def.id);
  auto it = std::find_if(definitions.begin(), definitions.end(),
                         [&](const Definition& d) { return d.def.id == target; });
  if (it == definitions.end()) {
    throw std::invalid_argument("no definition '" + target.atom + "'/" + std::to_string(target.arity));
  }
  ExprPtr call = expr::apply(expr::val(val::funid(target.atom, target.arity)), std::move(arg_exprs));
  return expr::letrec(ext(), std::move(call));
}

SourceUnit parse_unit(std::string_view text) { return Parser(text).unit(); }

ExprPtr parse_expr(std::string_view text) { return Parser(text).whole_expression(); }

ValuePtr parse_value(std::string_view text) {
  ExprPtr e = parse_expr(text);
  ValuePtr v = constant(e);
  if (!v) throw ParseError(SourcePos{}, "not a literal value: " + std::string(text));
  return v;
}

std::optional<FunId> parse_funid(std::string_view text) {
  auto slash = text.rfind('/');
  if (slash == std::string_view::npos || slash == 0) return std::nullopt;
  std::string name(text.substr(0, slash));
  std::string_view arity = text.substr(slash + 1);
  if (arity.empty() || !std::all_of(arity.begin(), arity.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  if (name.size() >= 2 && name.front() == '\'' && name.back() == '\'') name = name.substr(1, name.size() - 2);
  return FunId{name, static_cast<std::size_t>(std::stoul(std::string(arity)))};
}

}  // namespace cerl
