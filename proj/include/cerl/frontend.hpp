#pragma once

// Text syntax: a small prefix notation for Core Erlang.
//
//   'atom'  42  -7  X  _0  []  'f'/1
//   [e1, e2 | t]   {e1, e2}   ~{k => v}~   <e1, e2>
//   fun (X, Y) -> e
//   case e of <p1, p2> when g -> b ... end
//   let <X, Y> = e in b          let X = e in b
//   letrec 'f'/1 = fun (X) -> e ... in b
//   do e1 e2
//   call 'm':'f'(args)   primop 'name'(args)   apply e(args)
//   try e of <X> -> e2 catch <C, R, D> -> e3
//
// '%' starts a comment. Atoms are always quoted. A catch with two
// variables gets a fresh third one. Annotations (-| ...) are rejected.
//
// A file is either one expression or a list of definitions
// 'f'/k = fun (...) -> e; the last definition is the entry point.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cerl/ast.hpp"
#include "cerl/machine.hpp"
#include "cerl/subst.hpp"

namespace cerl {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(SourcePos pos, std::string message, std::vector<std::string> expected = {});

  SourcePos pos;
  std::string message;
  std::vector<std::string> expected;
};

struct Definition {
  FunDef def;
  SourcePos pos;
};

struct SourceUnit {
  std::vector<Definition> definitions;
  /// Set for a bare-expression file.
  ExprPtr expression;

  bool has_definitions() const { return !definitions.empty(); }
  Ext ext() const;

  /// The expression run for the given arguments: the entry definition
  /// applied inside a letrec of all definitions, or the bare expression
  /// (applied to the arguments if there are any). `entry` selects a
  /// definition other than the last; throws std::invalid_argument if it
  /// names none.
  ExprPtr entry_expr(const std::vector<ValuePtr>& args,
                     const std::optional<FunId>& entry = std::nullopt) const;
};

SourceUnit parse_unit(std::string_view text);
ExprPtr parse_expr(std::string_view text);
/// Closed literal values only: no variables or functions.
ValuePtr parse_value(std::string_view text);
/// "f/1" or "'f'/1".
std::optional<FunId> parse_funid(std::string_view text);

std::string print(const ExprPtr& e);
std::string print(const ValuePtr& v);
std::string print(const PatternPtr& p);
std::string print(const ValueSeq& vs);
std::string print(const Exception& exc);
std::string print(const Result& r);
std::string print(const Redex& r);
std::string print(const Frame& f);
std::string print(const FrameStack& k);
std::string print(const Configuration& c);
std::string print(const Substitution& s);
std::string print(const Name& n);

}  // namespace cerl
