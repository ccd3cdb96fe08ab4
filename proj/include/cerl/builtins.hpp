#pragma once

// eval(id, v1..vn): the redex produced when a parameter-list frame has
// all of its arguments. Closure application, tuple/values/map
// construction, BIF calls and primops. Failures are Exception results,
// never host errors.

#include <functional>
#include <map>
#include <span>
#include <string>
#include <tuple>

#include "cerl/ast.hpp"
#include "cerl/machine.hpp"

namespace cerl {

using BifFn = std::function<Result(std::span<const ValuePtr>)>;

class BifTable {
 public:
  using Key = std::tuple<std::string, std::string, std::size_t>;

  /// erlang:'+' '-' (unary and binary) '*' 'div' 'rem' '==' '/=' '<' '=<' '>' '>=' 'length'
  /// 'hd' 'tl' 'element' 'tuple_size' 'and' 'or' 'not'.
  static const BifTable& standard();

  void add(std::string module, std::string function, std::size_t arity, BifFn fn);
  const BifFn* find(const std::string& module, const std::string& function,
                    std::size_t arity) const;
  std::size_t size() const { return table_.size(); }

 private:
  std::map<Key, BifFn> table_;
};

Redex eval(const FrameId& id, std::span<const ValuePtr> args,
           const BifTable& bifs = BifTable::standard());

/// erlang:'==' on two values: the atom 'true' or 'false'.
ValuePtr bif_equal(const ValuePtr& a, const ValuePtr& b);

/// {error, Reason, Details}
Exception error_exception(ValuePtr reason, ValuePtr details);
Exception if_clause_exception();

}  // namespace cerl
