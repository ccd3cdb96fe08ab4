#pragma once

// The length-guard refactoring example as source text: the guard version,
// the pattern version it refactors to, and a broken variant with the two
// results swapped. Copies live in data/*.core for the CLI.

#include <string_view>

namespace cerl::corpus {

inline constexpr std::string_view kLengthGuard = R"core(% f(X) when length(X) == 0 -> 1;
% f(_) -> 2.
'f'/1 = fun (_0) ->
  case _0 of
    <L> when try let <_1> = call 'erlang':'length'(L)
                 in call 'erlang':'=='(_1, 0)
             of <Try> -> Try
             catch <T,R> -> 'false'
      -> 1
    <_3> when 'true' -> 2
    <_2> when 'true' ->
      primop 'match_fail'({'function_clause',_2})
  end
)core";

inline constexpr std::string_view kLengthPattern = R"core(% f([]) -> 1;
% f(_) -> 2.
'f'/1 = fun (_0) ->
  case _0 of
    <[]> when 'true' -> 1
    <_3> when 'true' -> 2
    <_2> when 'true' ->
      primop 'match_fail'({'function_clause',_2})
  end
)core";

inline constexpr std::string_view kLengthPatternSwapped = R"core(% f([]) -> 2;
% f(_) -> 1.
'f'/1 = fun (_0) ->
  case _0 of
    <[]> when 'true' -> 2
    <_3> when 'true' -> 1
    <_2> when 'true' ->
      primop 'match_fail'({'function_clause',_2})
  end
)core";

}  // namespace cerl::corpus
