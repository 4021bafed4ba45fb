#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "logic/ast.hpp"

namespace tmlogic::logic {

struct Command {
  enum class Kind { Def, Eval, EvalCount };

  Kind kind = Kind::Def;
  std::string name;
  std::string parameter;  // EvalCount only
  std::string source;     // formula text between the quotes
  FormulaPtr formula;
  int line = 0;           // 1-based line of the command keyword
};

const char* command_kind_name(Command::Kind kind) noexcept;

/// Formula grammar:
///   formula  := implies ('<=>' implies)*
///   implies  := or ('=>' implies)?
///   or       := and ('|' and)*
///   and      := unary ('&' unary)*
///   unary    := '~' unary | ('A'|'E') var (',' var)* formula | primary
///   primary  := '(' formula ')' | '$' name '(' terms ')'
///             | 'T[' term ']' ('='|'!=') ('T[' term ']' | '0' | '1')
///             | term relop term
///   term     := atom ('+' atom)*        atom := number | var | '(' term ')'
/// A quantifier body extends as far right as possible.
FormulaPtr parse_formula(std::string_view text);

/// Script lines: `def NAME "FORMULA":`, `eval NAME "FORMULA":`,
/// `eval NAME VAR "FORMULA":`; `#` starts a comment. Formulas may span lines.
std::vector<Command> parse_script(std::string_view source);

}  // namespace tmlogic::logic
