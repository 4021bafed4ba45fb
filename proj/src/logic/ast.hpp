#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tmlogic::logic {

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  enum class Kind { Variable, Constant, Sum };

  Kind kind = Kind::Constant;
  std::string name;          // Variable
  std::uint64_t value = 0;   // Constant
  TermPtr lhs, rhs;          // Sum

  static TermPtr variable(std::string name);
  static TermPtr constant(std::uint64_t value);
  static TermPtr sum(TermPtr lhs, TermPtr rhs);
};

enum class RelOp { Eq, Ne, Lt, Le, Gt, Ge };

const char* relop_text(RelOp op) noexcept;

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class Kind {
    Compare,     // lhs op rhs
    SeqCompare,  // T[lhs] op T[rhs]   or   T[lhs] op bit
    Not,
    And,
    Or,
    Implies,
    Iff,
    Forall,      // one bound variable; `A j,k` nests
    Exists,
    Call,        // $name(args)
  };

  Kind kind = Kind::Compare;
  RelOp op = RelOp::Eq;
  TermPtr lhs, rhs;
  std::optional<int> bit;
  std::string var;
  std::string name;
  std::vector<TermPtr> args;
  FormulaPtr left, right;

  static FormulaPtr compare(TermPtr lhs, RelOp op, TermPtr rhs);
  static FormulaPtr seq_compare(TermPtr index, RelOp op, TermPtr other_index);
  static FormulaPtr seq_compare_bit(TermPtr index, RelOp op, int bit);
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr binary(Kind kind, FormulaPtr l, FormulaPtr r);
  static FormulaPtr quantifier(Kind kind, std::string var, FormulaPtr body);
  static FormulaPtr call(std::string name, std::vector<TermPtr> args);
};

std::string to_string(const Term& t);
/// Fully parenthesized rendering; quantifiers print as "(A x body)".
std::string to_string(const Formula& f);

void collect_variables(const Term& t, std::set<std::string>& out);
std::set<std::string> free_variables(const Formula& f);

/// Replaces free occurrences of `from` by the variable `to`, which must not
/// occur in `f`.
FormulaPtr rename_free(const FormulaPtr& f, const std::string& from, const std::string& to);

}  // namespace tmlogic::logic
