#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "automata/automaton.hpp"
#include "logic/ast.hpp"

namespace tmlogic::logic {

struct Predicate {
  /// Declared free variables; alphabetical, equal to automaton.tracks().
  std::vector<std::string> params;
  automata::Automaton automaton;
  std::string source;
};

class PredicateEnv {
 public:
  /// Throws Rebinding if `name` is already bound.
  void bind(const std::string& name, Predicate predicate);
  const Predicate* find(const std::string& name) const;
  std::size_t size() const noexcept { return predicates_.size(); }

 private:
  std::map<std::string, Predicate> predicates_;
};

struct CompileOptions {
  automata::Limits limits;
  bool corrupt_tm_dfao = false;
};

/// Compiles formulas to canonical automata whose tracks are the formula's
/// free variables. Auxiliary tracks are named "#<n>" and never escape.
class Compiler {
 public:
  explicit Compiler(const PredicateEnv& env, CompileOptions options = {});

  automata::Automaton compile(const Formula& f);

 private:
  struct TermTrack {
    std::string name;
    std::optional<automata::Automaton> constraint;
    std::vector<std::string> aux;
  };

  std::string fresh();
  TermTrack compile_term(const Term& t);
  automata::Automaton combine(const automata::Automaton& a, const automata::Automaton& b,
                              automata::BoolOp op);
  /// Conjoins term constraints onto a relation and projects the auxiliaries.
  automata::Automaton close_terms(automata::Automaton relation, std::vector<TermTrack> terms);
  automata::Automaton compile_compare(const Formula& f);
  automata::Automaton compile_sequence(const Formula& f);
  automata::Automaton compile_call(const Formula& f);
  automata::Automaton quantify(const Formula& f);

  const PredicateEnv& env_;
  CompileOptions options_;
  automata::Dfao sequence_;
  std::size_t counter_ = 0;
};

/// Compiles a def body: params = sorted free variables.
Predicate compile_predicate(const Formula& f, const PredicateEnv& env, const CompileOptions& options,
                            std::string source = {});

/// Truth value of a sentence; throws UnboundVariable if `f` has free
/// variables.
bool decide(const Formula& f, const PredicateEnv& env, const CompileOptions& options = {});

}  // namespace tmlogic::logic
