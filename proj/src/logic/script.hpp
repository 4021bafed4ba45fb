#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "linrep/linrep.hpp"
#include "logic/compiler.hpp"
#include "logic/parser.hpp"

namespace tmlogic::logic {

struct CommandRecord {
  Command::Kind kind = Command::Kind::Def;
  std::string name;
  std::string parameter;
  std::string text;
  int line = 0;
  /// Set for evals of sentences; empty for defs, counting evals and evals
  /// with free variables.
  std::optional<bool> verdict;
  std::vector<std::string> tracks;
  std::size_t states = 0;
  double elapsed_ms = 0.0;
  bool cached = false;
  std::optional<linrep::LinearRepresentation> representation;
};

struct ProofReport {
  std::vector<CommandRecord> commands;
  PredicateEnv env;
  /// Automata of evals, by command name.
  std::map<std::string, automata::Automaton> results;

  const CommandRecord* find(std::string_view name) const;
  std::size_t def_count() const;
  std::size_t eval_count() const;
};

/// Compiled defs keyed by the whole chain of def commands leading to them, so
/// scripts sharing a prelude compile it once.
class DefCache {
 public:
  const Predicate* find(const std::string& key) const;
  void store(const std::string& key, const Predicate& p);
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::map<std::string, Predicate> entries_;
};

using ProgressFn = std::function<void(const CommandRecord&)>;

/// Runs defs in order, then evaluates each eval; errors are rethrown with
/// the failing command's line and name prepended.
ProofReport run_script(std::string_view source, const CompileOptions& options = {},
                       DefCache* cache = nullptr, const ProgressFn& progress = {});

}  // namespace tmlogic::logic
