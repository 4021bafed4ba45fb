#pragma once

// Command implementations shared by the C API and the command-line tool.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "automata/automaton.hpp"
#include "core/thue_morse.hpp"
#include "linrep/linrep.hpp"
#include "logic/script.hpp"

namespace tmlogic::driver {

/// Script and expectation files compiled into the library, by file name
/// (e.g. "paper_thm1.wal"). Throws InvalidArgument for unknown names.
std::string_view embedded_file(std::string_view name);
std::vector<std::string> embedded_file_names();

struct Config {
  std::size_t window = tm::kDefaultWindow;
  std::size_t min_occurrences = tm::kDefaultMinOccurrences;
  std::size_t state_cap = automata::kDefaultStateCap;
  automata::DigitOrder digit_order = automata::DigitOrder::Lsd;
  /// Fault injection: compile T with a broken parity machine.
  bool corrupt_tm_dfao = false;

  /// Throws InvalidArgument on out-of-range settings.
  void validate() const;
};

class Session {
 public:
  explicit Session(Config config = {});
  ~Session();
  Session(const Session&) = delete;
  Session& operator=(const Session&) = delete;

  const Config& config() const noexcept { return config_; }
  logic::CompileOptions compile_options() const;

  const tm::TmPrefix& prefix();
  const tm::FactorCensus& census();

  /// Runs a script through the session's def cache.
  logic::ProofReport run(std::string_view script);
  /// The built-in theorem-1 script; defines the four pattern predicates.
  const logic::ProofReport& pattern_report();
  /// The built-in counting script; holds the mab and mabba representations.
  const logic::ProofReport& counting_report();
  /// One of abpat, bapat, abbapat, baabpat over tracks (i, n).
  const automata::Automaton& pattern(std::string_view name);

 private:
  Config config_;
  logic::DefCache cache_;
  std::optional<tm::TmPrefix> prefix_;
  std::unique_ptr<tm::FactorCensus> census_;
  std::optional<logic::ProofReport> patterns_;
  std::optional<logic::ProofReport> counting_;
};

inline constexpr std::string_view kPatternNames[] = {"abpat", "bapat", "abbapat", "baabpat"};

/// Machine-readable output: one key=value per line, keys sorted.
using KeyValues = std::map<std::string, std::string>;
std::string format_key_values(const KeyValues& kv);

// prove

struct ProveResult {
  logic::ProofReport report;
  std::map<std::string, bool> expected;
  std::vector<std::string> mismatches;
  bool pass = false;
};

/// Lines `name=TRUE` or `name=FALSE`; '#' comments.
std::map<std::string, bool> parse_expectations(std::string_view text);
/// Script errors propagate as exceptions.
ProveResult prove(Session& session, std::string_view script, std::string_view expectations);
std::string format_prove(const ProveResult& r);
KeyValues prove_key_values(const ProveResult& r);

// classify

struct ClassifyResult {
  std::size_t i = 0;
  std::size_t n = 0;
  tm::PatternClass oracle = tm::PatternClass::Insufficient;
  /// Empty when n < 2 (the pattern automata only cover n >= 2).
  std::optional<tm::PatternClass> automaton;
  std::size_t occurrence_count = 0;
  std::vector<tm::Occurrence> first_occurrences;

  /// The oracle produced a class and the automaton route, if any, agrees.
  bool ok() const noexcept;
};

/// Class of (i, n) from the pattern automata; n >= 2. Throws Disagreement
/// unless exactly one of the four automata accepts.
tm::PatternClass automaton_class(Session& session, std::uint64_t i, std::uint64_t n);
/// Runs both routes; an INSUFFICIENT oracle or a disagreement shows up in
/// ok(), not as an exception.
ClassifyResult classify(Session& session, std::size_t i, std::size_t n);
std::string format_classify(const ClassifyResult& r);
KeyValues classify_key_values(const ClassifyResult& r);

// count

struct CountRow {
  std::size_t n = 0;
  std::optional<std::int64_t> f_brute, f_rep, f_rec, f_closed;
  std::optional<std::int64_t> g_brute, g_rep, g_rec, g_closed;
  bool flagged = false;
};

inline constexpr std::size_t kMaxCountRows = 1024;

/// Rows n = 1..n_max; f via brute force, the counting representation,
/// 2*A006165(n-1) and the closed form; g likewise with A060973(n-1).
std::vector<CountRow> count_table(Session& session, std::size_t n_max);
std::string format_count(const std::vector<CountRow>& rows);
KeyValues count_key_values(const std::vector<CountRow>& rows);

// export

std::string export_pattern(Session& session, std::string_view pattern, automata::DigitOrder order);

// selftest

struct SelftestCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SelftestResult {
  std::vector<SelftestCheck> checks;
  bool pass = false;
};

SelftestResult selftest(Session& session);
std::string format_selftest(const SelftestResult& r);

}  // namespace tmlogic::driver
