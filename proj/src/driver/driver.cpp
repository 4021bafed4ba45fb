#include "driver/driver.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

#include "core/error.hpp"

namespace tmlogic::driver {

using tm::PatternClass;

void Config::validate() const {
  if (window == 0 || window > tm::kMaxPrefixLength) {
    fail(ErrorCode::InvalidArgument, "window must be between 1 and " + std::to_string(tm::kMaxPrefixLength));
  }
  if (min_occurrences < 4) fail(ErrorCode::InvalidArgument, "min-occ must be at least 4");
  if (state_cap < 2) fail(ErrorCode::InvalidArgument, "state-cap must be at least 2");
}

Session::Session(Config config) : config_(config) { config_.validate(); }

Session::~Session() = default;

logic::CompileOptions Session::compile_options() const {
  logic::CompileOptions o;
  o.limits.state_cap = config_.state_cap;
  o.corrupt_tm_dfao = config_.corrupt_tm_dfao;
  return o;
}

const tm::TmPrefix& Session::prefix() {
  if (!prefix_) prefix_ = tm::generate_prefix(config_.window);
  return *prefix_;
}

const tm::FactorCensus& Session::census() {
  if (!census_) census_ = std::make_unique<tm::FactorCensus>(prefix(), config_.min_occurrences);
  return *census_;
}

logic::ProofReport Session::run(std::string_view script) {
  return logic::run_script(script, compile_options(), &cache_);
}

const logic::ProofReport& Session::pattern_report() {
  if (!patterns_) patterns_ = run(embedded_file("paper_thm1.wal"));
  return *patterns_;
}

const logic::ProofReport& Session::counting_report() {
  if (!counting_) counting_ = run(embedded_file("paper_count.wal"));
  return *counting_;
}

const automata::Automaton& Session::pattern(std::string_view name) {
  if (std::find(std::begin(kPatternNames), std::end(kPatternNames), name) == std::end(kPatternNames)) {
    fail(ErrorCode::InvalidArgument,
         "unknown pattern '" + std::string(name) + "' (expected abpat, bapat, abbapat or baabpat)");
  }
  const auto* p = pattern_report().env.find(std::string(name));
  if (!p) fail(ErrorCode::Internal, "pattern predicate missing from the built-in script");
  return p->automaton;
}

std::string format_key_values(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

namespace {

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : sep) + x;
  return out;
}

std::string verdict_text(bool v) { return v ? "TRUE" : "FALSE"; }

std::string padded(std::size_t x, int width) {
  std::ostringstream s;
  s << std::setw(width) << std::setfill('0') << x;
  return s.str();
}

std::int64_t to_integer(const linrep::Rational& q, std::size_t n) {
  if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
    fail(ErrorCode::Internal, "counting representation gave non-integer " + q.get_str() + " at n = " +
                                  std::to_string(n));
  }
  return q.get_num().get_si();
}

}  // namespace

// prove

std::map<std::string, bool> parse_expectations(std::string_view text) {
  std::map<std::string, bool> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line.erase(std::remove_if(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); }),
               line.end());
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string name = eq == std::string::npos ? "" : line.substr(0, eq);
    const std::string value = eq == std::string::npos ? "" : line.substr(eq + 1);
    if (name.empty() || (value != "TRUE" && value != "FALSE")) {
      fail(ErrorCode::Parse, "expectations line " + std::to_string(number) + ": expected name=TRUE or name=FALSE");
    }
    if (!out.emplace(name, value == "TRUE").second) {
      fail(ErrorCode::Parse, "expectations line " + std::to_string(number) + ": duplicate '" + name + "'");
    }
  }
  return out;
}

ProveResult prove(Session& session, std::string_view script, std::string_view expectations) {
  ProveResult r;
  r.expected = parse_expectations(expectations);
  r.report = session.run(script);
  for (const auto& [name, want] : r.expected) {
    const auto* rec = r.report.find(name);
    if (!rec) {
      r.mismatches.push_back(name + ": no such eval");
    } else if (!rec->verdict) {
      r.mismatches.push_back(name + ": has no truth value");
    } else if (*rec->verdict != want) {
      r.mismatches.push_back(name + ": got " + verdict_text(*rec->verdict) + ", expected " + verdict_text(want));
    }
  }
  r.pass = r.mismatches.empty();
  return r;
}

std::string format_prove(const ProveResult& r) {
  std::ostringstream out;
  for (const auto& c : r.report.commands) {
    out << std::left << std::setw(11) << logic::command_kind_name(c.kind) << std::setw(12) << c.name;
    if (c.verdict) {
      out << std::setw(7) << verdict_text(*c.verdict);
    } else if (c.representation) {
      out << std::setw(7) << ("dim " + std::to_string(c.representation->dim));
    } else {
      out << std::setw(7) << "-";
    }
    out << std::right << std::setw(8) << c.states << " states" << std::setw(10) << std::fixed
        << std::setprecision(1) << c.elapsed_ms << " ms";
    if (c.cached) out << "  (cached)";
    if (c.verdict) {
      auto it = r.expected.find(c.name);
      if (it != r.expected.end()) out << (it->second == *c.verdict ? "  ok" : "  MISMATCH");
    }
    out << '\n';
  }
  for (const auto& m : r.mismatches) out << "mismatch: " << m << '\n';
  out << "overall: " << (r.pass ? "pass" : "FAIL") << '\n';
  return out.str();
}

KeyValues prove_key_values(const ProveResult& r) {
  KeyValues kv;
  std::size_t index = 0;
  for (const auto& c : r.report.commands) {
    const std::string k = "command." + padded(++index, 3) + ".";
    kv[k + "kind"] = logic::command_kind_name(c.kind);
    kv[k + "name"] = c.name;
    kv[k + "states"] = std::to_string(c.states);
    kv[k + "tracks"] = join(c.tracks, ",");
    kv[k + "verdict"] = c.verdict ? verdict_text(*c.verdict) : "n/a";
    if (c.representation) kv[k + "dim"] = std::to_string(c.representation->dim);
    if (c.verdict) {
      auto it = r.expected.find(c.name);
      kv[k + "expected"] = it == r.expected.end() ? "none" : verdict_text(it->second);
    }
  }
  kv["commands"] = std::to_string(r.report.commands.size());
  kv["defs"] = std::to_string(r.report.def_count());
  kv["evals"] = std::to_string(r.report.eval_count());
  kv["mismatches"] = std::to_string(r.mismatches.size());
  kv["overall"] = r.pass ? "pass" : "fail";
  return kv;
}

// classify

bool ClassifyResult::ok() const noexcept {
  return oracle != PatternClass::Insufficient && (!automaton || *automaton == oracle);
}

PatternClass automaton_class(Session& session, std::uint64_t i, std::uint64_t n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "the pattern automata cover factor lengths n >= 2");
  static constexpr PatternClass kClasses[] = {PatternClass::AB, PatternClass::BA, PatternClass::ABBA,
                                              PatternClass::BAAB};
  const std::uint64_t values[] = {i, n};
  std::vector<PatternClass> hits;
  for (std::size_t p = 0; p < 4; ++p) {
    if (automata::accepts(session.pattern(kPatternNames[p]), values)) hits.push_back(kClasses[p]);
  }
  if (hits.size() != 1) {
    fail(ErrorCode::Disagreement, std::to_string(hits.size()) + " pattern automata accept (i, n) = (" +
                                      std::to_string(i) + ", " + std::to_string(n) + ")");
  }
  return hits.front();
}

ClassifyResult classify(Session& session, std::size_t i, std::size_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "factor length must be at least 1");
  ClassifyResult r;
  r.i = i;
  r.n = n;
  const auto occ = tm::scan_occurrences(session.prefix(), {i, n});
  r.oracle = tm::classify_pattern(occ, session.config().min_occurrences);
  r.occurrence_count = occ.entries.size();
  r.first_occurrences.assign(occ.entries.begin(),
                             occ.entries.begin() + std::min<std::size_t>(occ.entries.size(), 12));
  if (n >= 2) r.automaton = automaton_class(session, i, n);
  return r;
}

std::string format_classify(const ClassifyResult& r) {
  std::ostringstream out;
  out << "factor     t[" << r.i << ".." << r.i + r.n - 1 << "]\n";
  out << "oracle     " << tm::pattern_name(r.oracle) << " (" << r.occurrence_count << " occurrences)\n";
  out << "automaton  " << (r.automaton ? tm::pattern_name(*r.automaton) : "unsupported for n < 2") << '\n';
  out << "first     ";
  for (const auto& o : r.first_occurrences) out << ' ' << o.position << (o.label == tm::Label::A ? 'A' : 'B');
  out << '\n';
  if (r.oracle == PatternClass::Insufficient) out << "error: too few occurrences in the window\n";
  else if (!r.ok()) out << "error: oracle and automaton disagree\n";
  return out.str();
}

KeyValues classify_key_values(const ClassifyResult& r) {
  KeyValues kv;
  kv["i"] = std::to_string(r.i);
  kv["n"] = std::to_string(r.n);
  kv["oracle"] = tm::pattern_name(r.oracle);
  kv["automaton"] = r.automaton ? tm::pattern_name(*r.automaton) : "unsupported";
  kv["occurrences"] = std::to_string(r.occurrence_count);
  std::vector<std::string> first;
  for (const auto& o : r.first_occurrences) {
    first.push_back(std::to_string(o.position) + (o.label == tm::Label::A ? "A" : "B"));
  }
  kv["first"] = join(first, ",");
  kv["status"] = r.ok() ? "ok" : r.oracle == PatternClass::Insufficient ? "insufficient" : "disagreement";
  return kv;
}

// count

std::vector<CountRow> count_table(Session& session, std::size_t n_max) {
  if (n_max < 2) fail(ErrorCode::InvalidArgument, "count needs n_max >= 2");
  if (n_max > kMaxCountRows) {
    fail(ErrorCode::ResourceExhausted, "count is capped at n_max = " + std::to_string(kMaxCountRows));
  }
  if (n_max > session.config().window) {
    fail(ErrorCode::ResourceExhausted, "n_max exceeds the scan window");
  }
  const auto& report = session.counting_report();
  const auto& mab = report.find("mab")->representation.value();
  const auto& mabba = report.find("mabba")->representation.value();
  const auto& census = session.census();
  std::vector<CountRow> rows;
  for (std::size_t n = 1; n <= n_max; ++n) {
    CountRow row;
    row.n = n;
    const auto counts = tm::count_factor_classes(census, n);
    row.f_brute = static_cast<std::int64_t>(counts.ab);
    row.g_brute = static_cast<std::int64_t>(counts.abba);
    row.f_rep = to_integer(linrep::evaluate_stabilized(mab, n - 1), n);
    row.g_rep = to_integer(linrep::evaluate_stabilized(mabba, n - 1), n);
    if (n >= 2) row.f_rec = 2 * tm::a006165(n - 1);
    row.g_rec = tm::a060973(n - 1);
    if (n >= 2) row.f_closed = tm::f_closed(n);
    if (n >= 3) row.g_closed = tm::g_closed(n);
    auto disagree = [](std::initializer_list<std::optional<std::int64_t>> xs) {
      std::optional<std::int64_t> seen;
      for (const auto& x : xs) {
        if (!x) continue;
        if (seen && *seen != *x) return true;
        seen = x;
      }
      return false;
    };
    row.flagged = counts.insufficient > 0 || disagree({row.f_brute, row.f_rep, row.f_rec, row.f_closed}) ||
                  disagree({row.g_brute, row.g_rep, row.g_rec, row.g_closed});
    rows.push_back(row);
  }
  return rows;
}

std::string format_count(const std::vector<CountRow>& rows) {
  std::ostringstream out;
  auto cell = [&](const std::optional<std::int64_t>& x) {
    out << std::setw(8) << (x ? std::to_string(*x) : "-");
  };
  out << std::setw(5) << "n" << std::setw(8) << "f" << std::setw(8) << "f.rep" << std::setw(8) << "f.rec"
      << std::setw(8) << "f.cf" << std::setw(8) << "g" << std::setw(8) << "g.rep" << std::setw(8) << "g.rec"
      << std::setw(8) << "g.cf" << '\n';
  for (const auto& r : rows) {
    out << std::setw(5) << r.n;
    for (const auto* x : {&r.f_brute, &r.f_rep, &r.f_rec, &r.f_closed, &r.g_brute, &r.g_rep, &r.g_rec, &r.g_closed}) {
      cell(*x);
    }
    if (r.flagged) out << "  FLAGGED";
    out << '\n';
  }
  return out.str();
}

KeyValues count_key_values(const std::vector<CountRow>& rows) {
  KeyValues kv;
  std::size_t flagged = 0;
  for (const auto& r : rows) {
    const std::string k = "row." + padded(r.n, 4) + ".";
    auto put = [&](const char* name, const std::optional<std::int64_t>& x) {
      if (x) kv[k + name] = std::to_string(*x);
    };
    put("f.brute", r.f_brute);
    put("f.rep", r.f_rep);
    put("f.rec", r.f_rec);
    put("f.closed", r.f_closed);
    put("g.brute", r.g_brute);
    put("g.rep", r.g_rep);
    put("g.rec", r.g_rec);
    put("g.closed", r.g_closed);
    kv[k + "flagged"] = r.flagged ? "true" : "false";
    flagged += r.flagged;
  }
  kv["flagged_rows"] = std::to_string(flagged);
  kv["rows"] = std::to_string(rows.size());
  return kv;
}

// export

std::string export_pattern(Session& session, std::string_view pattern, automata::DigitOrder order) {
  return automata::export_dot(session.pattern(pattern), order, session.compile_options().limits);
}

}  // namespace tmlogic::driver
