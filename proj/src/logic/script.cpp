#include "logic/script.hpp"

#include <algorithm>
#include <chrono>

#include "core/error.hpp"

namespace tmlogic::logic {

const CommandRecord* ProofReport::find(std::string_view name) const {
  for (const auto& c : commands) {
    if (c.kind != Command::Kind::Def && c.name == name) return &c;
  }
  return nullptr;
}

std::size_t ProofReport::def_count() const {
  return static_cast<std::size_t>(std::count_if(
      commands.begin(), commands.end(), [](const auto& c) { return c.kind == Command::Kind::Def; }));
}

std::size_t ProofReport::eval_count() const { return commands.size() - def_count(); }

const Predicate* DefCache::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void DefCache::store(const std::string& key, const Predicate& p) { entries_.insert_or_assign(key, p); }

namespace {

std::string options_key(const CompileOptions& o) {
  return "cap=" + std::to_string(o.limits.state_cap) + (o.corrupt_tm_dfao ? " corrupt" : "") + "\n";
}

void run_eval(const Command& cmd, const PredicateEnv& env, const CompileOptions& options,
              CommandRecord& rec, ProofReport& report) {
  const auto free = free_variables(*cmd.formula);
  Compiler compiler(env, options);
  if (cmd.kind == Command::Kind::EvalCount) {
    if (!free.count(cmd.parameter)) {
      fail(ErrorCode::UnboundVariable, "parameter '" + cmd.parameter + "' is not free in the formula");
    }
    if (free.size() != 2) {
      fail(ErrorCode::InvalidArgument, "counting needs exactly one free variable besides '" +
                                           cmd.parameter + "'");
    }
    std::string counted;
    for (const auto& v : free) {
      if (v != cmd.parameter) counted = v;
    }
    auto a = automata::align_tracks(compiler.compile(*cmd.formula), {free.begin(), free.end()});
    rec.tracks = a.tracks();
    rec.states = a.state_count();
    rec.representation = linrep::extract_counting(a, counted, cmd.parameter);
    report.results.insert_or_assign(cmd.name, std::move(a));
    return;
  }
  auto a = automata::align_tracks(compiler.compile(*cmd.formula), {free.begin(), free.end()});
  rec.tracks = a.tracks();
  rec.states = a.state_count();
  if (free.empty()) rec.verdict = a.accepting(a.initial());
  report.results.insert_or_assign(cmd.name, std::move(a));
}

}  // namespace

ProofReport run_script(std::string_view source, const CompileOptions& options, DefCache* cache,
                       const ProgressFn& progress) {
  ProofReport report;
  const auto commands = parse_script(source);
  std::string chain = options_key(options);
  for (const auto& cmd : commands) {
    CommandRecord rec;
    rec.kind = cmd.kind;
    rec.name = cmd.name;
    rec.parameter = cmd.parameter;
    rec.text = cmd.source;
    rec.line = cmd.line;
    const auto start = std::chrono::steady_clock::now();
    try {
      if (cmd.kind == Command::Kind::Def) {
        if (report.env.find(cmd.name)) {
          fail(ErrorCode::Rebinding, "predicate '" + cmd.name + "' is already defined");
        }
        chain += cmd.name + "\x1f" + cmd.source + "\x1e";
        const Predicate* hit = cache ? cache->find(chain) : nullptr;
        Predicate p = hit ? *hit : compile_predicate(*cmd.formula, report.env, options, cmd.source);
        rec.cached = hit != nullptr;
        if (cache && !hit) cache->store(chain, p);
        rec.tracks = p.params;
        rec.states = p.automaton.state_count();
        report.env.bind(cmd.name, std::move(p));
      } else {
        run_eval(cmd, report.env, options, rec, report);
      }
    } catch (const Error& e) {
      throw Error(e.code(), "line " + std::to_string(cmd.line) + ", " + command_kind_name(cmd.kind) +
                                " '" + cmd.name + "': " + e.what());
    }
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (progress) progress(rec);
    report.commands.push_back(std::move(rec));
  }
  return report;
}

}  // namespace tmlogic::logic
