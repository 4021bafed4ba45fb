// Command-line front end; talks to the engine only through the C API.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "tmlogic/tmlogic.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitError = 2;

struct Options {
  std::uint64_t window = 0;
  std::uint64_t min_occ = 0;
  std::uint64_t state_cap = 0;
  bool machine = false;
  bool corrupt_tm_dfao = false;
};

struct StringDeleter {
  void operator()(char* s) const { tml_string_free(s); }
};
using OwnedString = std::unique_ptr<char, StringDeleter>;

struct SessionDeleter {
  void operator()(tml_session* s) const { tml_session_destroy(s); }
};
using OwnedSession = std::unique_ptr<tml_session, SessionDeleter>;

int report_error(tml_status status) {
  std::cerr << "error (" << tml_status_name(status) << "): " << tml_last_error() << '\n';
  return kExitError;
}

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error (io): cannot read '" << path << "'\n";
    return false;
  }
  std::ostringstream s;
  s << in.rdbuf();
  out = s.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "error (io): cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

OwnedSession open_session(const Options& o, tml_status& status) {
  tml_config c;
  tml_config_default(&c);
  c.window = o.window;
  c.min_occurrences = o.min_occ;
  c.state_cap = o.state_cap;
  c.corrupt_tm_dfao = o.corrupt_tm_dfao;
  tml_session* s = nullptr;
  status = tml_session_create(&c, &s);
  return OwnedSession(s);
}

// "builtin:NAME" reads a script shipped inside the library.
bool load_text(const std::string& source, std::string& out) {
  static const std::string prefix = "builtin:";
  if (source.rfind(prefix, 0) == 0) {
    char* text = nullptr;
    const tml_status st = tml_embedded_file(source.substr(prefix.size()).c_str(), &text);
    if (st != TML_OK) {
      report_error(st);
      return false;
    }
    out = OwnedString(text).get();
    return true;
  }
  return read_file(source, out);
}

std::string default_expectations(const std::string& script) {
  const auto dot = script.rfind(".wal");
  return dot == std::string::npos ? script + ".expect" : script.substr(0, dot) + ".expect";
}

}  // namespace

int main(int argc, char** argv) {
  tml_config defaults;
  tml_config_default(&defaults);
  Options o;
  o.window = defaults.window;
  o.min_occ = defaults.min_occurrences;
  o.state_cap = defaults.state_cap;

  CLI::App app{"Decision engine for first-order statements about the Thue-Morse word"};
  app.require_subcommand(1);
  app.add_option("--window", o.window, "Prefix length scanned by the brute-force oracle")->capture_default_str();
  app.add_option("--min-occ", o.min_occ, "Occurrences needed before a class is reported")->capture_default_str();
  app.add_option("--state-cap", o.state_cap, "Largest intermediate automaton")->capture_default_str();
  app.add_flag("--machine", o.machine, "Print sorted key=value lines instead of the human report");
  app.add_flag("--corrupt-tm-dfao", o.corrupt_tm_dfao, "Fault injection: compile T with a broken machine")
      ->group("");

  std::string script, expected, report_path;
  auto* prove = app.add_subcommand("prove", "Replay a script and compare eval verdicts with expectations");
  prove->add_option("script", script, "Script file, or builtin:NAME")->required();
  prove->add_option("expected", expected, "Expectation file (default: script name with .expect)");
  prove->add_option("--report", report_path, "Also write the key=value report here");

  std::uint64_t ci = 0, cn = 0;
  auto* classify = app.add_subcommand("classify", "Intertwining class of t[i..i+n-1] by oracle and automata");
  classify->add_option("i", ci, "Start position")->required();
  classify->add_option("n", cn, "Factor length")->required()->check(CLI::PositiveNumber);

  std::uint64_t n_max = 15;
  auto* count = app.add_subcommand("count", "Tabulate f(n) and g(n) by four independent routes");
  count->add_option("--n-max", n_max, "Last row")->capture_default_str();

  std::string pattern, order_name, format = "dot", output;
  auto* exp = app.add_subcommand("export", "Export a pattern automaton over (i, n)");
  exp->add_option("pattern", pattern, "abpat, bapat, abbapat or baabpat")
      ->required()
      ->check(CLI::IsMember({"abpat", "bapat", "abbapat", "baabpat"}));
  exp->add_option("--format", format, "dot or text")->check(CLI::IsMember({"dot", "text"}))->capture_default_str();
  exp->add_option("--digit-order", order_name, "msd or lsd (default: msd for dot, lsd for text)")
      ->check(CLI::IsMember({"msd", "lsd"}));
  exp->add_option("-o,--output", output, "Write to a file instead of standard output");

  auto* selftest = app.add_subcommand("selftest", "Oracle-versus-automata and identity checks at desk scale");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  tml_status st = TML_OK;
  OwnedSession session = open_session(o, st);
  if (st != TML_OK) return report_error(st);
  const tml_output fmt = o.machine ? TML_MACHINE : TML_HUMAN;

  if (*prove) {
    std::string script_text, expected_text;
    if (!load_text(script, script_text)) return kExitError;
    if (!load_text(expected.empty() ? default_expectations(script) : expected, expected_text)) return kExitError;
    int ok = 0;
    char* text = nullptr;
    st = tml_prove(session.get(), script_text.c_str(), expected_text.c_str(), fmt, &ok, &text);
    if (st != TML_OK) return report_error(st);
    std::cout << OwnedString(text).get();
    if (!report_path.empty()) {
      char* kv = nullptr;
      st = tml_prove(session.get(), script_text.c_str(), expected_text.c_str(), TML_MACHINE, &ok, &kv);
      if (st != TML_OK) return report_error(st);
      if (!write_file(report_path, OwnedString(kv).get())) return kExitError;
    }
    return ok ? kExitOk : kExitFailed;
  }

  if (*classify) {
    int ok = 0;
    char* text = nullptr;
    st = tml_classify(session.get(), ci, cn, fmt, &ok, &text);
    if (st != TML_OK) return report_error(st);
    std::cout << OwnedString(text).get();
    return ok ? kExitOk : kExitFailed;
  }

  if (*count) {
    int ok = 0;
    char* text = nullptr;
    st = tml_count(session.get(), n_max, fmt, &ok, &text);
    if (st != TML_OK) return report_error(st);
    std::cout << OwnedString(text).get();
    return ok ? kExitOk : kExitFailed;
  }

  if (*exp) {
    if (order_name.empty()) order_name = format == "dot" ? "msd" : "lsd";
    const tml_digit_order order = order_name == "msd" ? TML_MSD : TML_LSD;
    tml_automaton* a = nullptr;
    st = tml_pattern_automaton(session.get(), pattern.c_str(), &a);
    if (st != TML_OK) return report_error(st);
    char* text = nullptr;
    st = format == "dot" ? tml_automaton_dot(a, order, &text) : tml_automaton_text(a, order, &text);
    tml_automaton_destroy(a);
    if (st != TML_OK) return report_error(st);
    OwnedString owned(text);
    if (output.empty()) {
      std::cout << owned.get();
    } else if (!write_file(output, owned.get())) {
      return kExitError;
    }
    return kExitOk;
  }

  if (*selftest) {
    int ok = 0;
    char* text = nullptr;
    st = tml_selftest(session.get(), &ok, &text);
    if (st != TML_OK) return report_error(st);
    std::cout << OwnedString(text).get();
    return ok ? kExitOk : kExitFailed;
  }
  return kExitError;
}
