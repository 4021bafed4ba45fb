#include <charconv>
#include <sstream>

#include "automata/automaton.hpp"
#include "core/error.hpp"

namespace tmlogic::automata {

namespace {

std::string digits_of(Letter l, std::size_t arity) {
  if (arity == 0) return "-";
  std::string s(arity, '0');
  for (std::size_t t = 0; t < arity; ++t) s[t] = ((l >> t) & 1) ? '1' : '0';
  return s;
}

std::string tuple_label(Letter l, std::size_t arity) {
  std::string s = "[";
  for (std::size_t t = 0; t < arity; ++t) {
    if (t) s += ',';
    s += ((l >> t) & 1) ? '1' : '0';
  }
  return s + "]";
}

}  // namespace

std::string export_dot(const Automaton& a, DigitOrder order, const Limits& limits) {
  const Automaton m = order == DigitOrder::Msd ? reverse(a, limits) : minimize(a);
  std::ostringstream out;
  out << "digraph automaton {\n";
  out << "  rankdir=LR;\n";
  out << "  label=\"tracks: (";
  for (std::size_t t = 0; t < m.arity(); ++t) out << (t ? "," : "") << m.tracks()[t];
  out << ") " << digit_order_name(order) << " first\";\n";
  out << "  node [shape=circle];\n";
  out << "  init [shape=point];\n";
  for (State q = 0; q < m.state_count(); ++q) {
    out << "  " << q << (m.accepting(q) ? " [shape=doublecircle];\n" : ";\n");
  }
  out << "  init -> " << m.initial() << ";\n";
  for (State q = 0; q < m.state_count(); ++q) {
    for (Letter l = 0; l < m.alphabet_size(); ++l) {
      out << "  " << q << " -> " << m.next(q, l) << " [label=\"" << tuple_label(l, m.arity())
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_text(const Automaton& a) {
  std::ostringstream out;
  out << "tracks";
  for (const auto& t : a.tracks()) out << ' ' << t;
  out << "\nstates " << a.state_count() << "\ninitial " << a.initial() << "\naccepting";
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.accepting(q)) out << ' ' << q;
  }
  out << '\n';
  for (State q = 0; q < a.state_count(); ++q) {
    for (Letter l = 0; l < a.alphabet_size(); ++l) {
      out << q << ' ' << digits_of(l, a.arity()) << ' ' << a.next(q, l) << '\n';
    }
  }
  return out.str();
}

Automaton from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line, word;
  auto expect_line = [&](const char* key) -> std::istringstream {
    if (!std::getline(in, line)) fail(ErrorCode::Parse, std::string("missing '") + key + "' line");
    std::istringstream ls(line);
    ls >> word;
    if (word != key) fail(ErrorCode::Parse, std::string("expected '") + key + "', got '" + word + "'");
    return ls;
  };
  std::vector<std::string> tracks;
  {
    auto ls = expect_line("tracks");
    while (ls >> word) tracks.push_back(word);
  }
  std::size_t states = 0;
  State initial = 0;
  {
    auto ls = expect_line("states");
    if (!(ls >> states) || states == 0) fail(ErrorCode::Parse, "bad state count");
  }
  {
    auto ls = expect_line("initial");
    if (!(ls >> initial)) fail(ErrorCode::Parse, "bad initial state");
  }
  std::vector<std::uint8_t> acc(states, 0);
  {
    auto ls = expect_line("accepting");
    State q;
    while (ls >> q) {
      if (q >= states) fail(ErrorCode::Parse, "accepting state out of range");
      acc[q] = 1;
    }
  }
  const std::size_t k = std::size_t{1} << tracks.size();
  std::vector<State> delta(states * k, 0);
  std::vector<std::uint8_t> seen(states * k, 0);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    State src, dst;
    std::string digits;
    if (!(ls >> src >> digits >> dst)) fail(ErrorCode::Parse, "bad transition line '" + line + "'");
    if (src >= states || dst >= states) fail(ErrorCode::Parse, "transition state out of range");
    Letter l = 0;
    if (tracks.empty()) {
      if (digits != "-") fail(ErrorCode::Parse, "arity-0 letters are written '-'");
    } else {
      if (digits.size() != tracks.size()) fail(ErrorCode::Parse, "letter width mismatch");
      for (std::size_t t = 0; t < digits.size(); ++t) {
        if (digits[t] != '0' && digits[t] != '1') fail(ErrorCode::Parse, "letters are binary");
        l |= static_cast<Letter>(digits[t] - '0') << t;
      }
    }
    delta[src * k + l] = dst;
    seen[src * k + l] = 1;
  }
  for (auto s : seen) {
    if (!s) fail(ErrorCode::Parse, "transition table is incomplete");
  }
  return Automaton(std::move(tracks), initial, std::move(delta), std::move(acc));
}

}  // namespace tmlogic::automata
