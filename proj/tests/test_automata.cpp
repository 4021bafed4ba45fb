#include <doctest.h>

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>

#include "automata/automaton.hpp"
#include "core/error.hpp"
#include "oracle.hpp"
#include "random_automaton.hpp"

using namespace tmlogic;
using namespace tmlogic::automata;
using testgen::random_automaton;

namespace {

bool acc(const Automaton& a, std::vector<std::uint64_t> values) { return accepts(a, values); }

Nfa as_nfa(const Automaton& a) {
  Nfa n;
  n.tracks = a.tracks();
  n.state_count = a.state_count();
  n.initial = {a.initial()};
  n.accepting.resize(a.state_count());
  n.delta.resize(a.state_count() * a.alphabet_size());
  for (State q = 0; q < a.state_count(); ++q) {
    n.accepting[q] = a.accepting(q);
    for (Letter l = 0; l < a.alphabet_size(); ++l) n.delta[q * a.alphabet_size() + l] = {a.next(q, l)};
  }
  return n;
}

// x <= y built directly: compare digits LSD first, remembering the last
// differing position.
Automaton direct_le() {
  return from_function({"x", "y"}, 3, 0, {1, 1, 0}, [](State q, std::span<const int> d) -> State {
    if (d[0] == d[1]) return q;
    return d[0] < d[1] ? 1 : 2;
  });
}

template <class F>
ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("base relations") {
  CHECK(acc(base_add("x", "y", "z"), {3, 5, 8}));
  CHECK(acc(base_add("x", "y", "z"), {5, 6, 11}));
  CHECK_FALSE(acc(base_add("x", "y", "z"), {5, 6, 12}));
  CHECK_FALSE(acc(base_lt("x", "y"), {2, 2}));
  CHECK(is_empty(product(base_eq("x", "y"), base_lt("x", "y"), BoolOp::And)));
  for (std::uint64_t x = 0; x < 40; ++x) {
    for (std::uint64_t y = 0; y < 40; ++y) {
      REQUIRE(acc(base_eq("x", "y"), {x, y}) == (x == y));
      REQUIRE(acc(base_lt("x", "y"), {x, y}) == (x < y));
      for (std::uint64_t z = 0; z < 80; z += 7) REQUIRE(acc(base_add("x", "y", "z"), {x, y, z}) == (x + y == z));
    }
    REQUIRE(acc(base_const("x", 13), {x}) == (x == 13));
  }
  for (const auto& a : {base_eq("x", "y"), base_lt("x", "y"), base_add("x", "y", "z"), base_const("x", 6)}) {
    CHECK(is_zero_closed(a));
    CHECK(minimize(a) == a);
  }
}

TEST_CASE("tm_dfao matches the sequence") {
  const auto dfao = tm_dfao();
  CHECK(dfao.machine.state_count() == 2);
  CHECK(dfao.evaluate(0, DigitOrder::Lsd) == 0);
  CHECK(dfao.evaluate(6, DigitOrder::Msd) == 0);
  const std::string t = oracle::thue_morse(1 << 16);
  for (std::uint64_t k = 0; k < t.size(); ++k) {
    REQUIRE(dfao.evaluate(k, DigitOrder::Lsd) == t[k] - '0');
    REQUIRE(dfao.evaluate(k, DigitOrder::Msd) == t[k] - '0');
  }
  const auto broken = tm_dfao(true);
  int wrong = 0;
  for (std::uint64_t k = 0; k < 64; ++k) wrong += broken.evaluate(k, DigitOrder::Lsd) != t[k] - '0';
  CHECK(wrong > 0);
}

TEST_CASE("sequence relations") {
  const auto dfao = tm_dfao();
  const std::string t = oracle::thue_morse(256);
  for (std::uint64_t x = 0; x < 256; ++x) {
    REQUIRE(acc(sequence_value(dfao, "x", 1), {x}) == (t[x] == '1'));
    for (std::uint64_t y = 0; y < 256; y += 3) {
      REQUIRE(acc(sequence_compare(dfao, "x", "y", true), {x, y}) == (t[x] == t[y]));
      REQUIRE(acc(sequence_compare(dfao, "x", "y", false), {x, y}) == (t[x] != t[y]));
    }
  }
}

TEST_CASE("product") {
  const auto lt = base_lt("x", "y");
  CHECK(equivalent(product(lt, lt, BoolOp::And), lt));
  CHECK(is_empty(product(lt, complement(lt), BoolOp::And)));
  const auto le = product(base_eq("x", "y"), lt, BoolOp::Or);
  CHECK(equivalent(le, direct_le()));
  CHECK(le == minimize(direct_le()));
  CHECK(error_of([&] { product(lt, base_lt("x", "z"), BoolOp::And); }) == ErrorCode::TrackMismatch);
}

TEST_CASE("complement") {
  const auto lt = base_lt("x", "y");
  CHECK(equivalent(complement(complement(lt)), lt));
  CHECK(is_universal(complement(Automaton::empty({"x"}))));
  const auto ge = complement(lt);
  CHECK(is_zero_closed(ge));
  for (std::uint64_t x = 0; x < 1024; ++x) {
    for (std::uint64_t y = 0; y < 1024; ++y) REQUIRE(acc(ge, {x, y}) == (x >= y));
  }
}

TEST_CASE("project") {
  CHECK(is_universal(project(base_eq("x", "y"), "x")));
  CHECK(project(base_eq("x", "y"), "x").tracks() == std::vector<std::string>{"y"});
  CHECK(is_universal(project(base_add("x", "y", "z"), "z")));
  const auto pos = project(base_lt("y", "x"), "y");
  for (std::uint64_t x = 0; x < 1024; ++x) REQUIRE(acc(pos, {x}) == (x >= 1));
  // a witness longer than the remaining value: x < y exists for every x
  CHECK(is_universal(project(base_lt("x", "y"), "y")));
  CHECK(error_of([] { project(base_eq("x", "y"), "z"); }) == ErrorCode::UnknownTrack);
}

TEST_CASE("determinize, minimize and align") {
  const auto adder = base_add("x", "y", "z");
  CHECK(live_state_count(minimize(adder)) == 2);
  const auto lt = base_lt("x", "y");
  CHECK(equivalent(determinize(as_nfa(lt)), lt));
  CHECK(equivalent(lt, minimize(determinize(as_nfa(lt)))));
  const auto wide = align_tracks(lt, {"w", "x", "y"});
  CHECK(wide.tracks() == std::vector<std::string>{"w", "x", "y"});
  CHECK(acc(wide, {99, 1, 2}));
  CHECK(equivalent(project(wide, "w"), lt));
  CHECK(error_of([&] { align_tracks(lt, {"x"}); }) == ErrorCode::TrackMismatch);
}

TEST_CASE("nondeterministic determinization") {
  // numbers with at least two 1 bits
  Nfa n;
  n.tracks = {"x"};
  n.state_count = 3;
  n.initial = {0};
  n.accepting = {0, 0, 1};
  n.delta = {{0}, {0, 1}, {1}, {1, 2}, {2}, {2}};
  const auto d = determinize(n);
  for (std::uint64_t x = 0; x < 512; ++x) REQUIRE(acc(d, {x}) == (std::popcount(x) >= 2));
}

TEST_CASE("substitute") {
  const auto lt = base_lt("x", "y");
  const auto swapped = substitute(lt, {"b", "a"});
  CHECK(swapped.tracks() == std::vector<std::string>{"a", "b"});
  CHECK(acc(swapped, {5, 3}));
  CHECK_FALSE(acc(swapped, {3, 5}));
  CHECK(is_empty(substitute(lt, {"u", "u"})));
  CHECK(is_universal(substitute(base_eq("x", "y"), {"u", "u"})));
}

TEST_CASE("reverse reads most significant digit first") {
  const auto lt = base_lt("x", "y");
  const auto r = reverse(lt);
  CHECK(equivalent(reverse(r), lt));
  for (std::uint64_t x = 0; x < 32; ++x) {
    for (std::uint64_t y = 0; y < 32; ++y) {
      std::vector<Letter> word;
      for (int b = 5; b >= 0; --b) word.push_back(static_cast<Letter>(((x >> b) & 1) | (((y >> b) & 1) << 1)));
      REQUIRE(accepts_word(r, word) == (x < y));
    }
  }
}

TEST_CASE("language predicates") {
  CHECK(is_universal(complement(Automaton::empty({"x", "y"}))));
  CHECK(is_empty(Automaton::empty({})));
  CHECK(is_universal(Automaton::universal({})));
  CHECK(error_of([] { acc(base_lt("x", "y"), {1}); }) == ErrorCode::ArityMismatch);
  CHECK(isomorphic(base_lt("x", "y"), minimize(base_lt("x", "y"))));
}

TEST_CASE("state cap") {
  Limits tiny{2};
  const auto lt = base_lt("x", "y");
  CHECK(error_of([&] { product(lt, complement(base_eq("x", "y")), BoolOp::And, tiny); }) ==
        ErrorCode::StateCapExceeded);
  CHECK_NOTHROW(product(lt, complement(base_eq("x", "y")), BoolOp::And, Limits{16}));
}

TEST_CASE("DOT export is well formed") {
  const auto a = base_lt("x", "y");
  for (auto order : {DigitOrder::Lsd, DigitOrder::Msd}) {
    const std::string dot = export_dot(a, order);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(std::count(dot.begin(), dot.end(), '{') == std::count(dot.begin(), dot.end(), '}'));
    CHECK(dot.find("init ->") != std::string::npos);
    std::istringstream in(dot);
    std::string line;
    const std::regex edge(R"(\s*\d+ -> \d+ \[label="\[[01],[01]\]"\];)");
    std::size_t edges = 0;
    while (std::getline(in, line)) {
      if (line.find(" -> ") != std::string::npos && line.find("init") == std::string::npos) {
        CHECK(std::regex_match(line, edge));
        ++edges;
      }
    }
    CHECK(edges > 0);
  }
  CHECK(export_dot(a, DigitOrder::Lsd) == export_dot(a, DigitOrder::Lsd));
}

TEST_CASE("text snapshots round trip") {
  std::mt19937_64 rng(7);
  for (int r = 0; r < 50; ++r) {
    const auto a = minimize(random_automaton(rng, {"i", "n"}, 1 + r % 7));
    const std::string text = to_text(a);
    CHECK(from_text(text) == a);
    CHECK(to_text(from_text(text)) == text);
  }
  const auto sentence = Automaton::universal({});
  CHECK(from_text(to_text(sentence)) == sentence);
  CHECK(error_of([] { from_text("tracks x\nstates 1\ninitial 0\naccepting\n"); }) == ErrorCode::Parse);
}

TEST_CASE("randomized algebra") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> size(1, 7);
  for (int r = 0; r < 200; ++r) {
    const auto a = random_automaton(rng, {"x", "y"}, size(rng));
    const auto b = random_automaton(rng, {"x", "y"}, size(rng));
    REQUIRE(is_zero_closed(a));
    REQUIRE(equivalent(complement(complement(a)), a));
    REQUIRE(equivalent(complement(product(a, b, BoolOp::Or)),
                       product(complement(a), complement(b), BoolOp::And)));
    REQUIRE(is_empty(product(a, complement(a), BoolOp::And)));
    const auto m = minimize(a);
    REQUIRE(minimize(m) == m);
    REQUIRE(equivalent(m, a));
    const auto p = project(a, "x");
    REQUIRE(is_zero_closed(p));
    for (std::uint64_t y = 0; y < 16; ++y) {
      bool witness = false;
      for (std::uint64_t x = 0; x < 2048 && !witness; ++x) witness = acc(a, {x, y});
      REQUIRE(acc(p, {y}) == witness);
    }
  }
}
