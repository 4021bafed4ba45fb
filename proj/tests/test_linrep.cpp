#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "automata/automaton.hpp"
#include "core/error.hpp"
#include "linrep/linrep.hpp"
#include "logic/script.hpp"
#include "oracle.hpp"

using namespace tmlogic;
using namespace tmlogic::linrep;
using tmlogic::automata::DigitOrder;

namespace {

std::string read_source(const std::string& rel) {
  std::ifstream in(std::string(TMLOGIC_SOURCE_DIR) + "/" + rel);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const logic::ProofReport& counting() {
  static const logic::ProofReport r = logic::run_script(read_source("scripts/paper_count.wal"));
  return r;
}

const LinearRepresentation& mab() { return *counting().find("mab")->representation; }
const LinearRepresentation& mabba() { return *counting().find("mabba")->representation; }

LinearRepresentation random_rep(std::mt19937& rng, std::size_t dim) {
  std::uniform_int_distribution<int> entry(-2, 2);
  LinearRepresentation r;
  r.dim = dim;
  r.order = rng() % 2 ? DigitOrder::Msd : DigitOrder::Lsd;
  r.v.resize(dim);
  r.w.resize(dim);
  r.gamma = {Matrix(dim), Matrix(dim)};
  for (std::size_t p = 0; p < dim; ++p) {
    r.v[p] = entry(rng);
    r.w[p] = entry(rng);
    for (std::size_t q = 0; q < dim; ++q) {
      r.gamma[0](p, q) = entry(rng);
      r.gamma[1](p, q) = entry(rng);
    }
  }
  return r;
}

// Value of a word of digits in reading order, straight from the matrices.
Rational word_value(const LinearRepresentation& r, const std::vector<int>& digits) {
  Vector x = r.v;
  for (int d : digits) x = row_times(x, r.gamma[d]);
  return dot(x, r.w);
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::Internal;
}

}  // namespace

TEST_CASE("fixtures match the built-in representations") {
  CHECK(from_text(read_source("fixtures/linrep/a006165.txt")) == from_recurrence_a006165());
  CHECK(from_text(read_source("fixtures/linrep/a060973.txt")) == from_recurrence_a060973());
  CHECK(from_text(read_source("fixtures/linrep/f_shifted.txt")) == printed_f_shifted());
  CHECK(from_text(read_source("fixtures/linrep/g_shifted.txt")) == printed_g_shifted());
  const auto a = from_recurrence_a006165();
  CHECK(a.dim == 4);
  CHECK(a.order == DigitOrder::Msd);
  CHECK(a.v == Vector{1, 1, 1, 0});
  const auto g = from_recurrence_a060973();
  CHECK(g.gamma[0](0, 0) == 2);
}

TEST_CASE("text round trip and parse errors") {
  std::mt19937 rng(7);
  for (int round = 0; round < 20; ++round) {
    auto r = random_rep(rng, 1 + round % 5);
    r.w[0] = Rational(1, 3);
    CHECK(from_text(to_text(r)) == r);
  }
  CHECK(to_string(Rational(-4) / 6) == "-2/3");
  CHECK(from_text("1 lsd\n-4/6\n1\n1\n1\n").v[0] == Rational(-2) / 3);
  CHECK(code_of([] { from_text("2 msd\n1 0\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { from_text("1 sideways\n1\n1\n1\n1\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { from_text("1 msd\nx\n1\n1\n1\n"); }) == ErrorCode::Parse);
  CHECK(code_of([] { from_text("1 msd\n1\n1\n1\n1/0\n"); }) == ErrorCode::Parse);
}

TEST_CASE("validate rejects inconsistent sizes") {
  LinearRepresentation r;
  r.dim = 2;
  r.v = {1, 0};
  r.w = {1};
  r.gamma = {Matrix(2), Matrix(2)};
  CHECK(code_of([&] { r.validate(); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("built-in representations follow the recurrences") {
  const auto a = from_recurrence_a006165();
  const auto b = from_recurrence_a060973();
  const auto f = printed_f_shifted();
  const auto g = printed_g_shifted();
  for (std::uint64_t n = 0; n <= 512; ++n) {
    CAPTURE(n);
    REQUIRE(evaluate(a, n) == oracle::a006165(n));
    REQUIRE(evaluate(b, n) == oracle::a060973(n));
    REQUIRE(evaluate(f, n) == (n == 0 ? 0 : 2 * oracle::a006165(n)));
    REQUIRE(evaluate(g, n) == oracle::a060973(n));
  }
  CHECK(evaluate(a, 0) == dot(a.v, a.w));
  CHECK(evaluate_word(a, std::vector<int>{}) == dot(a.v, a.w));
}

TEST_CASE("digit order of evaluation") {
  const auto a = from_recurrence_a006165();
  // 6 = 110 in binary, fed most significant first
  CHECK(evaluate(a, 6) == word_value(a, {1, 1, 0}));
  CHECK(evaluate(reverse(a), 6) == word_value(reverse(a), {0, 1, 1}));
}

TEST_CASE("counting representations of the pattern automata") {
  CHECK(mab().order == DigitOrder::Lsd);
  CHECK(mab().dim == 6);
  CHECK(mabba().dim == 7);
  CHECK(stabilized(mab()));
  CHECK(stabilized(mabba()));
  CHECK(evaluate_stabilized(mab(), 6) == 8);
  CHECK(evaluate_stabilized(mabba(), 8) == 4);
  for (std::uint64_t n = 0; n <= 512; ++n) {
    CAPTURE(n);
    REQUIRE(evaluate(mab(), n) == (n == 0 ? 0 : 2 * oracle::a006165(n)));
    REQUIRE(evaluate(mabba(), n) == oracle::a060973(n));
    REQUIRE(evaluate_stabilized(mab(), n) == evaluate(mab(), n));
  }
}

TEST_CASE("counting representations agree with brute-force counts") {
  const std::string t = oracle::thue_morse(1 << 14);
  for (std::size_t n = 2; n <= 40; ++n) {
    CAPTURE(n);
    const auto c = oracle::count_classes(t, n, 8);
    REQUIRE(c.unresolved == 0);
    CHECK(evaluate(mab(), n - 1) == c.f);
    CHECK(evaluate(mabba(), n - 1) == c.g);
  }
}

TEST_CASE("extraction edge cases") {
  const auto none = extract_counting(automata::Automaton::empty({"c", "n"}), "c", "n");
  for (std::uint64_t n = 0; n < 32; ++n) CHECK(evaluate(none, n) == 0);
  CHECK(minimize_rep(none).dim == 0);

  const auto below = logic::run_script("eval below n \"x<n\":\n");
  const auto& r = *below.find("below")->representation;
  for (std::uint64_t n = 0; n < 100; ++n) CHECK(evaluate_stabilized(r, n) == n);

  CHECK(code_of([] { logic::run_script("eval above n \"n<x\":\n"); }) == ErrorCode::Noncountable);
  CHECK(code_of([] { extract_counting(automata::base_lt("x", "y"), "x", "z"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { extract_counting(automata::base_add("x", "y", "z"), "x", "y"); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("identities between extracted and printed representations") {
  const auto diff_f = minimize_rep(subtract(mab(), reverse(scale(from_recurrence_a006165(), 2))));
  CHECK(diff_f.dim == 1);
  CHECK(evaluate(diff_f, 0) == -2);
  for (std::uint64_t n = 1; n <= 512; ++n) REQUIRE(evaluate(diff_f, n) == 0);

  const auto diff_g = minimize_rep(subtract(mabba(), reverse(from_recurrence_a060973())));
  CHECK(diff_g.dim == 0);

  CHECK(equal_reps(mab(), printed_f_shifted()));
  CHECK(equal_reps(mabba(), printed_g_shifted()));
  CHECK(equal_by_enumeration(mab(), reverse(printed_f_shifted())));
  CHECK(equal_by_enumeration(mabba(), reverse(printed_g_shifted())));
  CHECK_FALSE(equal_reps(mab(), printed_g_shifted()));
  CHECK_FALSE(equal_by_enumeration(mab(), reverse(printed_g_shifted())));
}

TEST_CASE("subtract requires a shared digit order") {
  CHECK(code_of([] { subtract(mab(), printed_f_shifted()); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("random representations: algebra") {
  std::mt19937 rng(2024);
  for (int round = 0; round < 100; ++round) {
    CAPTURE(round);
    const auto r = random_rep(rng, 1 + round % 5);
    const auto m = minimize_rep(r);
    CHECK(m.dim <= r.dim);
    CHECK(m.order == r.order);
    CHECK(reverse(reverse(r)) == r);
    CHECK(minimize_rep(m).dim == m.dim);
    CHECK(minimize_rep(subtract(r, r)).dim == 0);
    CHECK(minimize_rep(scale(r, 0)).dim == 0);
    CHECK(equal_reps(r, m));
    CHECK(equal_reps(r, pad(r, 3)));
    CHECK(equal_reps(r, reverse(r)));
    CHECK(equal_reps(scale(r, 2), subtract(scale(r, 3), r)));
    // all words up to length 6, leading and trailing zeros included
    for (std::size_t len = 0; len <= 6; ++len) {
      for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
        std::vector<int> word;
        for (std::size_t k = 0; k < len; ++k) word.push_back((bits >> k) & 1);
        const auto value = word_value(r, word);
        REQUIRE(word_value(m, word) == value);
        REQUIRE(word_value(pad(r, 2), word) == value);
        REQUIRE(evaluate_word(r, word) == value);
        std::vector<int> back(word.rbegin(), word.rend());
        REQUIRE(word_value(reverse(r), back) == value);
      }
    }
    for (std::uint64_t n = 0; n < 64; ++n) REQUIRE(evaluate(m, n) == evaluate(r, n));
  }
}

TEST_CASE("random representations: equality decisions") {
  std::mt19937 rng(99);
  std::size_t equal_pairs = 0;
  for (int round = 0; round < 100; ++round) {
    CAPTURE(round);
    const auto a = random_rep(rng, 1 + round % 3);
    auto b = round % 2 ? reverse(minimize_rep(a)) : random_rep(rng, 1 + round % 4);
    const bool exact = equal_reps(a, b);
    const bool enumerated = equal_by_enumeration(a, b);
    // exact equality implies equality on every canonical digit string
    if (exact) CHECK(enumerated);
    equal_pairs += exact;
    if (round % 2) CHECK(exact);
  }
  CHECK(equal_pairs >= 50);
}

TEST_CASE("equal_by_enumeration refuses huge ranges") {
  const auto big = pad(mab(), 20);
  CHECK(code_of([&] { equal_by_enumeration(big, big); }) == ErrorCode::ResourceExhausted);
}

TEST_CASE("stabilized evaluation") {
  const auto a = mab();
  for (std::uint64_t n = 0; n < 64; ++n) CHECK(evaluate_stabilized(a, n) == evaluate(a, n));
  // gamma(0) = 2 doubles every nonzero value
  LinearRepresentation grow = make_representation(DigitOrder::Lsd, {1}, Matrix(1), Matrix(1), {1});
  grow.gamma[0](0, 0) = 2;
  grow.gamma[1](0, 0) = 1;
  CHECK_FALSE(stabilized(grow));
  CHECK(code_of([&] { evaluate_stabilized(grow, 1); }) == ErrorCode::Noncountable);
  CHECK(code_of([&] { evaluate_stabilized(printed_f_shifted(), 1); }) == ErrorCode::InvalidArgument);
}
