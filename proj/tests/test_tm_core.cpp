#include <doctest.h>

#include "core/error.hpp"
#include "core/thue_morse.hpp"
#include "oracle.hpp"

using namespace tmlogic;
using namespace tmlogic::tm;

namespace {

std::string labels_of(const OccurrenceList& occ) {
  std::string w;
  for (const auto& e : occ.entries) w += e.label == Label::A ? 'A' : 'B';
  return w;
}

const std::string& big_word() {
  static const std::string t = oracle::thue_morse(kDefaultWindow);
  return t;
}

const FactorCensus& big_census() {
  static const TmPrefix prefix = generate_prefix(kDefaultWindow);
  static const FactorCensus census(prefix, kDefaultMinOccurrences);
  return census;
}

}  // namespace

TEST_CASE("tm_bit on small and large indices") {
  CHECK(tm_bit(0) == 0);
  CHECK(tm_bit(3) == 0);
  CHECK(tm_bit(std::uint64_t{1} << 40) == 1);
  const std::string t = oracle::thue_morse(1 << 12);
  for (std::size_t k = 0; k < t.size(); ++k) REQUIRE(tm_bit(k) == t[k] - '0');
}

TEST_CASE("tm_bit satisfies the 2-automatic recursion") {
  for (std::uint64_t k = 0; k < (1u << 20); ++k) {
    REQUIRE(tm_bit(k) == (tm_bit(k / 2) ^ static_cast<int>(k % 2)));
  }
}

TEST_CASE("generate_prefix") {
  CHECK(generate_prefix(8).to_string() == "01101001");
  CHECK(generate_prefix(0).length() == 0);
  CHECK(generate_prefix(0).to_string().empty());
  CHECK(generate_prefix(16).to_string() == oracle::thue_morse(16));
  CHECK(generate_prefix(16).to_string() == "0110100110010110");
  CHECK(generate_prefix(1000).to_string() == oracle::thue_morse(1000));
  try {
    generate_prefix(100, 99);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ResourceExhausted);
  }
}

TEST_CASE("scan_occurrences of 00 alternates with 11") {
  const auto prefix = generate_prefix(16);
  const auto occ = scan_occurrences(prefix, {5, 2});
  CHECK(occ.window == 16);
  REQUIRE(occ.entries.size() >= 4);
  CHECK(occ.entries[0] == Occurrence{1, Label::B});
  CHECK(occ.entries[1] == Occurrence{5, Label::A});
  // the oracle agrees on every position
  const std::string t = oracle::thue_morse(16);
  std::vector<Occurrence> expected;
  for (std::size_t p = 0; p + 2 <= 16; ++p) {
    if (t.compare(p, 2, "00") == 0) expected.push_back({p, Label::A});
    if (t.compare(p, 2, "11") == 0) expected.push_back({p, Label::B});
  }
  CHECK(occ.entries == expected);
  const std::string w = labels_of(occ);
  for (std::size_t k = 0; k < w.size(); ++k) CHECK(w[k] == (k % 2 == 0 ? 'B' : 'A'));
}

TEST_CASE("scan_occurrences edge cases") {
  const auto one = scan_occurrences(generate_prefix(1), {0, 1});
  REQUIRE(one.entries.size() == 1);
  CHECK(one.entries[0] == Occurrence{0, Label::A});

  const auto occ = scan_occurrences(generate_prefix(64), {0, 5});
  CHECK(labels_of(occ) == oracle::label_word(oracle::thue_morse(64), "01101"));

  for (FactorRef bad : {FactorRef{0, 0}, FactorRef{60, 5}, FactorRef{100, 1}}) {
    try {
      scan_occurrences(generate_prefix(64), bad);
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OutOfRange);
    }
  }
}

TEST_CASE("classify_pattern on the named examples") {
  const auto prefix = generate_prefix(kDefaultWindow);
  CHECK(classify_pattern(scan_occurrences(prefix, {1, 2})) == PatternClass::AB);
  CHECK(classify_pattern(scan_occurrences(prefix, {3, 3})) == PatternClass::BAAB);
  CHECK(classify_pattern(scan_occurrences(prefix, {0, 1})) == PatternClass::TmAsA);
  CHECK(classify_pattern(scan_occurrences(prefix, {1, 1})) == PatternClass::TmAsB);
  CHECK(classify_pattern(scan_occurrences(prefix, {2, 3})) == PatternClass::ABBA);
  CHECK(classify_pattern(scan_occurrences(prefix, {5, 2})) == PatternClass::BA);
  CHECK(classify_pattern(scan_occurrences(generate_prefix(16), {0, 8}), 8) == PatternClass::Insufficient);
  CHECK_THROWS_AS(classify_pattern(scan_occurrences(prefix, {1, 2}), 3), Error);
}

TEST_CASE("classify_pattern rejects label words outside the six patterns") {
  OccurrenceList fake;
  fake.factor = {0, 3};
  for (std::size_t p = 0; p < 8; ++p) fake.entries.push_back({p, p < 2 ? Label::A : Label::B});
  try {
    classify_pattern(fake, 4);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Ambiguous);
  }
}

TEST_CASE("pattern names round trip") {
  for (auto c : {PatternClass::TmAsA, PatternClass::TmAsB, PatternClass::AB, PatternClass::BA,
                 PatternClass::ABBA, PatternClass::BAAB, PatternClass::Insufficient}) {
    CHECK(parse_pattern_name(pattern_name(c)) == c);
  }
  CHECK_FALSE(parse_pattern_name("ABAB").has_value());
}

TEST_CASE("every factor start classifies into one of the six classes") {
  const auto& census = big_census();
  const auto& t = big_word();
  for (std::size_t n = 1; n <= 20; ++n) {
    const auto by_factor = oracle::classify_all(t, n, kDefaultMinOccurrences);
    const auto classes = census.classify_starts(n, 4096);
    for (std::size_t i = 0; i <= 4096; ++i) {
      const auto c = classes[i];
      REQUIRE(c != PatternClass::Insufficient);
      if (n >= 2) REQUIRE((c != PatternClass::TmAsA && c != PatternClass::TmAsB));
      REQUIRE(pattern_name(c) == by_factor.at(t.substr(i, n)));
    }
  }
}

TEST_CASE("census agrees with the naive scan") {
  const auto& census = big_census();
  const auto prefix = generate_prefix(kDefaultWindow);
  for (std::size_t n : {1, 2, 3, 7, 16, 33}) {
    for (const auto& f : census.factors(n)) {
      const auto occ = scan_occurrences(prefix, {f.first_position, n});
      CHECK(occ.entries.size() == f.occurrences);
      CHECK(classify_pattern(occ) == f.pattern);
    }
  }
}

TEST_CASE("distinct factors are counted once, at their first occurrence") {
  const auto& census = big_census();
  const auto& t = big_word();
  for (std::size_t n = 1; n <= 12; ++n) {
    std::set<std::string> seen;
    std::vector<std::size_t> firsts;
    for (std::size_t p = 0; p + n <= t.size(); ++p) {
      if (seen.insert(t.substr(p, n)).second) firsts.push_back(p);
    }
    std::vector<std::size_t> got;
    for (const auto& f : census.factors(n)) got.push_back(f.first_position);
    CHECK(got == firsts);
  }
}

TEST_CASE("pattern counts, sequences and closed forms agree up to length 64") {
  const auto& census = big_census();
  const auto& t = big_word();
  for (std::size_t n = 2; n <= 64; ++n) {
    CAPTURE(n);
    const auto counts = count_factor_classes(census, n);
    const auto ref = oracle::count_classes(t, n, kDefaultMinOccurrences);
    REQUIRE(ref.unresolved == 0);
    CHECK(counts.insufficient == 0);
    CHECK(counts.ab == ref.f);
    CHECK(counts.abba == ref.g);
    CHECK(counts.ab == counts.ba);
    CHECK(counts.abba == counts.baab);
    CHECK(static_cast<std::int64_t>(counts.ab) == f_closed(n));
    CHECK(static_cast<std::int64_t>(counts.ab) == 2 * a006165(n - 1));
    CHECK(static_cast<std::int64_t>(counts.abba) == a060973(n - 1));
    if (n >= 3) CHECK(static_cast<std::int64_t>(counts.abba) == g_closed(n));
  }
}

TEST_CASE("A006165 and A060973") {
  CHECK(a006165(1) == 1);
  CHECK(a006165(2) == 1);
  CHECK(a006165(7) == 4);
  CHECK_THROWS_AS(a006165(0), Error);
  CHECK(a060973(2) == 1);
  CHECK(a060973(4) == 2);
  CHECK(a060973(0) == 0);
  for (std::uint64_t n = 1; n <= 5000; ++n) {
    REQUIRE(a006165(n) == oracle::a006165(n));
    REQUIRE(a060973(n) == oracle::a060973(n));
  }
}

TEST_CASE("closed forms") {
  CHECK(f_closed(7) == 8);
  CHECK(g_closed(9) == 4);
  CHECK(f_closed(12) == 14);
  const std::int64_t f_table[] = {2, 2, 4, 4, 6, 8, 8, 8, 10, 12, 14, 16, 16, 16};
  const std::int64_t g_table[] = {1, 1, 2, 2, 2, 3, 4, 4, 4, 4, 4, 5, 6};
  for (std::uint64_t n = 2; n <= 15; ++n) CHECK(f_closed(n) == f_table[n - 2]);
  for (std::uint64_t n = 3; n <= 15; ++n) CHECK(g_closed(n) == g_table[n - 3]);
  // interval endpoints, including n = 2^k + 1, far beyond brute force
  for (std::uint64_t n = 3; n <= 100000; ++n) {
    REQUIRE(f_closed(n) == 2 * oracle::a006165(n - 1));
    REQUIRE(g_closed(n) == oracle::a060973(n - 1));
  }
  CHECK_THROWS_AS(f_closed(1), Error);
  CHECK_THROWS_AS(g_closed(2), Error);
}
