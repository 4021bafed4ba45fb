#pragma once

// Ground truth for the Thue-Morse word: explicit prefixes, factor scanning,
// brute-force intertwining classification and the counting sequences.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tmlogic::tm {

inline constexpr std::size_t kDefaultWindow = std::size_t{1} << 17;
inline constexpr std::size_t kDefaultMinOccurrences = 8;
inline constexpr std::size_t kMaxPrefixLength = std::size_t{1} << 28;

/// t_k, the parity of the number of 1 bits of k.
int tm_bit(std::uint64_t k) noexcept;

class TmPrefix {
 public:
  TmPrefix() = default;

  std::size_t length() const noexcept { return bits_.size(); }
  int operator[](std::size_t k) const noexcept { return bits_[k]; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::string to_string() const;

 private:
  friend TmPrefix generate_prefix(std::size_t length, std::size_t max_length);
  std::vector<std::uint8_t> bits_;
};

/// Throws ResourceExhausted when `length` exceeds `max_length`.
TmPrefix generate_prefix(std::size_t length, std::size_t max_length = kMaxPrefixLength);

struct FactorRef {
  std::size_t start = 0;
  std::size_t len = 0;
};

enum class Label : std::uint8_t { A, B };

struct Occurrence {
  std::size_t position;
  Label label;
  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

struct OccurrenceList {
  std::vector<Occurrence> entries;
  FactorRef factor;
  std::size_t window = 0;

  std::string label_word() const;
};

enum class PatternClass : std::uint8_t {
  TmAsA,
  TmAsB,
  AB,
  BA,
  ABBA,
  BAAB,
  Insufficient,
};

const char* pattern_name(PatternClass c) noexcept;
std::optional<PatternClass> parse_pattern_name(std::string_view name) noexcept;

/// Every occurrence of the factor (label A) or of its complement (label B)
/// inside the prefix, overlaps included, sorted by position.
OccurrenceList scan_occurrences(const TmPrefix& prefix, FactorRef factor);

/// Returns Insufficient below `min_occurrences` entries. A label word that
/// matches no candidate pattern is a hard failure (ErrorCode::Ambiguous).
PatternClass classify_pattern(const OccurrenceList& occ,
                              std::size_t min_occurrences = kDefaultMinOccurrences);

/// Incremental matcher over a label word; used by both classify_pattern and
/// FactorCensus so the two agree on the matching rule.
class PatternMatcher {
 public:
  explicit PatternMatcher(bool single_symbol) noexcept;
  void push(Label label) noexcept;
  std::size_t count() const noexcept { return count_; }
  PatternClass result(std::size_t min_occurrences) const;

 private:
  std::uint8_t alive_;
  std::size_t count_ = 0;
};

/// All distinct length-n factors of a prefix window, each with its
/// intertwining class over that window. Groups factor positions by sorting
/// the suffixes of prefix·#·complement(prefix).
class FactorCensus {
 public:
  FactorCensus(const TmPrefix& prefix, std::size_t min_occurrences);

  struct Factor {
    std::size_t first_position;
    std::size_t occurrences;  // A plus B entries
    PatternClass pattern;
  };

  /// Distinct length-n factors (one entry per factor, ordered by first
  /// occurrence). Factors are those starting at positions <= window - n.
  std::vector<Factor> factors(std::size_t n) const;

  /// Class of t[i..i+n-1] for every i in [0, max_start].
  std::vector<PatternClass> classify_starts(std::size_t n, std::size_t max_start) const;

  std::size_t window() const noexcept { return window_; }

 private:
  struct Grouping {
    std::vector<std::uint32_t> group_of_original;    // by position
    std::vector<std::uint32_t> group_of_complement;  // by position
    std::size_t group_count = 0;
  };
  Grouping group(std::size_t n) const;
  std::vector<PatternMatcher> match_groups(std::size_t n, const Grouping& g) const;

  std::size_t window_;
  std::size_t min_occurrences_;
  std::vector<std::uint32_t> suffix_array_;
  std::vector<std::uint32_t> lcp_;  // lcp_[r] = lcp(sa[r-1], sa[r])
};

/// Counts of distinct length-n factors whose class is AB (f) or ABBA (g).
struct FactorCounts {
  std::size_t ab = 0;
  std::size_t ba = 0;
  std::size_t abba = 0;
  std::size_t baab = 0;
  std::size_t tm_as_a = 0;
  std::size_t tm_as_b = 0;
  std::size_t insufficient = 0;
  std::size_t distinct = 0;
};
FactorCounts count_factor_classes(const FactorCensus& census, std::size_t n);

/// OEIS A006165 for n >= 1 (n = 0 is rejected).
std::int64_t a006165(std::uint64_t n);
/// OEIS A060973, a(0) = a(1) = 0.
std::int64_t a060973(std::uint64_t n);

/// Closed forms for the number of length-n factors with pattern AB (n >= 2)
/// and ABBA (n >= 3).
std::int64_t f_closed(std::uint64_t n);
std::int64_t g_closed(std::uint64_t n);

}  // namespace tmlogic::tm
