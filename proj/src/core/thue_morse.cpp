#include "core/thue_morse.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <numeric>

#include "core/error.hpp"

namespace tmlogic::tm {

int tm_bit(std::uint64_t k) noexcept { return std::popcount(k) & 1; }

std::string TmPrefix::to_string() const {
  std::string out(bits_.size(), '0');
  for (std::size_t k = 0; k < bits_.size(); ++k) out[k] = static_cast<char>('0' + bits_[k]);
  return out;
}

TmPrefix generate_prefix(std::size_t length, std::size_t max_length) {
  if (length > max_length) {
    fail(ErrorCode::ResourceExhausted,
         "prefix length " + std::to_string(length) + " exceeds maximum " +
             std::to_string(max_length));
  }
  TmPrefix prefix;
  prefix.bits_.resize(length);
  // t_{2k} = t_k, t_{2k+1} = 1 - t_k
  for (std::size_t k = 1; k < length; ++k) {
    prefix.bits_[k] = static_cast<std::uint8_t>(prefix.bits_[k >> 1] ^ (k & 1));
  }
  return prefix;
}

std::string OccurrenceList::label_word() const {
  std::string out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.label == Label::A ? 'A' : 'B');
  return out;
}

const char* pattern_name(PatternClass c) noexcept {
  switch (c) {
    case PatternClass::TmAsA: return "TM_AS_A";
    case PatternClass::TmAsB: return "TM_AS_B";
    case PatternClass::AB: return "AB";
    case PatternClass::BA: return "BA";
    case PatternClass::ABBA: return "ABBA";
    case PatternClass::BAAB: return "BAAB";
    case PatternClass::Insufficient: return "INSUFFICIENT";
  }
  return "?";
}

std::optional<PatternClass> parse_pattern_name(std::string_view name) noexcept {
  for (auto c : {PatternClass::TmAsA, PatternClass::TmAsB, PatternClass::AB, PatternClass::BA,
                 PatternClass::ABBA, PatternClass::BAAB, PatternClass::Insufficient}) {
    if (name == pattern_name(c)) return c;
  }
  return std::nullopt;
}

OccurrenceList scan_occurrences(const TmPrefix& prefix, FactorRef factor) {
  if (factor.len == 0) fail(ErrorCode::OutOfRange, "factor length must be at least 1");
  if (factor.start + factor.len > prefix.length()) {
    fail(ErrorCode::OutOfRange, "factor t[" + std::to_string(factor.start) + ".." +
                                    std::to_string(factor.start + factor.len - 1) +
                                    "] lies outside a prefix of length " +
                                    std::to_string(prefix.length()));
  }
  OccurrenceList out;
  out.factor = factor;
  out.window = prefix.length();
  const auto bits = prefix.bits();
  const std::size_t n = factor.len;
  for (std::size_t p = 0; p + n <= bits.size(); ++p) {
    bool same = true;
    bool flipped = true;
    for (std::size_t j = 0; j < n && (same || flipped); ++j) {
      const bool eq = bits[p + j] == bits[factor.start + j];
      same = same && eq;
      flipped = flipped && !eq;
    }
    if (same) out.entries.push_back({p, Label::A});
    else if (flipped) out.entries.push_back({p, Label::B});
  }
  return out;
}

namespace {

constexpr std::array<std::string_view, 4> kPeriodic = {"AB", "BA", "ABBA", "BAAB"};
constexpr std::array<PatternClass, 4> kPeriodicClass = {PatternClass::AB, PatternClass::BA,
                                                        PatternClass::ABBA, PatternClass::BAAB};
// alive_ bits: 0..3 periodic candidates, 4 TmAsA, 5 TmAsB
constexpr std::uint8_t kPeriodicMask = 0x0f;
constexpr std::uint8_t kTmMask = 0x30;

}  // namespace

PatternMatcher::PatternMatcher(bool single_symbol) noexcept
    : alive_(single_symbol ? kTmMask : kPeriodicMask) {}

void PatternMatcher::push(Label label) noexcept {
  const char c = label == Label::A ? 'A' : 'B';
  for (std::size_t k = 0; k < kPeriodic.size(); ++k) {
    const auto& pat = kPeriodic[k];
    if (pat[count_ % pat.size()] != c) alive_ &= static_cast<std::uint8_t>(~(1u << k));
  }
  const bool zero = tm_bit(count_) == 0;
  const bool as_a = (label == Label::A) == zero;
  alive_ &= static_cast<std::uint8_t>(as_a ? ~(1u << 5) : ~(1u << 4));
  ++count_;
}

PatternClass PatternMatcher::result(std::size_t min_occurrences) const {
  if (count_ < min_occurrences) return PatternClass::Insufficient;
  if (alive_ == 0) {
    fail(ErrorCode::Ambiguous, "observed intertwining word matches no admissible pattern");
  }
  if (std::popcount(alive_) > 1) {
    fail(ErrorCode::Ambiguous, "observed intertwining word is a prefix of several patterns");
  }
  if (alive_ & (1u << 4)) return PatternClass::TmAsA;
  if (alive_ & (1u << 5)) return PatternClass::TmAsB;
  return kPeriodicClass[static_cast<std::size_t>(std::countr_zero(alive_))];
}

PatternClass classify_pattern(const OccurrenceList& occ, std::size_t min_occurrences) {
  if (min_occurrences < 4) {
    fail(ErrorCode::InvalidArgument, "min_occurrences must be at least 4");
  }
  PatternMatcher m(occ.factor.len == 1);
  for (const auto& e : occ.entries) m.push(e.label);
  return m.result(min_occurrences);
}

namespace {

// Prefix doubling over cyclic shifts; text ends in a unique smallest symbol.
std::vector<std::uint32_t> build_suffix_array(const std::vector<std::uint8_t>& s,
                                              std::size_t alphabet) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> p(n), c(n), pn(n), cn(n);
  std::vector<std::uint32_t> cnt(std::max(alphabet, n), 0);
  for (auto ch : s) ++cnt[ch];
  for (std::size_t i = 1; i < alphabet; ++i) cnt[i] += cnt[i - 1];
  for (std::size_t i = n; i-- > 0;) p[--cnt[s[i]]] = static_cast<std::uint32_t>(i);
  std::size_t classes = 1;
  c[p[0]] = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (s[p[i]] != s[p[i - 1]]) ++classes;
    c[p[i]] = static_cast<std::uint32_t>(classes - 1);
  }
  for (std::size_t h = 1; h < n && classes < n; h <<= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      pn[i] = static_cast<std::uint32_t>((p[i] + n - h) % n);
    }
    std::fill(cnt.begin(), cnt.begin() + static_cast<std::ptrdiff_t>(classes), 0);
    for (std::size_t i = 0; i < n; ++i) ++cnt[c[pn[i]]];
    for (std::size_t i = 1; i < classes; ++i) cnt[i] += cnt[i - 1];
    for (std::size_t i = n; i-- > 0;) p[--cnt[c[pn[i]]]] = pn[i];
    cn[p[0]] = 0;
    classes = 1;
    for (std::size_t i = 1; i < n; ++i) {
      const auto cur0 = c[p[i]], prev0 = c[p[i - 1]];
      const auto cur1 = c[(p[i] + h) % n], prev1 = c[(p[i - 1] + h) % n];
      if (cur0 != prev0 || cur1 != prev1) ++classes;
      cn[p[i]] = static_cast<std::uint32_t>(classes - 1);
    }
    c.swap(cn);
  }
  return p;
}

std::vector<std::uint32_t> build_lcp(const std::vector<std::uint8_t>& s,
                                     const std::vector<std::uint32_t>& sa) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> rank(n), lcp(n, 0);
  for (std::size_t r = 0; r < n; ++r) rank[sa[r]] = static_cast<std::uint32_t>(r);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace

FactorCensus::FactorCensus(const TmPrefix& prefix, std::size_t min_occurrences)
    : window_(prefix.length()), min_occurrences_(min_occurrences) {
  if (min_occurrences < 4) fail(ErrorCode::InvalidArgument, "min_occurrences must be at least 4");
  if (window_ == 0) fail(ErrorCode::InvalidArgument, "census needs a nonempty window");
  if (2 * window_ + 2 > std::numeric_limits<std::uint32_t>::max()) {
    fail(ErrorCode::ResourceExhausted, "census window too large");
  }
  // symbols: 0 terminator, 1/2 digits, 3 separator
  std::vector<std::uint8_t> text;
  text.reserve(2 * window_ + 2);
  for (auto b : prefix.bits()) text.push_back(static_cast<std::uint8_t>(1 + b));
  text.push_back(3);
  for (auto b : prefix.bits()) text.push_back(static_cast<std::uint8_t>(2 - b));
  text.push_back(0);
  suffix_array_ = build_suffix_array(text, 4);
  lcp_ = build_lcp(text, suffix_array_);
}

FactorCensus::Grouping FactorCensus::group(std::size_t n) const {
  if (n == 0 || n > window_) {
    fail(ErrorCode::OutOfRange, "factor length " + std::to_string(n) + " outside census window");
  }
  Grouping g;
  g.group_of_original.assign(window_ - n + 1, 0);
  g.group_of_complement.assign(window_ - n + 1, 0);
  std::size_t current = 0;
  for (std::size_t r = 0; r < suffix_array_.size(); ++r) {
    if (r > 0 && lcp_[r] < n) ++current;
    const std::size_t s = suffix_array_[r];
    if (s < window_) {
      if (s + n <= window_) g.group_of_original[s] = static_cast<std::uint32_t>(current);
    } else if (s > window_ && s < 2 * window_ + 1) {
      const std::size_t q = s - window_ - 1;
      if (q + n <= window_) g.group_of_complement[q] = static_cast<std::uint32_t>(current);
    }
  }
  g.group_count = current + 1;
  return g;
}

std::vector<PatternMatcher> FactorCensus::match_groups(std::size_t n, const Grouping& g) const {
  std::vector<PatternMatcher> matchers(g.group_count, PatternMatcher(n == 1));
  for (std::size_t p = 0; p + n <= window_; ++p) {
    matchers[g.group_of_original[p]].push(Label::A);
    matchers[g.group_of_complement[p]].push(Label::B);
  }
  return matchers;
}

std::vector<FactorCensus::Factor> FactorCensus::factors(std::size_t n) const {
  const auto g = group(n);
  const auto matchers = match_groups(n, g);
  std::vector<bool> seen(g.group_count, false);
  std::vector<Factor> out;
  for (std::size_t p = 0; p + n <= window_; ++p) {
    const auto id = g.group_of_original[p];
    if (seen[id]) continue;
    seen[id] = true;
    out.push_back({p, matchers[id].count(), matchers[id].result(min_occurrences_)});
  }
  return out;
}

std::vector<PatternClass> FactorCensus::classify_starts(std::size_t n, std::size_t max_start) const {
  if (max_start + n > window_) {
    fail(ErrorCode::OutOfRange, "start " + std::to_string(max_start) + " with length " +
                                    std::to_string(n) + " exceeds the census window");
  }
  const auto g = group(n);
  const auto matchers = match_groups(n, g);
  std::vector<PatternClass> out(max_start + 1);
  for (std::size_t i = 0; i <= max_start; ++i) {
    out[i] = matchers[g.group_of_original[i]].result(min_occurrences_);
  }
  return out;
}

FactorCounts count_factor_classes(const FactorCensus& census, std::size_t n) {
  FactorCounts counts;
  for (const auto& f : census.factors(n)) {
    ++counts.distinct;
    switch (f.pattern) {
      case PatternClass::AB: ++counts.ab; break;
      case PatternClass::BA: ++counts.ba; break;
      case PatternClass::ABBA: ++counts.abba; break;
      case PatternClass::BAAB: ++counts.baab; break;
      case PatternClass::TmAsA: ++counts.tm_as_a; break;
      case PatternClass::TmAsB: ++counts.tm_as_b; break;
      case PatternClass::Insufficient: ++counts.insufficient; break;
    }
  }
  return counts;
}

namespace {

std::int64_t a006165_memo(std::uint64_t n, std::map<std::uint64_t, std::int64_t>& memo) {
  if (n <= 1) return 1;  // a(0) = 1 is forced by both recurrences
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  const std::uint64_t m = n / 2;
  std::int64_t v;
  if (n % 2 == 0) {
    v = 2 * a006165_memo(m, memo) - (m == 1 ? 1 : 0);
  } else {
    v = a006165_memo(m + 1, memo) + a006165_memo(m, memo);
  }
  memo.emplace(n, v);
  return v;
}

std::int64_t a060973_memo(std::uint64_t n, std::map<std::uint64_t, std::int64_t>& memo) {
  if (n <= 1) return 0;
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  const std::uint64_t m = n / 2;
  std::int64_t v;
  if (n % 2 == 0) {
    v = 2 * a060973_memo(m, memo) + (m == 1 ? 1 : 0);
  } else {
    v = a060973_memo(m + 1, memo) + a060973_memo(m, memo);
  }
  memo.emplace(n, v);
  return v;
}

constexpr std::uint64_t kClosedFormLimit = std::uint64_t{1} << 60;

// Evaluates every admissible k and insists on a single value.
template <typename Branches>
std::int64_t unique_branch_value(std::uint64_t n, const char* name, Branches branches) {
  std::optional<std::int64_t> value;
  for (int k = 1; k <= 61; ++k) {
    for (auto candidate : branches(n, k)) {
      if (!candidate) continue;
      if (value && *value != *candidate) {
        fail(ErrorCode::Internal, std::string(name) + ": conflicting branches at n = " +
                                      std::to_string(n));
      }
      value = candidate;
    }
  }
  if (!value) {
    fail(ErrorCode::Internal, std::string(name) + ": no k selects n = " + std::to_string(n));
  }
  return *value;
}

}  // namespace

std::int64_t a006165(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::InvalidArgument, "A006165 is defined for n >= 1");
  std::map<std::uint64_t, std::int64_t> memo;
  return a006165_memo(n, memo);
}

std::int64_t a060973(std::uint64_t n) {
  std::map<std::uint64_t, std::int64_t> memo;
  return a060973_memo(n, memo);
}

std::int64_t f_closed(std::uint64_t n) {
  if (n < 2 || n > kClosedFormLimit) fail(ErrorCode::InvalidArgument, "f_closed needs 2 <= n <= 2^60");
  return unique_branch_value(n, "f_closed", [](std::uint64_t m, int k) {
    const std::uint64_t p = std::uint64_t{1} << k;
    std::array<std::optional<std::int64_t>, 2> out;
    // 3*2^(k-2) < m <= 2^k + 1
    if (3 * p < 4 * m && m <= p + 1) out[0] = static_cast<std::int64_t>(p);
    // 2^k + 1 < m <= 3*2^(k-1)
    if (p + 1 < m && 2 * m <= 3 * p) out[1] = static_cast<std::int64_t>(2 * m - p - 2);
    return out;
  });
}

std::int64_t g_closed(std::uint64_t n) {
  if (n < 3 || n > kClosedFormLimit) fail(ErrorCode::InvalidArgument, "g_closed needs 3 <= n <= 2^60");
  return unique_branch_value(n, "g_closed", [](std::uint64_t m, int k) {
    const std::uint64_t p = std::uint64_t{1} << k;
    std::array<std::optional<std::int64_t>, 2> out;
    // 2^k + 1 < m <= 3*2^(k-1) + 1
    if (p + 1 < m && 2 * (m - 1) <= 3 * p) out[0] = static_cast<std::int64_t>(p / 2);
    // 3*2^(k-2) + 1 < m <= 2^k + 1
    if (3 * p < 4 * (m - 1) && m <= p + 1) out[1] = static_cast<std::int64_t>(m - p / 2 - 1);
    return out;
  });
}

}  // namespace tmlogic::tm
