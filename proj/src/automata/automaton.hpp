#pragma once

// Synchronized multi-track automata over binary digits.
//
// A letter is a bit vector: bit t carries the digit of tracks()[t]. Words are
// read least-significant digit first, all tracks padded with trailing zero
// digits to a common length. Canonical automata are deterministic, complete,
// minimal, canonically numbered and zero-closed (acceptance is invariant under
// appending or removing a trailing all-zero letter).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace tmlogic::automata {

using State = std::uint32_t;
using Letter = std::uint32_t;

inline constexpr std::size_t kMaxArity = 16;
inline constexpr std::size_t kDefaultStateCap = std::size_t{1} << 20;

struct Limits {
  std::size_t state_cap = kDefaultStateCap;
};

enum class DigitOrder { Lsd, Msd };

const char* digit_order_name(DigitOrder order) noexcept;

class Automaton {
 public:
  /// `tracks` must be strictly increasing; `delta` is row-major,
  /// state_count x 2^arity.
  Automaton(std::vector<std::string> tracks, State initial, std::vector<State> delta,
            std::vector<std::uint8_t> accepting);

  static Automaton empty(std::vector<std::string> tracks);
  static Automaton universal(std::vector<std::string> tracks);

  const std::vector<std::string>& tracks() const noexcept { return tracks_; }
  std::size_t arity() const noexcept { return tracks_.size(); }
  std::size_t alphabet_size() const noexcept { return std::size_t{1} << tracks_.size(); }
  std::size_t state_count() const noexcept { return accepting_.size(); }
  State initial() const noexcept { return initial_; }
  bool accepting(State q) const noexcept { return accepting_[q] != 0; }
  State next(State q, Letter a) const noexcept { return delta_[q * alphabet_size() + a]; }
  std::span<const State> row(State q) const noexcept {
    return {delta_.data() + q * alphabet_size(), alphabet_size()};
  }
  /// Index of a track, or -1.
  int track_index(std::string_view name) const noexcept;

  friend bool operator==(const Automaton&, const Automaton&) = default;

 private:
  std::vector<std::string> tracks_;
  State initial_;
  std::vector<State> delta_;
  std::vector<std::uint8_t> accepting_;
};

/// Nondeterministic input for determinize(); delta is indexed by
/// state * 2^arity + letter.
struct Nfa {
  std::vector<std::string> tracks;
  std::size_t state_count = 0;
  std::vector<State> initial;
  std::vector<std::vector<State>> delta;
  std::vector<std::uint8_t> accepting;
};

enum class BoolOp { And, Or, Xor };

/// Builds a relation automaton over the given formal track names (repeats
/// allowed, they read the same digit). `step` returns the successor of a
/// state on the formal digits, or `sink`.
Automaton from_function(const std::vector<std::string>& formals, std::size_t states,
                        State initial, const std::vector<std::uint8_t>& accepting,
                        const std::function<State(State, std::span<const int>)>& step);

Automaton base_eq(const std::string& x, const std::string& y);
Automaton base_lt(const std::string& x, const std::string& y);
/// x + y = z, the carry machine.
Automaton base_add(const std::string& x, const std::string& y, const std::string& z);
Automaton base_const(const std::string& x, std::uint64_t value);

/// Deterministic automaton with output; arity 1.
struct Dfao {
  Automaton machine;
  std::vector<int> output;

  int evaluate(std::uint64_t k, DigitOrder order) const;
};

/// The 2-state parity machine computing t_k. `corrupt` swaps in a broken
/// machine (outputs 1 for every k > 0); used for fault injection.
Dfao tm_dfao(bool corrupt = false);

/// T[x] = bit.
Automaton sequence_value(const Dfao& seq, const std::string& x, int bit);
/// T[x] = T[y] (equal) or T[x] != T[y].
Automaton sequence_compare(const Dfao& seq, const std::string& x, const std::string& y, bool equal);

Automaton determinize(const Nfa& nfa, const Limits& limits = {});
Automaton minimize(const Automaton& a);
Automaton complement(const Automaton& a);
/// Both operands must carry identical tracks; see align_tracks.
Automaton product(const Automaton& a, const Automaton& b, BoolOp op, const Limits& limits = {});
/// Existential quantification of one track, followed by zero-closure
/// saturation, determinization and minimization.
Automaton project(const Automaton& a, std::string_view track, const Limits& limits = {});
/// Cylindrification onto `schema`, which must contain every track of `a`.
Automaton align_tracks(const Automaton& a, const std::vector<std::string>& schema);
/// Renames track t to actual[t]; repeated names restrict to the diagonal.
Automaton substitute(const Automaton& a, const std::vector<std::string>& actual);
/// Language reversal (digit order flip), determinized and minimized.
Automaton reverse(const Automaton& a, const Limits& limits = {});

bool is_empty(const Automaton& a);
bool is_universal(const Automaton& a);
bool equivalent(const Automaton& a, const Automaton& b, const Limits& limits = {});
/// Same tracks and identical canonical tables after minimization.
bool isomorphic(const Automaton& a, const Automaton& b);
bool is_zero_closed(const Automaton& a);
/// One value per track, in track order.
bool accepts(const Automaton& a, std::span<const std::uint64_t> values);
bool accepts_word(const Automaton& a, std::span<const Letter> word);

/// States that are reachable and can reach acceptance.
std::vector<std::uint8_t> live_states(const Automaton& a);
std::size_t live_state_count(const Automaton& a);

/// Sorted union of two sorted track lists.
std::vector<std::string> merge_tracks(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b);

/// Graphviz description. For Msd the automaton is reversed first.
std::string export_dot(const Automaton& a, DigitOrder order, const Limits& limits = {});

/// Line-oriented snapshot format: tracks, states, initial, accepting, then
/// one "src digits dst" line per transition sorted by state then letter.
std::string to_text(const Automaton& a);
Automaton from_text(std::string_view text);

}  // namespace tmlogic::automata
