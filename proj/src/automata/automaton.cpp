#include "automata/automaton.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <unordered_map>

#include "core/error.hpp"

namespace tmlogic::automata {

const char* digit_order_name(DigitOrder order) noexcept {
  return order == DigitOrder::Lsd ? "lsd" : "msd";
}

Automaton::Automaton(std::vector<std::string> tracks, State initial, std::vector<State> delta,
                     std::vector<std::uint8_t> accepting)
    : tracks_(std::move(tracks)),
      initial_(initial),
      delta_(std::move(delta)),
      accepting_(std::move(accepting)) {
  if (tracks_.size() > kMaxArity) {
    fail(ErrorCode::ResourceExhausted, "arity " + std::to_string(tracks_.size()) + " exceeds " +
                                           std::to_string(kMaxArity));
  }
  for (std::size_t t = 1; t < tracks_.size(); ++t) {
    if (!(tracks_[t - 1] < tracks_[t])) {
      fail(ErrorCode::InvalidArgument, "tracks must be strictly increasing: '" + tracks_[t - 1] +
                                           "', '" + tracks_[t] + "'");
    }
  }
  if (accepting_.empty()) fail(ErrorCode::InvalidArgument, "automaton needs at least one state");
  if (delta_.size() != accepting_.size() * alphabet_size()) {
    fail(ErrorCode::InvalidArgument, "transition table size does not match states x alphabet");
  }
  if (initial_ >= accepting_.size()) fail(ErrorCode::InvalidArgument, "initial state out of range");
  for (auto target : delta_) {
    if (target >= accepting_.size()) fail(ErrorCode::InvalidArgument, "transition target out of range");
  }
}

Automaton Automaton::empty(std::vector<std::string> tracks) {
  const std::size_t k = std::size_t{1} << tracks.size();
  return Automaton(std::move(tracks), 0, std::vector<State>(k, 0), {0});
}

Automaton Automaton::universal(std::vector<std::string> tracks) {
  const std::size_t k = std::size_t{1} << tracks.size();
  return Automaton(std::move(tracks), 0, std::vector<State>(k, 0), {1});
}

int Automaton::track_index(std::string_view name) const noexcept {
  auto it = std::lower_bound(tracks_.begin(), tracks_.end(), name);
  if (it == tracks_.end() || *it != name) return -1;
  return static_cast<int>(it - tracks_.begin());
}

std::vector<std::string> merge_tracks(const std::vector<std::string>& a,
                                      const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

namespace {

std::vector<std::string> sorted_unique(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return names;
}

// position of each formal name inside the sorted unique track list
std::vector<int> formal_positions(const std::vector<std::string>& formals,
                                  const std::vector<std::string>& tracks) {
  std::vector<int> pos(formals.size());
  for (std::size_t f = 0; f < formals.size(); ++f) {
    pos[f] = static_cast<int>(std::lower_bound(tracks.begin(), tracks.end(), formals[f]) -
                              tracks.begin());
  }
  return pos;
}

void check_cap(std::size_t states, const Limits& limits) {
  if (states > limits.state_cap) {
    fail(ErrorCode::StateCapExceeded,
         "automaton construction exceeded the state cap of " + std::to_string(limits.state_cap));
  }
}

struct VectorHash {
  std::size_t operator()(const std::vector<State>& v) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ v.size();
    for (auto x : v) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

// Subset construction. `successors(q, letter, out)` appends targets of q;
// only states with useful[q] are kept in subsets.
template <typename Successors>
Automaton subset_construction(std::vector<std::string> tracks, std::vector<State> start,
                              std::size_t nfa_states, const std::vector<std::uint8_t>& useful,
                              const std::vector<std::uint8_t>& accepting, Successors&& successors,
                              const Limits& limits) {
  const std::size_t k = std::size_t{1} << tracks.size();
  std::vector<std::uint32_t> stamp(nfa_states, 0);
  std::uint32_t generation = 0;

  auto normalize = [&](std::vector<State>& set) {
    ++generation;
    std::size_t keep = 0;
    for (auto q : set) {
      if (!useful[q] || stamp[q] == generation) continue;
      stamp[q] = generation;
      set[keep++] = q;
    }
    set.resize(keep);
    std::sort(set.begin(), set.end());
  };

  std::unordered_map<std::vector<State>, State, VectorHash> index;
  std::vector<std::vector<State>> subsets;
  std::vector<State> delta;
  std::vector<std::uint8_t> acc;

  auto intern = [&](std::vector<State>&& set) -> State {
    auto it = index.find(set);
    if (it != index.end()) return it->second;
    const auto id = static_cast<State>(subsets.size());
    check_cap(subsets.size() + 1, limits);
    bool a = false;
    for (auto q : set) a = a || accepting[q];
    acc.push_back(a ? 1 : 0);
    index.emplace(set, id);
    subsets.push_back(std::move(set));
    return id;
  };

  normalize(start);
  intern(std::move(start));
  std::vector<State> buffer;
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    delta.resize((s + 1) * k);
    for (Letter a = 0; a < k; ++a) {
      buffer.clear();
      for (auto q : subsets[s]) successors(q, a, buffer);
      normalize(buffer);
      const State target = intern(std::vector<State>(buffer));
      delta[s * k + a] = target;
    }
  }
  return Automaton(std::move(tracks), 0, std::move(delta), std::move(acc));
}

// Reverse reachability: marks states from which a marked state is reachable
// using only the given letters.
std::vector<std::uint8_t> backward_closure(const Automaton& a, std::vector<std::uint8_t> marked,
                                           const std::vector<Letter>& letters) {
  const std::size_t n = a.state_count();
  std::vector<std::vector<State>> preds(n);
  for (State q = 0; q < n; ++q) {
    for (auto l : letters) preds[a.next(q, l)].push_back(q);
  }
  std::deque<State> work;
  for (State q = 0; q < n; ++q) {
    if (marked[q]) work.push_back(q);
  }
  while (!work.empty()) {
    const State q = work.front();
    work.pop_front();
    for (auto p : preds[q]) {
      if (!marked[p]) {
        marked[p] = 1;
        work.push_back(p);
      }
    }
  }
  return marked;
}

std::vector<Letter> all_letters(std::size_t k) {
  std::vector<Letter> letters(k);
  std::iota(letters.begin(), letters.end(), Letter{0});
  return letters;
}

std::vector<std::uint8_t> reachable(const Automaton& a) {
  std::vector<std::uint8_t> seen(a.state_count(), 0);
  std::vector<State> stack{a.initial()};
  seen[a.initial()] = 1;
  while (!stack.empty()) {
    const State q = stack.back();
    stack.pop_back();
    for (auto t : a.row(q)) {
      if (!seen[t]) {
        seen[t] = 1;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

std::vector<std::uint8_t> coreachable(const Automaton& a) {
  std::vector<std::uint8_t> acc(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) acc[q] = a.accepting(q) ? 1 : 0;
  return backward_closure(a, std::move(acc), all_letters(a.alphabet_size()));
}

}  // namespace

Automaton from_function(const std::vector<std::string>& formals, std::size_t states,
                        State initial, const std::vector<std::uint8_t>& accepting,
                        const std::function<State(State, std::span<const int>)>& step) {
  auto tracks = sorted_unique(formals);
  const auto pos = formal_positions(formals, tracks);
  const std::size_t k = std::size_t{1} << tracks.size();
  std::vector<State> delta(states * k);
  std::vector<int> digits(formals.size());
  for (State q = 0; q < states; ++q) {
    for (Letter a = 0; a < k; ++a) {
      for (std::size_t f = 0; f < formals.size(); ++f) digits[f] = (a >> pos[f]) & 1;
      delta[q * k + a] = step(q, digits);
    }
  }
  return minimize(Automaton(std::move(tracks), initial, std::move(delta), accepting));
}

Automaton base_eq(const std::string& x, const std::string& y) {
  return from_function({x, y}, 2, 0, {1, 0}, [](State q, std::span<const int> d) -> State {
    return (q == 0 && d[0] == d[1]) ? 0 : 1;
  });
}

Automaton base_lt(const std::string& x, const std::string& y) {
  // 0: equal so far, 1: x < y on the digits read, 2: x > y. Later digits
  // are more significant.
  return from_function({x, y}, 3, 0, {0, 1, 0}, [](State q, std::span<const int> d) -> State {
    if (d[0] < d[1]) return 1;
    if (d[0] > d[1]) return 2;
    return q;
  });
}

Automaton base_add(const std::string& x, const std::string& y, const std::string& z) {
  // states: carry 0, carry 1, sink
  return from_function({x, y, z}, 3, 0, {1, 0, 0}, [](State q, std::span<const int> d) -> State {
    if (q == 2) return 2;
    const int sum = d[0] + d[1] + static_cast<int>(q);
    if ((sum & 1) != d[2]) return 2;
    return static_cast<State>(sum >> 1);
  });
}

Automaton base_const(const std::string& x, std::uint64_t value) {
  const std::size_t width = static_cast<std::size_t>(std::bit_width(value));
  // states 0..width: digits consumed; width + 1: sink
  std::vector<std::uint8_t> acc(width + 2, 0);
  acc[width] = 1;
  return from_function({x}, width + 2, 0, acc, [=](State q, std::span<const int> d) -> State {
    if (q > width) return static_cast<State>(width + 1);
    const int expected = q < width ? static_cast<int>((value >> q) & 1) : 0;
    if (d[0] != expected) return static_cast<State>(width + 1);
    return q < width ? q + 1 : q;
  });
}

int Dfao::evaluate(std::uint64_t k, DigitOrder order) const {
  const auto width = static_cast<std::size_t>(std::bit_width(k));
  State q = machine.initial();
  for (std::size_t j = 0; j < width; ++j) {
    const std::size_t bit = order == DigitOrder::Lsd ? j : width - 1 - j;
    q = machine.next(q, static_cast<Letter>((k >> bit) & 1));
  }
  return output[q];
}

Dfao tm_dfao(bool corrupt) {
  std::vector<State> delta = {0, 1, 1, corrupt ? State{1} : State{0}};
  Automaton machine({"k"}, 0, std::move(delta), {0, 1});
  return Dfao{std::move(machine), {0, 1}};
}

Automaton sequence_value(const Dfao& seq, const std::string& x, int bit) {
  const auto& m = seq.machine;
  std::vector<std::uint8_t> acc(m.state_count());
  for (State q = 0; q < m.state_count(); ++q) acc[q] = seq.output[q] == bit ? 1 : 0;
  return from_function({x}, m.state_count(), m.initial(), acc,
                       [&](State q, std::span<const int> d) { return m.next(q, static_cast<Letter>(d[0])); });
}

Automaton sequence_compare(const Dfao& seq, const std::string& x, const std::string& y, bool equal) {
  const auto& m = seq.machine;
  const std::size_t n = m.state_count();
  std::vector<std::uint8_t> acc(n * n);
  for (State p = 0; p < n; ++p) {
    for (State q = 0; q < n; ++q) acc[p * n + q] = (seq.output[p] == seq.output[q]) == equal ? 1 : 0;
  }
  const State init = static_cast<State>(m.initial() * n + m.initial());
  return from_function({x, y}, n * n, init, acc, [&](State s, std::span<const int> d) {
    const State p = m.next(static_cast<State>(s / n), static_cast<Letter>(d[0]));
    const State q = m.next(static_cast<State>(s % n), static_cast<Letter>(d[1]));
    return static_cast<State>(p * n + q);
  });
}

Automaton determinize(const Nfa& nfa, const Limits& limits) {
  const std::size_t k = std::size_t{1} << nfa.tracks.size();
  if (nfa.delta.size() != nfa.state_count * k || nfa.accepting.size() != nfa.state_count) {
    fail(ErrorCode::InvalidArgument, "malformed NFA tables");
  }
  // keep only states that can reach acceptance
  std::vector<std::uint8_t> useful = nfa.accepting;
  std::vector<std::vector<State>> preds(nfa.state_count);
  for (State q = 0; q < nfa.state_count; ++q) {
    for (Letter a = 0; a < k; ++a) {
      for (auto t : nfa.delta[q * k + a]) preds[t].push_back(q);
    }
  }
  std::deque<State> work;
  for (State q = 0; q < nfa.state_count; ++q) {
    if (useful[q]) work.push_back(q);
  }
  while (!work.empty()) {
    const State q = work.front();
    work.pop_front();
    for (auto p : preds[q]) {
      if (!useful[p]) {
        useful[p] = 1;
        work.push_back(p);
      }
    }
  }
  return subset_construction(
      nfa.tracks, nfa.initial, nfa.state_count, useful, nfa.accepting,
      [&](State q, Letter a, std::vector<State>& out) {
        const auto& targets = nfa.delta[q * k + a];
        out.insert(out.end(), targets.begin(), targets.end());
      },
      limits);
}

Automaton complement(const Automaton& a) {
  std::vector<State> delta(a.state_count() * a.alphabet_size());
  std::vector<std::uint8_t> acc(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    acc[q] = a.accepting(q) ? 0 : 1;
    auto row = a.row(q);
    std::copy(row.begin(), row.end(), delta.begin() + static_cast<std::ptrdiff_t>(q * a.alphabet_size()));
  }
  return minimize(Automaton(a.tracks(), a.initial(), std::move(delta), std::move(acc)));
}

Automaton product(const Automaton& a, const Automaton& b, BoolOp op, const Limits& limits) {
  if (a.tracks() != b.tracks()) {
    fail(ErrorCode::TrackMismatch, "product operands have different tracks");
  }
  const std::size_t k = a.alphabet_size();
  std::unordered_map<std::uint64_t, State> index;
  std::vector<std::pair<State, State>> pairs;
  std::vector<State> delta;
  std::vector<std::uint8_t> acc;
  auto intern = [&](State p, State q) -> State {
    const std::uint64_t key = (std::uint64_t{p} << 32) | q;
    auto it = index.find(key);
    if (it != index.end()) return it->second;
    check_cap(pairs.size() + 1, limits);
    const auto id = static_cast<State>(pairs.size());
    index.emplace(key, id);
    pairs.emplace_back(p, q);
    const bool x = a.accepting(p), y = b.accepting(q);
    const bool r = op == BoolOp::And ? (x && y) : op == BoolOp::Or ? (x || y) : (x != y);
    acc.push_back(r ? 1 : 0);
    return id;
  };
  intern(a.initial(), b.initial());
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    delta.resize((s + 1) * k);
    const auto [p, q] = pairs[s];
    for (Letter l = 0; l < k; ++l) delta[s * k + l] = intern(a.next(p, l), b.next(q, l));
  }
  return minimize(Automaton(a.tracks(), 0, std::move(delta), std::move(acc)));
}

Automaton project(const Automaton& a, std::string_view track, const Limits& limits) {
  const int ti = a.track_index(track);
  if (ti < 0) fail(ErrorCode::UnknownTrack, "cannot project unknown track '" + std::string(track) + "'");
  std::vector<std::string> rest;
  for (const auto& t : a.tracks()) {
    if (t != track) rest.push_back(t);
  }
  const Letter low_mask = (Letter{1} << ti) - 1;
  auto widen = [&](Letter l) -> Letter { return ((l & ~low_mask) << 1) | (l & low_mask); };
  const Letter witness = Letter{1} << ti;

  // saturation: states that reach acceptance on letters zero on every
  // remaining track
  std::vector<std::uint8_t> acc(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) acc[q] = a.accepting(q) ? 1 : 0;
  const auto saturated = backward_closure(a, acc, {0, witness});
  const auto useful = coreachable(a);

  return minimize(subset_construction(
      std::move(rest), {a.initial()}, a.state_count(), useful, saturated,
      [&](State q, Letter l, std::vector<State>& out) {
        const Letter wide = widen(l);
        out.push_back(a.next(q, wide));
        out.push_back(a.next(q, wide | witness));
      },
      limits));
}

Automaton align_tracks(const Automaton& a, const std::vector<std::string>& schema) {
  auto tracks = sorted_unique(schema);
  std::vector<int> where(a.arity());
  for (std::size_t t = 0; t < a.arity(); ++t) {
    auto it = std::lower_bound(tracks.begin(), tracks.end(), a.tracks()[t]);
    if (it == tracks.end() || *it != a.tracks()[t]) {
      fail(ErrorCode::TrackMismatch, "schema is missing track '" + a.tracks()[t] + "'");
    }
    where[t] = static_cast<int>(it - tracks.begin());
  }
  if (tracks == a.tracks()) return a;
  const std::size_t k = std::size_t{1} << tracks.size();
  std::vector<Letter> sub(k);
  for (Letter l = 0; l < k; ++l) {
    Letter s = 0;
    for (std::size_t t = 0; t < a.arity(); ++t) s |= ((l >> where[t]) & 1) << t;
    sub[l] = s;
  }
  std::vector<State> delta(a.state_count() * k);
  std::vector<std::uint8_t> acc(a.state_count());
  for (State q = 0; q < a.state_count(); ++q) {
    acc[q] = a.accepting(q) ? 1 : 0;
    for (Letter l = 0; l < k; ++l) delta[q * k + l] = a.next(q, sub[l]);
  }
  return Automaton(std::move(tracks), a.initial(), std::move(delta), std::move(acc));
}

Automaton substitute(const Automaton& a, const std::vector<std::string>& actual) {
  if (actual.size() != a.arity()) {
    fail(ErrorCode::ArityMismatch, "substitution needs " + std::to_string(a.arity()) +
                                       " names, got " + std::to_string(actual.size()));
  }
  auto tracks = sorted_unique(actual);
  const auto pos = formal_positions(actual, tracks);
  const std::size_t k = std::size_t{1} << tracks.size();
  // an extra sink absorbs letters off the diagonal
  const State sink = static_cast<State>(a.state_count());
  std::vector<State> delta((a.state_count() + 1) * k, sink);
  std::vector<std::uint8_t> acc(a.state_count() + 1, 0);
  for (State q = 0; q < a.state_count(); ++q) {
    acc[q] = a.accepting(q) ? 1 : 0;
    for (Letter l = 0; l < k; ++l) {
      Letter old = 0;
      for (std::size_t t = 0; t < a.arity(); ++t) old |= ((l >> pos[t]) & 1) << t;
      delta[q * k + l] = a.next(q, old);
    }
  }
  return minimize(Automaton(std::move(tracks), a.initial(), std::move(delta), std::move(acc)));
}

Automaton reverse(const Automaton& a, const Limits& limits) {
  const std::size_t k = a.alphabet_size();
  std::vector<std::vector<State>> back(a.state_count() * k);
  for (State q = 0; q < a.state_count(); ++q) {
    for (Letter l = 0; l < k; ++l) back[a.next(q, l) * k + l].push_back(q);
  }
  std::vector<State> start;
  for (State q = 0; q < a.state_count(); ++q) {
    if (a.accepting(q)) start.push_back(q);
  }
  std::vector<std::uint8_t> acc(a.state_count(), 0);
  acc[a.initial()] = 1;
  // in the reversed machine every state reachable from the original
  // initial state is useful
  const auto useful = reachable(a);
  return minimize(subset_construction(
      a.tracks(), std::move(start), a.state_count(), useful, acc,
      [&](State q, Letter l, std::vector<State>& out) {
        const auto& src = back[q * k + l];
        out.insert(out.end(), src.begin(), src.end());
      },
      limits));
}

bool is_empty(const Automaton& a) {
  const auto seen = reachable(a);
  for (State q = 0; q < a.state_count(); ++q) {
    if (seen[q] && a.accepting(q)) return false;
  }
  return true;
}

bool is_universal(const Automaton& a) {
  const auto seen = reachable(a);
  for (State q = 0; q < a.state_count(); ++q) {
    if (seen[q] && !a.accepting(q)) return false;
  }
  return true;
}

bool equivalent(const Automaton& a, const Automaton& b, const Limits& limits) {
  const auto tracks = merge_tracks(a.tracks(), b.tracks());
  return is_empty(product(align_tracks(a, tracks), align_tracks(b, tracks), BoolOp::Xor, limits));
}

bool isomorphic(const Automaton& a, const Automaton& b) {
  if (a.tracks() != b.tracks()) return false;
  return minimize(a) == minimize(b);
}

bool is_zero_closed(const Automaton& a) {
  const auto seen = reachable(a);
  for (State q = 0; q < a.state_count(); ++q) {
    if (seen[q] && a.accepting(q) != a.accepting(a.next(q, 0))) return false;
  }
  return true;
}

bool accepts(const Automaton& a, std::span<const std::uint64_t> values) {
  if (values.size() != a.arity()) {
    fail(ErrorCode::ArityMismatch, "accepts needs " + std::to_string(a.arity()) +
                                       " values, got " + std::to_string(values.size()));
  }
  std::size_t width = 0;
  for (auto v : values) width = std::max<std::size_t>(width, std::bit_width(v));
  State q = a.initial();
  for (std::size_t j = 0; j < width; ++j) {
    Letter l = 0;
    for (std::size_t t = 0; t < values.size(); ++t) l |= static_cast<Letter>((values[t] >> j) & 1) << t;
    q = a.next(q, l);
  }
  return a.accepting(q);
}

bool accepts_word(const Automaton& a, std::span<const Letter> word) {
  State q = a.initial();
  for (auto l : word) {
    if (l >= a.alphabet_size()) fail(ErrorCode::InvalidArgument, "letter outside the alphabet");
    q = a.next(q, l);
  }
  return a.accepting(q);
}

std::vector<std::uint8_t> live_states(const Automaton& a) {
  auto live = reachable(a);
  const auto co = coreachable(a);
  for (State q = 0; q < a.state_count(); ++q) live[q] = live[q] && co[q];
  return live;
}

std::size_t live_state_count(const Automaton& a) {
  const auto live = live_states(a);
  return static_cast<std::size_t>(std::count(live.begin(), live.end(), 1));
}

}  // namespace tmlogic::automata
