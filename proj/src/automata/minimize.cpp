// Hopcroft partition refinement followed by breadth-first renumbering, so
// that equivalent minimal automata come out with identical tables.

#include <algorithm>
#include <deque>

#include "automata/automaton.hpp"

namespace tmlogic::automata {

namespace {

class Partition {
 public:
  explicit Partition(std::size_t n) : elems_(n), loc_(n), block_(n, 0) {}

  std::size_t block_count() const { return start_.size(); }
  std::uint32_t block_of(std::uint32_t q) const { return block_[q]; }
  std::size_t size(std::uint32_t b) const { return end_[b] - start_[b]; }
  std::span<const std::uint32_t> members(std::uint32_t b) const {
    return {elems_.data() + start_[b], end_[b] - start_[b]};
  }

  // Initial blocks from a labelling of states into [0, classes).
  void init(const std::vector<std::uint32_t>& label, std::size_t classes) {
    std::vector<std::size_t> count(classes, 0);
    for (auto l : label) ++count[l];
    std::vector<std::uint32_t> id(classes, 0);
    std::size_t offset = 0;
    for (std::size_t c = 0; c < classes; ++c) {
      if (count[c] == 0) continue;
      id[c] = static_cast<std::uint32_t>(start_.size());
      start_.push_back(offset);
      mid_.push_back(offset);
      end_.push_back(offset + count[c]);
      offset += count[c];
    }
    std::vector<std::size_t> fill(start_.begin(), start_.end());
    for (std::uint32_t q = 0; q < label.size(); ++q) {
      const auto b = id[label[q]];
      block_[q] = b;
      loc_[q] = fill[b]++;
      elems_[loc_[q]] = q;
    }
  }

  // Moves q into the marked prefix of its block; returns true on the
  // block's first mark.
  bool mark(std::uint32_t q) {
    const auto b = block_[q];
    const std::size_t pos = loc_[q];
    if (pos < mid_[b]) return false;
    const std::size_t target = mid_[b]++;
    const auto other = elems_[target];
    std::swap(elems_[pos], elems_[target]);
    loc_[other] = pos;
    loc_[q] = target;
    return mid_[b] == start_[b] + 1;
  }

  // Splits off the marked prefix of b as a new block; returns its id, or
  // b itself if no split happened.
  std::uint32_t split(std::uint32_t b) {
    if (mid_[b] == end_[b]) {
      mid_[b] = start_[b];
      return b;
    }
    const auto nb = static_cast<std::uint32_t>(start_.size());
    start_.push_back(start_[b]);
    end_.push_back(mid_[b]);
    mid_.push_back(start_[b]);
    start_[b] = mid_[b];
    for (std::size_t i = start_[nb]; i < end_[nb]; ++i) block_[elems_[i]] = nb;
    return nb;
  }

 private:
  std::vector<std::uint32_t> elems_;
  std::vector<std::size_t> loc_;
  std::vector<std::uint32_t> block_;
  std::vector<std::size_t> start_, mid_, end_;
};

}  // namespace

Automaton minimize(const Automaton& a) {
  const std::size_t k = a.alphabet_size();

  // restrict to reachable states
  std::vector<State> id(a.state_count(), static_cast<State>(-1));
  std::vector<State> order{a.initial()};
  id[a.initial()] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (auto t : a.row(order[i])) {
      if (id[t] == static_cast<State>(-1)) {
        id[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  }
  const std::size_t n = order.size();
  std::vector<State> delta(n * k);
  std::vector<std::uint32_t> label(n);
  for (std::size_t i = 0; i < n; ++i) {
    label[i] = a.accepting(order[i]) ? 1 : 0;
    for (Letter l = 0; l < k; ++l) delta[i * k + l] = id[a.next(order[i], l)];
  }

  // inverse transitions, grouped by (target, letter)
  std::vector<std::uint32_t> inv_start(n * k + 1, 0);
  for (std::size_t i = 0; i < n * k; ++i) ++inv_start[delta[i] * k + i % k + 1];
  for (std::size_t i = 1; i <= n * k; ++i) inv_start[i] += inv_start[i - 1];
  std::vector<std::uint32_t> inv(n * k);
  {
    std::vector<std::uint32_t> fill(inv_start.begin(), inv_start.end() - 1);
    for (std::size_t i = 0; i < n * k; ++i) {
      inv[fill[delta[i] * k + i % k]++] = static_cast<std::uint32_t>(i / k);
    }
  }

  Partition part(n);
  part.init(label, 2);
  std::vector<std::uint8_t> queued;
  std::deque<std::uint32_t> work;
  auto enqueue = [&](std::uint32_t b) {
    if (queued.size() <= b) queued.resize(b + 1, 0);
    if (!queued[b]) {
      queued[b] = 1;
      work.push_back(b);
    }
  };
  if (part.block_count() == 2) enqueue(part.size(0) <= part.size(1) ? 0 : 1);

  std::vector<std::uint32_t> splitter, touched;
  while (!work.empty()) {
    const auto s = work.front();
    work.pop_front();
    queued[s] = 0;
    auto members = part.members(s);
    splitter.assign(members.begin(), members.end());
    for (Letter l = 0; l < k; ++l) {
      touched.clear();
      for (auto q : splitter) {
        const std::size_t key = q * k + l;
        for (auto i = inv_start[key]; i < inv_start[key + 1]; ++i) {
          const auto p = inv[i];
          if (part.mark(p)) touched.push_back(part.block_of(p));
        }
      }
      for (auto b : touched) {
        const auto nb = part.split(b);
        if (nb == b) continue;
        if (b < queued.size() && queued[b]) {
          enqueue(nb);
        } else {
          enqueue(part.size(nb) <= part.size(b) ? nb : b);
        }
      }
    }
  }

  // quotient, numbered in breadth-first order from the initial block
  const std::size_t blocks = part.block_count();
  std::vector<State> number(blocks, static_cast<State>(-1));
  std::vector<std::uint32_t> rep;
  number[part.block_of(0)] = 0;
  rep.push_back(0);
  for (std::size_t i = 0; i < rep.size(); ++i) {
    for (Letter l = 0; l < k; ++l) {
      const auto b = part.block_of(delta[rep[i] * k + l]);
      if (number[b] == static_cast<State>(-1)) {
        number[b] = static_cast<State>(rep.size());
        rep.push_back(part.members(b)[0]);
      }
    }
  }
  std::vector<State> out_delta(rep.size() * k);
  std::vector<std::uint8_t> out_acc(rep.size());
  for (std::size_t i = 0; i < rep.size(); ++i) {
    out_acc[i] = label[rep[i]] ? 1 : 0;
    for (Letter l = 0; l < k; ++l) out_delta[i * k + l] = number[part.block_of(delta[rep[i] * k + l])];
  }
  return Automaton(a.tracks(), 0, std::move(out_delta), std::move(out_acc));
}

}  // namespace tmlogic::automata
