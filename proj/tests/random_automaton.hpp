#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "automata/automaton.hpp"

namespace testgen {

using tmlogic::automata::Automaton;
using tmlogic::automata::State;

/// Random complete DFA whose acceptance is constant along zero-letter
/// chains, hence zero-closed.
inline Automaton random_automaton(std::mt19937_64& rng, std::vector<std::string> tracks, std::size_t states) {
  const std::size_t letters = std::size_t{1} << tracks.size();
  std::uniform_int_distribution<State> pick(0, static_cast<State>(states - 1));
  std::vector<State> delta(states * letters);
  for (auto& d : delta) d = pick(rng);
  std::vector<std::size_t> parent(states);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = root(parent[x]);
  };
  for (std::size_t q = 0; q < states; ++q) parent[root(q)] = root(delta[q * letters]);
  std::vector<std::uint8_t> bit(states), accepting(states);
  for (auto& b : bit) b = static_cast<std::uint8_t>(rng() & 1);
  for (std::size_t q = 0; q < states; ++q) accepting[q] = bit[root(q)];
  return Automaton(std::move(tracks), pick(rng), std::move(delta), std::move(accepting));
}

}  // namespace testgen
