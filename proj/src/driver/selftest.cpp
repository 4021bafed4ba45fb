#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "core/error.hpp"
#include "driver/driver.hpp"

namespace tmlogic::driver {

namespace {

using automata::Automaton;
using automata::BoolOp;
using automata::State;

// Random complete DFA whose acceptance is constant along zero-letter chains,
// hence closed under trailing zero tuples.
Automaton random_zero_closed(std::mt19937_64& rng, std::vector<std::string> tracks, std::size_t states) {
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

Automaton permuted(const Automaton& a, std::mt19937_64& rng) {
  const std::size_t n = a.state_count();
  std::vector<State> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<State> delta(n * a.alphabet_size());
  std::vector<std::uint8_t> accepting(n);
  for (State q = 0; q < n; ++q) {
    accepting[perm[q]] = a.accepting(q);
    for (automata::Letter l = 0; l < a.alphabet_size(); ++l) delta[perm[q] * a.alphabet_size() + l] = perm[a.next(q, l)];
  }
  return Automaton(a.tracks(), perm[a.initial()], std::move(delta), std::move(accepting));
}

std::string algebra_check(std::size_t rounds) {
  std::mt19937_64 rng(20240229);
  std::uniform_int_distribution<std::size_t> size(1, 6);
  for (std::size_t r = 0; r < rounds; ++r) {
    const auto a = random_zero_closed(rng, {"x", "y"}, size(rng));
    const auto b = random_zero_closed(rng, {"x", "y"}, size(rng));
    const std::string at = " (round " + std::to_string(r) + ")";
    if (!automata::equivalent(automata::complement(automata::complement(a)), a)) return "double complement" + at;
    const auto lhs = automata::complement(automata::product(a, b, BoolOp::And));
    const auto rhs = automata::product(automata::complement(a), automata::complement(b), BoolOp::Or);
    if (!automata::equivalent(lhs, rhs)) return "De Morgan" + at;
    if (automata::minimize(a) != automata::minimize(permuted(a, rng))) return "canonical minimization" + at;
    const auto p = automata::project(a, "y");
    if (!automata::is_zero_closed(p)) return "projection zero closure" + at;
    for (std::uint64_t x = 0; x < 16; ++x) {
      bool witness = false;
      for (std::uint64_t y = 0; y < 1024 && !witness; ++y) {
        const std::uint64_t v[] = {x, y};
        witness = automata::accepts(a, v);
      }
      const std::uint64_t v[] = {x};
      if (automata::accepts(p, v) != witness) return "projection soundness" + at;
    }
  }
  return {};
}

}  // namespace

SelftestResult selftest(Session& session) {
  SelftestResult result;
  auto check = [&](const std::string& name, const std::function<std::string()>& body) {
    SelftestCheck c;
    c.name = name;
    try {
      c.detail = body();
      c.pass = c.detail.empty();
    } catch (const Error& e) {
      c.detail = std::string(error_code_name(e.code())) + ": " + e.what();
    }
    result.checks.push_back(std::move(c));
  };

  check("tm_dfao", [&] {
    const auto dfao = automata::tm_dfao(session.config().corrupt_tm_dfao);
    for (std::uint64_t k = 0; k < 4096; ++k) {
      for (auto order : {automata::DigitOrder::Lsd, automata::DigitOrder::Msd}) {
        if (dfao.evaluate(k, order) != tm::tm_bit(k)) return "wrong output at k = " + std::to_string(k);
      }
    }
    return std::string();
  });

  check("theorem_patterns", [&] {
    const auto& report = session.pattern_report();
    for (const char* name : {"alloccur", "checkeach"}) {
      const auto* c = report.find(name);
      if (!c || c->verdict != true) return std::string(name) + " is not TRUE";
    }
    return std::string();
  });

  check("theorem_lengths", [&] {
    const auto report = session.run(embedded_file("paper_thm2.wal"));
    const auto* c = report.find("checklen");
    return c && c->verdict == true ? std::string() : std::string("checklen is not TRUE");
  });

  check("oracle_vs_automata", [&] {
    const std::size_t window = session.config().window;
    std::size_t insufficient = 0, disagreements = 0, compared = 0;
    for (std::size_t n = 2; n <= 8; ++n) {
      if (n > window) {
        insufficient += 513;
        continue;
      }
      const std::size_t max_start = std::min<std::size_t>(512, window - n);
      // starts the window cannot hold count as unclassifiable
      insufficient += 512 - max_start;
      const auto classes = session.census().classify_starts(n, max_start);
      for (std::size_t i = 0; i <= max_start; ++i) {
        if (classes[i] == tm::PatternClass::Insufficient) {
          ++insufficient;
          continue;
        }
        ++compared;
        try {
          if (automaton_class(session, i, n) != classes[i]) ++disagreements;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::Disagreement) throw;
          ++disagreements;
        }
      }
    }
    if (insufficient || disagreements) {
      return "INSUFFICIENT " + std::to_string(insufficient) + ", disagreements " +
             std::to_string(disagreements) + " of " + std::to_string(compared);
    }
    return std::string();
  });

  check("count_table", [&] {
    const std::size_t n_max = std::min<std::size_t>(32, session.config().window);
    if (n_max < 2) return std::string("window too small");
    std::size_t flagged = 0;
    for (const auto& row : count_table(session, n_max)) flagged += row.flagged;
    return flagged ? std::to_string(flagged) + " flagged rows" : std::string();
  });

  check("linrep_identities", [&] {
    const auto& report = session.counting_report();
    const auto& mab = report.find("mab")->representation.value();
    const auto& mabba = report.find("mabba")->representation.value();
    if (!linrep::stabilized(mab) || !linrep::stabilized(mabba)) return std::string("stabilization certificate fails");
    const auto f_diff = linrep::minimize_rep(
        linrep::subtract(mab, linrep::reverse(linrep::scale(linrep::from_recurrence_a006165(), 2))));
    if (f_diff.dim != 1 || linrep::evaluate(f_diff, 0) != -2) return std::string("f identity fails");
    if (linrep::minimize_rep(linrep::subtract(mabba, linrep::reverse(linrep::from_recurrence_a060973()))).dim != 0) {
      return std::string("g identity fails");
    }
    if (!linrep::equal_reps(mab, linrep::printed_f_shifted()) ||
        !linrep::equal_reps(mabba, linrep::printed_g_shifted())) {
      return std::string("printed representations differ");
    }
    return std::string();
  });

  check("automata_algebra", [] { return algebra_check(100); });

  result.pass = std::all_of(result.checks.begin(), result.checks.end(), [](const auto& c) { return c.pass; });
  return result;
}

std::string format_selftest(const SelftestResult& r) {
  std::ostringstream out;
  for (const auto& c : r.checks) {
    out << (c.pass ? "pass  " : "FAIL  ") << c.name;
    if (!c.detail.empty()) out << ": " << c.detail;
    out << '\n';
  }
  out << "overall: " << (r.pass ? "pass" : "FAIL") << '\n';
  return out.str();
}

}  // namespace tmlogic::driver
