#include "logic/compiler.hpp"

#include "core/error.hpp"

namespace tmlogic::logic {

using automata::Automaton;
using automata::BoolOp;

void PredicateEnv::bind(const std::string& name, Predicate predicate) {
  if (predicates_.count(name)) fail(ErrorCode::Rebinding, "predicate '" + name + "' is already defined");
  predicates_.emplace(name, std::move(predicate));
}

const Predicate* PredicateEnv::find(const std::string& name) const {
  auto it = predicates_.find(name);
  return it == predicates_.end() ? nullptr : &it->second;
}

Compiler::Compiler(const PredicateEnv& env, CompileOptions options)
    : env_(env), options_(options), sequence_(automata::tm_dfao(options.corrupt_tm_dfao)) {}

std::string Compiler::fresh() { return "#" + std::to_string(++counter_); }

Automaton Compiler::combine(const Automaton& a, const Automaton& b, BoolOp op) {
  const auto tracks = automata::merge_tracks(a.tracks(), b.tracks());
  return automata::product(automata::align_tracks(a, tracks), automata::align_tracks(b, tracks), op,
                           options_.limits);
}

Compiler::TermTrack Compiler::compile_term(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Variable:
      return {t.name, std::nullopt, {}};
    case Term::Kind::Constant: {
      auto z = fresh();
      return {z, automata::base_const(z, t.value), {z}};
    }
    case Term::Kind::Sum: {
      auto lhs = compile_term(*t.lhs);
      auto rhs = compile_term(*t.rhs);
      auto z = fresh();
      Automaton c = automata::base_add(lhs.name, rhs.name, z);
      for (auto* side : {&lhs, &rhs}) {
        if (side->constraint) c = combine(c, *side->constraint, BoolOp::And);
      }
      for (auto* side : {&lhs, &rhs}) {
        for (const auto& aux : side->aux) c = automata::project(c, aux, options_.limits);
      }
      return {z, std::move(c), {z}};
    }
  }
  fail(ErrorCode::Internal, "unknown term kind");
}

Automaton Compiler::close_terms(Automaton relation, std::vector<TermTrack> terms) {
  for (auto& t : terms) {
    if (t.constraint) relation = combine(relation, *t.constraint, BoolOp::And);
  }
  for (auto& t : terms) {
    for (const auto& aux : t.aux) {
      if (relation.track_index(aux) >= 0) relation = automata::project(relation, aux, options_.limits);
    }
  }
  return relation;
}

Automaton Compiler::compile_compare(const Formula& f) {
  auto lhs = compile_term(*f.lhs);
  auto rhs = compile_term(*f.rhs);
  const auto& x = lhs.name;
  const auto& y = rhs.name;
  Automaton rel = [&] {
    switch (f.op) {
      case RelOp::Eq: return automata::base_eq(x, y);
      case RelOp::Ne: return automata::complement(automata::base_eq(x, y));
      case RelOp::Lt: return automata::base_lt(x, y);
      case RelOp::Gt: return automata::base_lt(y, x);
      case RelOp::Le: return automata::complement(automata::base_lt(y, x));
      case RelOp::Ge: return automata::complement(automata::base_lt(x, y));
    }
    fail(ErrorCode::Internal, "unknown relational operator");
  }();
  return close_terms(std::move(rel), {std::move(lhs), std::move(rhs)});
}

Automaton Compiler::compile_sequence(const Formula& f) {
  if (f.op != RelOp::Eq && f.op != RelOp::Ne) {
    fail(ErrorCode::Parse, std::string("unknown relational operator '") + relop_text(f.op) +
                               "' for sequence values");
  }
  const bool equal = f.op == RelOp::Eq;
  auto index = compile_term(*f.lhs);
  if (f.bit) {
    auto rel = automata::sequence_value(sequence_, index.name, equal ? *f.bit : 1 - *f.bit);
    return close_terms(std::move(rel), {std::move(index)});
  }
  auto other = compile_term(*f.rhs);
  auto rel = automata::sequence_compare(sequence_, index.name, other.name, equal);
  return close_terms(std::move(rel), {std::move(index), std::move(other)});
}

Automaton Compiler::compile_call(const Formula& f) {
  const Predicate* p = env_.find(f.name);
  if (!p) fail(ErrorCode::UnknownPredicate, "unknown predicate '$" + f.name + "'");
  if (p->params.size() != f.args.size()) {
    fail(ErrorCode::ArityMismatch, "'$" + f.name + "' takes " + std::to_string(p->params.size()) +
                                       " arguments, got " + std::to_string(f.args.size()));
  }
  std::vector<TermTrack> terms;
  std::vector<std::string> actual;
  for (const auto& arg : f.args) {
    terms.push_back(compile_term(*arg));
    actual.push_back(terms.back().name);
  }
  return close_terms(automata::substitute(p->automaton, actual), std::move(terms));
}

Automaton Compiler::quantify(const Formula& f) {
  Automaton body = compile(*f.left);
  if (body.track_index(f.var) < 0) return body;
  if (f.kind == Formula::Kind::Exists) return automata::project(body, f.var, options_.limits);
  return automata::complement(
      automata::project(automata::complement(body), f.var, options_.limits));
}

Automaton Compiler::compile(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Compare: return compile_compare(f);
    case K::SeqCompare: return compile_sequence(f);
    case K::Not: return automata::complement(compile(*f.left));
    case K::And: return combine(compile(*f.left), compile(*f.right), BoolOp::And);
    case K::Or: return combine(compile(*f.left), compile(*f.right), BoolOp::Or);
    case K::Implies:
      return combine(automata::complement(compile(*f.left)), compile(*f.right), BoolOp::Or);
    case K::Iff:
      return automata::complement(combine(compile(*f.left), compile(*f.right), BoolOp::Xor));
    case K::Forall:
    case K::Exists: return quantify(f);
    case K::Call: return compile_call(f);
  }
  fail(ErrorCode::Internal, "unknown formula kind");
}

Predicate compile_predicate(const Formula& f, const PredicateEnv& env, const CompileOptions& options,
                            std::string source) {
  const auto free = free_variables(f);
  std::vector<std::string> params(free.begin(), free.end());
  Compiler compiler(env, options);
  auto automaton = automata::align_tracks(compiler.compile(f), params);
  return Predicate{std::move(params), std::move(automaton), std::move(source)};
}

bool decide(const Formula& f, const PredicateEnv& env, const CompileOptions& options) {
  const auto free = free_variables(f);
  if (!free.empty()) {
    std::string names;
    for (const auto& v : free) names += (names.empty() ? "" : ", ") + v;
    fail(ErrorCode::UnboundVariable, "sentence has free variables: " + names);
  }
  Compiler compiler(env, options);
  const Automaton a = compiler.compile(f);
  return a.accepting(a.initial());
}

}  // namespace tmlogic::logic
