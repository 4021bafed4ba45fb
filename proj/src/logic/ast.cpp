#include "logic/ast.hpp"

namespace tmlogic::logic {

TermPtr Term::variable(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Variable;
  t->name = std::move(name);
  return t;
}

TermPtr Term::constant(std::uint64_t value) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Constant;
  t->value = value;
  return t;
}

TermPtr Term::sum(TermPtr lhs, TermPtr rhs) {
  auto t = std::make_shared<Term>();
  t->kind = Kind::Sum;
  t->lhs = std::move(lhs);
  t->rhs = std::move(rhs);
  return t;
}

const char* relop_text(RelOp op) noexcept {
  switch (op) {
    case RelOp::Eq: return "=";
    case RelOp::Ne: return "!=";
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Gt: return ">";
    case RelOp::Ge: return ">=";
  }
  return "?";
}

FormulaPtr Formula::compare(TermPtr lhs, RelOp op, TermPtr rhs) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Compare;
  f->lhs = std::move(lhs);
  f->op = op;
  f->rhs = std::move(rhs);
  return f;
}

FormulaPtr Formula::seq_compare(TermPtr index, RelOp op, TermPtr other_index) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::SeqCompare;
  f->lhs = std::move(index);
  f->op = op;
  f->rhs = std::move(other_index);
  return f;
}

FormulaPtr Formula::seq_compare_bit(TermPtr index, RelOp op, int bit) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::SeqCompare;
  f->lhs = std::move(index);
  f->op = op;
  f->bit = bit;
  return f;
}

FormulaPtr Formula::negation(FormulaPtr inner) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Not;
  f->left = std::move(inner);
  return f;
}

FormulaPtr Formula::binary(Kind kind, FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->left = std::move(l);
  f->right = std::move(r);
  return f;
}

FormulaPtr Formula::quantifier(Kind kind, std::string var, FormulaPtr body) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->var = std::move(var);
  f->left = std::move(body);
  return f;
}

FormulaPtr Formula::call(std::string name, std::vector<TermPtr> args) {
  auto f = std::make_shared<Formula>();
  f->kind = Kind::Call;
  f->name = std::move(name);
  f->args = std::move(args);
  return f;
}

std::string to_string(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Variable: return t.name;
    case Term::Kind::Constant: return std::to_string(t.value);
    case Term::Kind::Sum: return to_string(*t.lhs) + "+" + to_string(*t.rhs);
  }
  return "?";
}

std::string to_string(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Compare:
      return "(" + to_string(*f.lhs) + " " + relop_text(f.op) + " " + to_string(*f.rhs) + ")";
    case K::SeqCompare:
      return "(T[" + to_string(*f.lhs) + "] " + relop_text(f.op) + " " +
             (f.bit ? std::to_string(*f.bit) : "T[" + to_string(*f.rhs) + "]") + ")";
    case K::Not: return "~" + to_string(*f.left);
    case K::And: return "(" + to_string(*f.left) + " & " + to_string(*f.right) + ")";
    case K::Or: return "(" + to_string(*f.left) + " | " + to_string(*f.right) + ")";
    case K::Implies: return "(" + to_string(*f.left) + " => " + to_string(*f.right) + ")";
    case K::Iff: return "(" + to_string(*f.left) + " <=> " + to_string(*f.right) + ")";
    case K::Forall: return "(A " + f.var + " " + to_string(*f.left) + ")";
    case K::Exists: return "(E " + f.var + " " + to_string(*f.left) + ")";
    case K::Call: {
      std::string s = "$" + f.name + "(";
      for (std::size_t i = 0; i < f.args.size(); ++i) s += (i ? "," : "") + to_string(*f.args[i]);
      return s + ")";
    }
  }
  return "?";
}

void collect_variables(const Term& t, std::set<std::string>& out) {
  switch (t.kind) {
    case Term::Kind::Variable: out.insert(t.name); break;
    case Term::Kind::Constant: break;
    case Term::Kind::Sum:
      collect_variables(*t.lhs, out);
      collect_variables(*t.rhs, out);
      break;
  }
}

std::set<std::string> free_variables(const Formula& f) {
  using K = Formula::Kind;
  std::set<std::string> out;
  switch (f.kind) {
    case K::Compare:
    case K::SeqCompare:
      collect_variables(*f.lhs, out);
      if (f.rhs) collect_variables(*f.rhs, out);
      break;
    case K::Not: out = free_variables(*f.left); break;
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff: {
      out = free_variables(*f.left);
      auto r = free_variables(*f.right);
      out.insert(r.begin(), r.end());
      break;
    }
    case K::Forall:
    case K::Exists:
      out = free_variables(*f.left);
      out.erase(f.var);
      break;
    case K::Call:
      for (const auto& a : f.args) collect_variables(*a, out);
      break;
  }
  return out;
}

namespace {

TermPtr rename_term(const TermPtr& t, const std::string& from, const std::string& to) {
  switch (t->kind) {
    case Term::Kind::Variable: return t->name == from ? Term::variable(to) : t;
    case Term::Kind::Constant: return t;
    case Term::Kind::Sum: return Term::sum(rename_term(t->lhs, from, to), rename_term(t->rhs, from, to));
  }
  return t;
}

}  // namespace

FormulaPtr rename_free(const FormulaPtr& f, const std::string& from, const std::string& to) {
  using K = Formula::Kind;
  auto copy = std::make_shared<Formula>(*f);
  switch (f->kind) {
    case K::Compare:
    case K::SeqCompare:
      copy->lhs = rename_term(f->lhs, from, to);
      if (f->rhs) copy->rhs = rename_term(f->rhs, from, to);
      break;
    case K::Not: copy->left = rename_free(f->left, from, to); break;
    case K::And:
    case K::Or:
    case K::Implies:
    case K::Iff:
      copy->left = rename_free(f->left, from, to);
      copy->right = rename_free(f->right, from, to);
      break;
    case K::Forall:
    case K::Exists:
      if (f->var != from) copy->left = rename_free(f->left, from, to);
      break;
    case K::Call:
      for (auto& a : copy->args) a = rename_term(a, from, to);
      break;
  }
  return copy;
}

}  // namespace tmlogic::logic
