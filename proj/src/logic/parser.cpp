#include "logic/parser.hpp"

#include <cctype>
#include <charconv>

#include "core/error.hpp"

namespace tmlogic::logic {

const char* command_kind_name(Command::Kind kind) noexcept {
  switch (kind) {
    case Command::Kind::Def: return "def";
    case Command::Kind::Eval: return "eval";
    case Command::Kind::EvalCount: return "eval-count";
  }
  return "?";
}

namespace {

enum class Tok {
  Ident, Number, Forall, Exists, Seq, Dollar, LParen, RParen, LBracket, RBracket, Comma,
  Plus, Not, And, Or, Implies, Iff, Eq, Ne, Lt, Le, Gt, Ge, End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

// Maps an offset inside `text` to a script position.
struct Locator {
  std::string_view text;
  int base_line = 1;
  int base_col = 1;

  std::string where(std::size_t offset) const {
    int line = base_line, col = base_col;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
  }

  [[noreturn]] void error(std::size_t offset, const std::string& msg) const {
    fail(ErrorCode::Parse, where(offset) + ": " + msg);
  }
};

std::vector<Token> tokenize(const Locator& loc) {
  const auto text = loc.text;
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::islower(static_cast<unsigned char>(c)) || c == '_') {
      while (i < text.size() &&
             (std::islower(static_cast<unsigned char>(text[i])) ||
              std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
        ++i;
      }
      out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({Tok::Number, std::string(text.substr(start, i - start)), start});
      continue;
    }
    if (c == '<' || c == '>' || c == '=' || c == '!') {
      while (i < text.size() && (text[i] == '<' || text[i] == '>' || text[i] == '=' || text[i] == '!')) ++i;
      const std::string op(text.substr(start, i - start));
      Tok kind;
      if (op == "<=>") kind = Tok::Iff;
      else if (op == "=>") kind = Tok::Implies;
      else if (op == "=") kind = Tok::Eq;
      else if (op == "!=") kind = Tok::Ne;
      else if (op == "<") kind = Tok::Lt;
      else if (op == "<=") kind = Tok::Le;
      else if (op == ">") kind = Tok::Gt;
      else if (op == ">=") kind = Tok::Ge;
      else loc.error(start, "unknown relational operator '" + op + "'");
      out.push_back({kind, op, start});
      continue;
    }
    Tok kind;
    switch (c) {
      case 'A': kind = Tok::Forall; break;
      case 'E': kind = Tok::Exists; break;
      case 'T': kind = Tok::Seq; break;
      case '$': kind = Tok::Dollar; break;
      case '(': kind = Tok::LParen; break;
      case ')': kind = Tok::RParen; break;
      case '[': kind = Tok::LBracket; break;
      case ']': kind = Tok::RBracket; break;
      case ',': kind = Tok::Comma; break;
      case '+': kind = Tok::Plus; break;
      case '~': kind = Tok::Not; break;
      case '&': kind = Tok::And; break;
      case '|': kind = Tok::Or; break;
      default: loc.error(start, std::string("unexpected character '") + c + "'");
    }
    ++i;
    out.push_back({kind, std::string(1, c), start});
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

bool is_relop(Tok t) {
  return t == Tok::Eq || t == Tok::Ne || t == Tok::Lt || t == Tok::Le || t == Tok::Gt || t == Tok::Ge;
}

RelOp to_relop(Tok t) {
  switch (t) {
    case Tok::Eq: return RelOp::Eq;
    case Tok::Ne: return RelOp::Ne;
    case Tok::Lt: return RelOp::Lt;
    case Tok::Le: return RelOp::Le;
    case Tok::Gt: return RelOp::Gt;
    default: return RelOp::Ge;
  }
}

class FormulaParser {
 public:
  explicit FormulaParser(Locator loc) : loc_(loc), toks_(tokenize(loc)) {}

  FormulaPtr parse() {
    auto f = formula();
    if (peek().kind != Tok::End) error("unexpected '" + peek().text + "' after formula");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) {
      error(std::string("expected ") + what + ", found " +
            (peek().kind == Tok::End ? "end of formula" : "'" + peek().text + "'"));
    }
  }
  [[noreturn]] void error(const std::string& msg) const { loc_.error(peek().offset, msg); }

  FormulaPtr formula() {
    auto lhs = implies();
    while (accept(Tok::Iff)) lhs = Formula::binary(Formula::Kind::Iff, lhs, implies());
    return lhs;
  }

  FormulaPtr implies() {
    auto lhs = disjunction();
    if (accept(Tok::Implies)) return Formula::binary(Formula::Kind::Implies, lhs, implies());
    return lhs;
  }

  FormulaPtr disjunction() {
    auto lhs = conjunction();
    while (accept(Tok::Or)) lhs = Formula::binary(Formula::Kind::Or, lhs, conjunction());
    return lhs;
  }

  FormulaPtr conjunction() {
    auto lhs = unary();
    while (accept(Tok::And)) lhs = Formula::binary(Formula::Kind::And, lhs, unary());
    return lhs;
  }

  FormulaPtr unary() {
    if (accept(Tok::Not)) return Formula::negation(unary());
    if (peek().kind == Tok::Forall || peek().kind == Tok::Exists) {
      const auto kind = take().kind == Tok::Forall ? Formula::Kind::Forall : Formula::Kind::Exists;
      std::vector<std::string> vars;
      do {
        if (peek().kind != Tok::Ident) error("expected a variable after quantifier");
        vars.push_back(take().text);
      } while (accept(Tok::Comma));
      auto body = formula();
      for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = Formula::quantifier(kind, *it, body);
      return body;
    }
    return primary();
  }

  FormulaPtr primary() {
    if (peek().kind == Tok::LParen) {
      // "(i+1) < n" versus "(formula)"
      const std::size_t save = pos_;
      try {
        return comparison();
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Parse) throw;
        pos_ = save;
      }
      expect(Tok::LParen, "'('");
      auto inner = formula();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (accept(Tok::Dollar)) {
      if (peek().kind != Tok::Ident) error("expected a predicate name after '$'");
      std::string name = take().text;
      expect(Tok::LParen, "'(' after predicate name");
      std::vector<TermPtr> args;
      if (peek().kind != Tok::RParen) {
        do {
          args.push_back(term());
        } while (accept(Tok::Comma));
      }
      expect(Tok::RParen, "')' closing the argument list");
      return Formula::call(std::move(name), std::move(args));
    }
    if (peek().kind == Tok::Seq) return sequence_comparison();
    return comparison();
  }

  TermPtr sequence_index() {
    expect(Tok::Seq, "'T'");
    expect(Tok::LBracket, "'[' after T");
    auto index = term();
    expect(Tok::RBracket, "']'");
    return index;
  }

  FormulaPtr sequence_comparison() {
    auto index = sequence_index();
    if (!is_relop(peek().kind)) error("expected '=' or '!=' after T[...]");
    const Token& op_tok = take();
    if (op_tok.kind != Tok::Eq && op_tok.kind != Tok::Ne) {
      loc_.error(op_tok.offset, "sequence values only support '=' and '!=', not '" + op_tok.text + "'");
    }
    const RelOp op = to_relop(op_tok.kind);
    if (peek().kind == Tok::Seq) return Formula::seq_compare(index, op, sequence_index());
    if (peek().kind == Tok::Number && (peek().text == "0" || peek().text == "1")) {
      return Formula::seq_compare_bit(index, op, take().text == "1" ? 1 : 0);
    }
    error("expected T[...] or a binary digit");
  }

  FormulaPtr comparison() {
    auto lhs = term();
    if (!is_relop(peek().kind)) {
      error(peek().kind == Tok::End ? "expected a relational operator, found end of formula"
                                    : "expected a relational operator, found '" + peek().text + "'");
    }
    const RelOp op = to_relop(take().kind);
    return Formula::compare(lhs, op, term());
  }

  TermPtr term() {
    std::vector<TermPtr> parts{atom()};
    while (accept(Tok::Plus)) parts.push_back(atom());
    TermPtr t = parts.back();
    for (std::size_t i = parts.size() - 1; i-- > 0;) t = Term::sum(parts[i], t);
    return t;
  }

  TermPtr atom() {
    if (peek().kind == Tok::Ident) return Term::variable(take().text);
    if (peek().kind == Tok::Number) {
      const Token& tok = take();
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), v);
      if (ec != std::errc()) loc_.error(tok.offset, "constant '" + tok.text + "' out of range");
      return Term::constant(v);
    }
    if (accept(Tok::LParen)) {
      auto t = term();
      expect(Tok::RParen, "')'");
      return t;
    }
    error(peek().kind == Tok::End ? "expected a term, found end of formula"
                                  : "expected a term, found '" + peek().text + "'");
  }

  Locator loc_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

FormulaPtr parse_formula_at(std::string_view text, int line, int col) {
  return FormulaParser(Locator{text, line, col}).parse();
}

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return parse_formula_at(text, 1, 1); }

std::vector<Command> parse_script(std::string_view src) {
  std::vector<Command> out;
  std::size_t i = 0;
  int line = 1, col = 1;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto error = [&](const std::string& msg) {
    fail(ErrorCode::Parse, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
  };
  auto skip_blank = [&] {
    while (i < src.size() && (src[i] == ' ' || src[i] == '\t' || src[i] == '\r' || src[i] == '\n')) advance();
  };
  auto word = [&]() -> std::string {
    skip_blank();
    std::string w;
    while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
      w.push_back(src[i]);
      advance();
    }
    return w;
  };

  while (true) {
    skip_blank();
    if (i >= src.size()) break;
    if (src[i] == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    Command cmd;
    cmd.line = line;
    const std::string keyword = word();
    if (keyword != "def" && keyword != "eval") error("expected 'def' or 'eval', found '" + keyword + "'");
    cmd.name = word();
    if (cmd.name.empty()) error("expected a command name");
    cmd.kind = keyword == "def" ? Command::Kind::Def : Command::Kind::Eval;
    skip_blank();
    if (i < src.size() && src[i] != '"') {
      if (cmd.kind == Command::Kind::Def) error("expected '\"' opening the formula");
      cmd.parameter = word();
      if (cmd.parameter.empty()) error("expected a counting variable or '\"'");
      cmd.kind = Command::Kind::EvalCount;
      skip_blank();
    }
    if (i >= src.size() || src[i] != '"') error("expected '\"' opening the formula");
    advance();
    const int f_line = line, f_col = col;
    const std::size_t f_start = i;
    while (i < src.size() && src[i] != '"') advance();
    if (i >= src.size()) error("unterminated formula string");
    cmd.source = std::string(src.substr(f_start, i - f_start));
    advance();
    skip_blank();
    if (i < src.size() && (src[i] == ':' || src[i] == ';')) advance();
    cmd.formula = parse_formula_at(cmd.source, f_line, f_col);
    out.push_back(std::move(cmd));
  }
  return out;
}

}  // namespace tmlogic::logic
