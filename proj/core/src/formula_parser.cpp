#include <cctype>
#include <limits>
#include <optional>

#include "pcabel/error.hpp"
#include "pcabel/logic.hpp"

namespace pcabel {

namespace {

struct ParseFailure {
  std::size_t pos;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  ParsedFormula parse() {
    ParsedFormula out{Formula::truth(true), std::nullopt};
    skip();
    if (peek() == '?') {
      ++pos_;
      expect_word("msd_");
      out.base = static_cast<int>(number());
      if (*out.base < 2) fail("base must be at least 2");
    }
    out.formula = formula();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return out;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseFailure{pos_, message}; }

 private:
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0'; }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(std::string_view tok) {
    skip();
    if (s_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  void expect_word(std::string_view w) {
    if (s_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
    pos_ += w.size();
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
  static bool lower_start(char c) { return std::islower(static_cast<unsigned char>(c)) || c == '_'; }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    if (start == pos_) fail("expected identifier");
    return std::string(s_.substr(start, pos_ - start));
  }

  std::string variable() {
    skip();
    if (!lower_start(peek())) fail("expected variable name");
    auto v = ident();
    if (v == "true" || v == "false") fail("'" + v + "' is reserved");
    return v;
  }

  Value number() {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected number");
    Value v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      auto d = static_cast<Value>(s_[pos_] - '0');
      if (v > (std::numeric_limits<Value>::max() - d) / 10) fail("number too large");
      v = v * 10 + d;
      ++pos_;
    }
    return v;
  }

  // Is the input at a quantifier: E or A followed by a variable name?
  bool at_quantifier() {
    skip();
    char c = peek();
    if (c != 'E' && c != 'A') return false;
    std::size_t i = pos_ + 1;
    while (i < s_.size() && (s_[i] == ' ' || s_[i] == '\t')) ++i;
    if (i == pos_ + 1 && i < s_.size() && ident_char(s_[i]) && !lower_start(s_[i])) return false;
    return i < s_.size() && lower_start(s_[i]);
  }

  Formula formula() { return iff(); }

  Formula iff() {
    Formula f = implication();
    while (accept("<=>")) f = Formula::iff(f, implication());
    return f;
  }

  Formula implication() {
    Formula f = disjunction();
    if (accept("=>")) return Formula::implies(f, implication());
    return f;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept("|")) parts.push_back(conjunction());
    return Formula::disj(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{unary()};
    while (accept("&")) parts.push_back(unary());
    return Formula::conj(std::move(parts));
  }

  Formula unary() {
    skip();
    if (accept("~")) return Formula::negate(unary());
    if (at_quantifier()) {
      bool universal = peek() == 'A';
      ++pos_;
      std::vector<std::string> vars{variable()};
      while (accept(",")) vars.push_back(variable());
      Formula body = formula();
      return universal ? Formula::forall(std::move(vars), std::move(body))
                       : Formula::exists(std::move(vars), std::move(body));
    }
    return primary();
  }

  Formula primary() {
    skip();
    if (peek() == '(') {
      std::size_t save = pos_;
      auto saved_aux = aux_.size();
      try {
        ++pos_;
        Formula f = formula();
        expect(")");
        return f;
      } catch (const ParseFailure& e) {
        if (!furthest_ || e.pos > furthest_->pos) furthest_ = e;
        pos_ = save;  // maybe a parenthesized term
        aux_.erase(aux_.begin() + static_cast<std::ptrdiff_t>(saved_aux), aux_.end());
      }
    }
    if (keyword("true")) return Formula::truth(true);
    if (keyword("false")) return Formula::truth(false);
    auto mark = aux_.size();
    Formula atom = peek() == '$' ? relation_call() : comparison();
    return wrap_aux(std::move(atom), mark);
  }

  bool keyword(std::string_view w) {
    skip();
    if (s_.substr(pos_, w.size()) == w && !ident_char(peek(w.size()))) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  Formula relation_call() {
    expect("$");
    std::string name = ident();
    expect("(");
    std::vector<Term> args;
    if (!accept(")")) {
      args.push_back(term());
      while (accept(",")) args.push_back(term());
      expect(")");
    }
    return Formula::rel(std::move(name), std::move(args));
  }

  struct Operand {
    enum { kTerm, kSeq, kLetter } kind;
    Term term = Term::constant(0);
    std::string seq;
    std::int64_t letter = 0;
  };

  Operand operand() {
    skip();
    if (accept("@")) {
      bool neg = accept("-");
      auto v = number();
      if (v > static_cast<Value>(std::numeric_limits<std::int64_t>::max())) fail("letter value too large");
      auto x = static_cast<std::int64_t>(v);
      return {Operand::kLetter, Term::constant(0), {}, neg ? -x : x};
    }
    if (std::isupper(static_cast<unsigned char>(peek()))) {
      std::string name = ident();
      expect("[");
      Term index = term();
      expect("]");
      return {Operand::kSeq, index, name, 0};
    }
    return {Operand::kTerm, term(), {}, 0};
  }

  Formula comparison() {
    Operand lhs = operand();
    skip();
    std::string op;
    for (std::string_view cand : {"!=", "<=", ">=", "=", "<", ">"}) {
      if (s_.substr(pos_, cand.size()) != cand) continue;
      if ((cand == "<=" && peek(2) == '>') || (cand == "=" && peek(1) == '>')) continue;
      op = cand;
      pos_ += cand.size();
      break;
    }
    if (op.empty()) fail("expected comparison operator");
    Operand rhs = operand();
    bool seq_side = lhs.kind != Operand::kTerm || rhs.kind != Operand::kTerm;
    if (seq_side) {
      if (op != "=" && op != "!=") fail("sequence values only support = and !=");
      Formula f = Formula::truth(true);
      if (lhs.kind == Operand::kSeq && rhs.kind == Operand::kLetter) {
        f = Formula::seq(lhs.seq, lhs.term, rhs.letter);
      } else if (lhs.kind == Operand::kLetter && rhs.kind == Operand::kSeq) {
        f = Formula::seq(rhs.seq, rhs.term, lhs.letter);
      } else if (lhs.kind == Operand::kSeq && rhs.kind == Operand::kSeq) {
        f = Formula::seq_eq(lhs.seq, lhs.term, rhs.seq, rhs.term);
      } else if (lhs.kind == Operand::kLetter && rhs.kind == Operand::kLetter) {
        f = Formula::truth(lhs.letter == rhs.letter);
      } else {
        fail("cannot compare a sequence value with an arithmetic term");
      }
      return op == "=" ? f : Formula::negate(f);
    }
    if (op == "=") return Formula::eq(lhs.term, rhs.term);
    if (op == "!=") return Formula::negate(Formula::eq(lhs.term, rhs.term));
    if (op == "<") return Formula::lt(lhs.term, rhs.term);
    if (op == "<=") return Formula::le(lhs.term, rhs.term);
    if (op == ">") return Formula::lt(rhs.term, lhs.term);
    return Formula::le(rhs.term, lhs.term);
  }

  // a - b becomes a fresh w with w + b = a, quantified at the enclosing atom.
  Term term() {
    Term acc = product();
    for (;;) {
      if (accept("+")) {
        acc = acc + product();
      } else if (accept("-")) {
        Term sub = product();
        std::string w = "_d" + std::to_string(aux_counter_++);
        aux_.push_back({w, Formula::eq(Term::variable(w) + sub, acc)});
        acc = Term::variable(w);
      } else {
        return acc;
      }
    }
  }

  Term product() {
    skip();
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Value c = number();
      if (accept("*")) return c * factor();
      return Term::constant(c);
    }
    Term f = factor();
    if (accept("*")) return number() * f;
    return f;
  }

  Term factor() {
    skip();
    if (accept("(")) {
      Term t = term();
      expect(")");
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(peek()))) return Term::constant(number());
    return Term::variable(variable());
  }

  Formula wrap_aux(Formula atom, std::size_t mark) {
    if (aux_.size() == mark) return atom;
    std::vector<std::string> vars;
    std::vector<Formula> parts;
    for (std::size_t i = mark; i < aux_.size(); ++i) {
      vars.push_back(aux_[i].first);
      parts.push_back(aux_[i].second);
    }
    aux_.erase(aux_.begin() + static_cast<std::ptrdiff_t>(mark), aux_.end());
    parts.push_back(std::move(atom));
    return Formula::exists(std::move(vars), Formula::conj(std::move(parts)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::vector<std::pair<std::string, Formula>> aux_;
  int aux_counter_ = 0;

 public:
  std::optional<ParseFailure> furthest_;
};

}  // namespace

ParsedFormula parse_formula(std::string_view text) {
  Parser p(text);
  try {
    return p.parse();
  } catch (ParseFailure e) {
    if (p.furthest_ && p.furthest_->pos > e.pos) e = *p.furthest_;
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < e.pos && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("formula " + std::to_string(line) + ":" + std::to_string(col) + ": " + e.message);
  }
}

}  // namespace pcabel
