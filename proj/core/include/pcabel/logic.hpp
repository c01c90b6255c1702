#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pcabel/automaton.hpp"
#include "pcabel/dfao.hpp"

namespace pcabel {

// Linear term over naturals: variables, constants, sums and constant
// multiples. There is no subtraction node.
class Term {
 public:
  enum class Kind { kVariable, kConstant, kSum, kScale };

  static Term variable(std::string name);
  static Term constant(Value v);
  friend Term operator+(const Term& a, const Term& b);
  friend Term operator*(Value c, const Term& t);

  Kind kind() const;
  const std::string& name() const;  // kVariable
  Value value() const;              // kConstant, kScale factor
  const Term& lhs() const;          // kSum, kScale operand
  const Term& rhs() const;          // kSum

  struct Linear {
    std::map<std::string, std::int64_t> coeffs;
    std::int64_t constant = 0;
  };
  Linear linear() const;
  std::optional<std::string> as_variable() const;
  void collect_variables(std::set<std::string>& out) const;
  std::string to_string() const;

  struct Node;  // opaque

 private:
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

inline Term var(std::string name) { return Term::variable(std::move(name)); }
inline Term cst(Value v) { return Term::constant(v); }
inline Term operator+(const Term& a, Value c) { return a + Term::constant(c); }

class Formula {
 public:
  enum class Kind { kTrue, kFalse, kEq, kLt, kSeq, kSeqEq, kRel, kNot, kAnd, kOr, kImplies, kIff, kExists, kForall };

  static Formula truth(bool value);
  static Formula eq(Term a, Term b);
  static Formula lt(Term a, Term b);
  static Formula le(Term a, Term b);  // a < b+1
  static Formula seq(std::string sequence, Term index, std::int64_t value);
  // X[i] = Y[j]
  static Formula seq_eq(std::string x, Term i, std::string y, Term j);
  static Formula rel(std::string relation, std::vector<Term> args);
  static Formula negate(Formula f);
  static Formula conj(std::vector<Formula> parts);
  static Formula disj(std::vector<Formula> parts);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula exists(std::vector<std::string> vars, Formula body);
  static Formula forall(std::vector<std::string> vars, Formula body);

  Kind kind() const;
  const std::vector<Term>& terms() const;         // atoms: [a, b] or relation args, or [index]
  const std::string& name() const;                // sequence / relation name
  const std::string& other_name() const;          // kSeqEq right-hand sequence
  std::int64_t value() const;                     // kSeq
  const std::vector<Formula>& children() const;   // connectives, quantifier body
  const std::vector<std::string>& bound() const;  // quantifiers

  std::set<std::string> free_variables() const;
  std::string to_string() const;

  struct Node;  // opaque

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula nary(Kind kind, std::vector<Formula> parts, bool unit);
  std::shared_ptr<const Node> node_;
};

inline Formula operator&&(Formula a, Formula b) { return Formula::conj({std::move(a), std::move(b)}); }
inline Formula operator||(Formula a, Formula b) { return Formula::disj({std::move(a), std::move(b)}); }
inline Formula operator!(Formula a) { return Formula::negate(std::move(a)); }

// Named sequences (DFAOs) and relations (automata whose track order is the
// argument order), all in one base.
class Environment {
 public:
  explicit Environment(int base) : base_(base) {}

  int base() const noexcept { return base_; }
  Environment& add_sequence(const std::string& name, Dfao d);
  Environment& add_relation(const std::string& name, Automaton a);
  bool has_sequence(const std::string& name) const { return sequences_.count(name) > 0; }
  bool has_relation(const std::string& name) const { return relations_.count(name) > 0; }
  const Dfao& sequence(const std::string& name) const;
  const Automaton& relation(const std::string& name) const;

 private:
  int base_;
  std::map<std::string, Dfao> sequences_;
  std::map<std::string, Automaton> relations_;
};

// Automaton over exactly the tracks `free_order` accepting the satisfying
// assignments of `phi`.
Automaton compile(const Formula& phi, const Environment& env, const std::vector<std::string>& free_order);
bool decide(const Formula& sentence, const Environment& env);
// Every assignment of the other tracks has exactly one `output` value.
bool is_functional(const Automaton& relation, const std::string& output);
// Lexicographically least assignment (in `order`, default: sorted free
// variables) with all components <= bound.
std::optional<std::vector<Value>> witness(const Formula& phi, const Environment& env, Value bound,
                                          std::vector<std::string> order = {});

struct ParsedFormula {
  Formula formula;
  std::optional<int> base;  // from a leading "?msd_k"
};

// Walnut-style text syntax; the grammar is in README.md.
ParsedFormula parse_formula(std::string_view text);

}  // namespace pcabel
