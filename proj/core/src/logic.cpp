#include "pcabel/logic.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pcabel/error.hpp"

namespace pcabel {

// ---------------------------------------------------------------- terms

struct Term::Node {
  Kind kind;
  std::string name;
  Value value = 0;
  std::vector<Term> kids;
};

Term Term::variable(std::string name) {
  if (name.empty()) throw InputError("empty variable name");
  return Term(std::make_shared<const Node>(Node{Kind::kVariable, std::move(name), 0, {}}));
}

Term Term::constant(Value v) { return Term(std::make_shared<const Node>(Node{Kind::kConstant, {}, v, {}})); }

Term operator+(const Term& a, const Term& b) {
  return Term(std::make_shared<const Term::Node>(Term::Node{Term::Kind::kSum, {}, 0, {a, b}}));
}

Term operator*(Value c, const Term& t) {
  return Term(std::make_shared<const Term::Node>(Term::Node{Term::Kind::kScale, {}, c, {t}}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
Value Term::value() const { return node_->value; }
const Term& Term::lhs() const { return node_->kids.at(0); }
const Term& Term::rhs() const { return node_->kids.at(1); }

Term::Linear Term::linear() const {
  Linear out;
  switch (kind()) {
    case Kind::kVariable:
      out.coeffs[name()] = 1;
      break;
    case Kind::kConstant:
      out.constant = static_cast<std::int64_t>(value());
      break;
    case Kind::kSum: {
      out = lhs().linear();
      auto r = rhs().linear();
      for (const auto& [v, c] : r.coeffs) out.coeffs[v] += c;
      out.constant += r.constant;
      break;
    }
    case Kind::kScale: {
      out = lhs().linear();
      auto c = static_cast<std::int64_t>(value());
      for (auto& [v, x] : out.coeffs) x *= c;
      out.constant *= c;
      break;
    }
  }
  for (auto it = out.coeffs.begin(); it != out.coeffs.end();)
    it = it->second == 0 ? out.coeffs.erase(it) : std::next(it);
  return out;
}

std::optional<std::string> Term::as_variable() const {
  if (kind() == Kind::kVariable) return name();
  return std::nullopt;
}

void Term::collect_variables(std::set<std::string>& out) const {
  if (kind() == Kind::kVariable) out.insert(name());
  for (const auto& k : node_->kids) k.collect_variables(out);
}

std::string Term::to_string() const {
  switch (kind()) {
    case Kind::kVariable:
      return name();
    case Kind::kConstant:
      return std::to_string(value());
    case Kind::kSum:
      return lhs().to_string() + "+" + rhs().to_string();
    case Kind::kScale: {
      auto inner = lhs().to_string();
      if (lhs().kind() == Kind::kSum) inner = "(" + inner + ")";
      return std::to_string(value()) + "*" + inner;
    }
  }
  return {};
}

// ---------------------------------------------------------------- formulas

struct Formula::Node {
  Kind kind;
  std::vector<Term> terms;
  std::string name;
  std::int64_t value = 0;
  std::vector<Formula> kids;
  std::vector<std::string> bound;
  std::string name2;
};

namespace {
template <class... A>
std::shared_ptr<const Formula::Node> mk(A&&... a) {
  return std::make_shared<const Formula::Node>(Formula::Node{std::forward<A>(a)...});
}
}  // namespace

Formula Formula::truth(bool value) { return Formula(mk(value ? Kind::kTrue : Kind::kFalse)); }
Formula Formula::eq(Term a, Term b) { return Formula(mk(Kind::kEq, std::vector<Term>{std::move(a), std::move(b)})); }
Formula Formula::lt(Term a, Term b) { return Formula(mk(Kind::kLt, std::vector<Term>{std::move(a), std::move(b)})); }
Formula Formula::le(Term a, Term b) { return lt(std::move(a), std::move(b) + 1); }

Formula Formula::seq(std::string sequence, Term index, std::int64_t value) {
  return Formula(mk(Kind::kSeq, std::vector<Term>{std::move(index)}, std::move(sequence), value));
}

Formula Formula::seq_eq(std::string x, Term i, std::string y, Term j) {
  return Formula(mk(Kind::kSeqEq, std::vector<Term>{std::move(i), std::move(j)}, std::move(x), std::int64_t{0},
                    std::vector<Formula>{}, std::vector<std::string>{}, std::move(y)));
}

Formula Formula::rel(std::string relation, std::vector<Term> args) {
  return Formula(mk(Kind::kRel, std::move(args), std::move(relation)));
}

Formula Formula::negate(Formula f) {
  return Formula(mk(Kind::kNot, std::vector<Term>{}, std::string{}, std::int64_t{0}, std::vector<Formula>{std::move(f)}));
}

Formula Formula::conj(std::vector<Formula> parts) { return nary(Kind::kAnd, std::move(parts), true); }
Formula Formula::disj(std::vector<Formula> parts) { return nary(Kind::kOr, std::move(parts), false); }

Formula Formula::implies(Formula a, Formula b) {
  return Formula(mk(Kind::kImplies, std::vector<Term>{}, std::string{}, std::int64_t{0},
                    std::vector<Formula>{std::move(a), std::move(b)}));
}

Formula Formula::iff(Formula a, Formula b) {
  return Formula(mk(Kind::kIff, std::vector<Term>{}, std::string{}, std::int64_t{0},
                    std::vector<Formula>{std::move(a), std::move(b)}));
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) return body;
  return Formula(mk(Kind::kExists, std::vector<Term>{}, std::string{}, std::int64_t{0},
                    std::vector<Formula>{std::move(body)}, std::move(vars)));
}

Formula Formula::forall(std::vector<std::string> vars, Formula body) {
  if (vars.empty()) return body;
  return Formula(mk(Kind::kForall, std::vector<Term>{}, std::string{}, std::int64_t{0},
                    std::vector<Formula>{std::move(body)}, std::move(vars)));
}

Formula Formula::nary(Kind kind, std::vector<Formula> parts, bool unit) {
  std::vector<Formula> flat;
  for (auto& p : parts) {
    if (p.kind() == kind) {
      for (const auto& c : p.children()) flat.push_back(c);
    } else if ((unit && p.kind() == Kind::kTrue) || (!unit && p.kind() == Kind::kFalse)) {
      continue;
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return truth(unit);
  if (flat.size() == 1) return flat.front();
  return Formula(mk(kind, std::vector<Term>{}, std::string{}, std::int64_t{0}, std::move(flat)));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const std::string& Formula::name() const { return node_->name; }
const std::string& Formula::other_name() const { return node_->name2; }
std::int64_t Formula::value() const { return node_->value; }
const std::vector<Formula>& Formula::children() const { return node_->kids; }
const std::vector<std::string>& Formula::bound() const { return node_->bound; }

std::set<std::string> Formula::free_variables() const {
  std::set<std::string> out;
  for (const auto& t : terms()) t.collect_variables(out);
  for (const auto& k : children()) {
    auto sub = k.free_variables();
    out.insert(sub.begin(), sub.end());
  }
  for (const auto& b : bound()) out.erase(b);
  return out;
}

std::string Formula::to_string() const {
  auto join = [&](const char* op) {
    std::string s = "(";
    for (std::size_t i = 0; i < children().size(); ++i) s += (i ? op : "") + children()[i].to_string();
    return s + ")";
  };
  auto vars = [&] {
    std::string s;
    for (std::size_t i = 0; i < bound().size(); ++i) s += (i ? "," : "") + bound()[i];
    return s;
  };
  switch (kind()) {
    case Kind::kTrue:
      return "true";
    case Kind::kFalse:
      return "false";
    case Kind::kEq:
      return terms()[0].to_string() + "=" + terms()[1].to_string();
    case Kind::kLt:
      return terms()[0].to_string() + "<" + terms()[1].to_string();
    case Kind::kSeq:
      return name() + "[" + terms()[0].to_string() + "]=@" + std::to_string(value());
    case Kind::kSeqEq:
      return name() + "[" + terms()[0].to_string() + "]=" + other_name() + "[" + terms()[1].to_string() + "]";
    case Kind::kRel: {
      std::string s = "$" + name() + "(";
      for (std::size_t i = 0; i < terms().size(); ++i) s += (i ? "," : "") + terms()[i].to_string();
      return s + ")";
    }
    case Kind::kNot:
      return "~(" + children()[0].to_string() + ")";
    case Kind::kAnd:
      return join(" & ");
    case Kind::kOr:
      return join(" | ");
    case Kind::kImplies:
      return join(" => ");
    case Kind::kIff:
      return join(" <=> ");
    case Kind::kExists:
      return "(E" + vars() + " " + children()[0].to_string() + ")";
    case Kind::kForall:
      return "(A" + vars() + " " + children()[0].to_string() + ")";
  }
  return {};
}

// ---------------------------------------------------------------- environment

Environment& Environment::add_sequence(const std::string& name, Dfao d) {
  if (d.base() != base_) throw InputError("sequence '" + name + "' has base " + std::to_string(d.base()));
  sequences_[name] = std::move(d);
  return *this;
}

Environment& Environment::add_relation(const std::string& name, Automaton a) {
  if (a.base() != base_) throw InputError("relation '" + name + "' has base " + std::to_string(a.base()));
  relations_[name] = std::move(a);
  return *this;
}

const Dfao& Environment::sequence(const std::string& name) const {
  auto it = sequences_.find(name);
  if (it == sequences_.end()) throw InputError("unknown sequence '" + name + "'");
  return it->second;
}

const Automaton& Environment::relation(const std::string& name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw InputError("unknown relation '" + name + "'");
  return it->second;
}

// ---------------------------------------------------------------- compiler

namespace {

using Kind = Formula::Kind;

// One-level negation push; returns nullopt when the negation must stay.
std::optional<Formula> push_not(const Formula& f) {
  const auto& c = f.children();
  switch (f.kind()) {
    case Kind::kTrue:
      return Formula::truth(false);
    case Kind::kFalse:
      return Formula::truth(true);
    case Kind::kNot:
      return c[0];
    case Kind::kAnd: {
      std::vector<Formula> parts;
      for (const auto& x : c) parts.push_back(Formula::negate(x));
      return Formula::disj(std::move(parts));
    }
    case Kind::kOr: {
      std::vector<Formula> parts;
      for (const auto& x : c) parts.push_back(Formula::negate(x));
      return Formula::conj(std::move(parts));
    }
    case Kind::kImplies:
      return Formula::conj({c[0], Formula::negate(c[1])});
    case Kind::kExists:
      return Formula::forall(f.bound(), Formula::negate(c[0]));
    case Kind::kForall:
      return Formula::exists(f.bound(), Formula::negate(c[0]));
    default:
      return std::nullopt;
  }
}

class Compiler {
 public:
  explicit Compiler(const Environment& env) : env_(env) {}

  Automaton run(const Formula& f) {
    const auto& c = f.children();
    switch (f.kind()) {
      case Kind::kTrue:
        return Automaton::universal(env_.base());
      case Kind::kFalse:
        return Automaton::empty(env_.base());
      case Kind::kEq:
        return linear_atom(f.terms()[0], f.terms()[1], LinearCmp::kEq);
      case Kind::kLt:
        return linear_atom(f.terms()[0], f.terms()[1], LinearCmp::kLt);
      case Kind::kSeq:
        return seq_atom(f);
      case Kind::kSeqEq:
        return seq_eq_atom(f);
      case Kind::kRel:
        return rel_atom(f);
      case Kind::kNot:
        if (auto g = push_not(c[0])) return run(*g);
        return complement(run(c[0]));
      case Kind::kAnd:
        return conjoin(c, {});
      case Kind::kOr: {
        Automaton acc = run(c[0]);
        for (std::size_t i = 1; i < c.size(); ++i) acc = combine(BoolOp::kOr, acc, run(c[i]));
        return acc;
      }
      case Kind::kImplies:
        return combine(BoolOp::kImplies, run(c[0]), run(c[1]));
      case Kind::kIff:
        return combine(BoolOp::kIff, run(c[0]), run(c[1]));
      case Kind::kExists:
        return exists(f.bound(), c[0]);
      case Kind::kForall:
        return complement(exists(f.bound(), Formula::negate(c[0])));
    }
    throw InternalError("unhandled formula node");
  }

 private:
  std::string fresh() { return "#" + std::to_string(counter_++); }

  Automaton exists(const std::vector<std::string>& vars, const Formula& body) {
    std::set<std::string> q(vars.begin(), vars.end());
    if (body.kind() == Kind::kOr) {
      Automaton acc = exists(vars, body.children()[0]);
      for (std::size_t i = 1; i < body.children().size(); ++i)
        acc = combine(BoolOp::kOr, acc, exists(vars, body.children()[i]));
      return acc;
    }
    if (body.kind() == Kind::kNot) {
      if (auto g = push_not(body.children()[0])) return exists(vars, *g);
    }
    if (body.kind() == Kind::kAnd) return conjoin(body.children(), q);
    return project_present(run(body), q);
  }

  static Automaton project_present(const Automaton& a, const std::set<std::string>& q) {
    std::vector<std::string> drop;
    for (const auto& t : a.tracks())
      if (q.count(t)) drop.push_back(t);
    return drop.empty() ? a : project_exists(a, drop);
  }

  Automaton conjoin(const std::vector<Formula>& formulas, const std::set<std::string>& q) {
    std::vector<Automaton> parts;
    for (const auto& f : formulas) {
      parts.push_back(run(f));
      if (is_empty(parts.back())) return Automaton::empty(env_.base());
    }
    return conjoin(std::move(parts), q);
  }

  Automaton conjoin(std::vector<Automaton> parts, const std::set<std::string>& q) {
    auto needed_elsewhere = [&](const std::string& v) {
      for (const auto& p : parts)
        if (p.has_track(v)) return true;
      return false;
    };
    auto settle = [&](Automaton a) {
      std::vector<std::string> drop;
      for (const auto& t : a.tracks())
        if (q.count(t) && !needed_elsewhere(t)) drop.push_back(t);
      return drop.empty() ? a : project_exists(a, drop);
    };
    auto union_size = [](const Automaton& a, const Automaton& b) {
      int n = a.track_count();
      for (const auto& t : b.tracks())
        if (!a.has_track(t)) ++n;
      return n;
    };
    // start from the part with fewest tracks
    auto first = std::min_element(parts.begin(), parts.end(), [](const Automaton& a, const Automaton& b) {
      return std::pair(a.track_count(), a.num_states()) < std::pair(b.track_count(), b.num_states());
    });
    Automaton cur = std::move(*first);
    parts.erase(first);
    cur = settle(std::move(cur));
    while (!parts.empty()) {
      auto best = parts.begin();
      for (auto it = parts.begin(); it != parts.end(); ++it) {
        auto key = std::tuple(union_size(cur, *it), -(cur.track_count() + it->track_count() - union_size(cur, *it)),
                              it->num_states());
        auto bkey = std::tuple(union_size(cur, *best),
                               -(cur.track_count() + best->track_count() - union_size(cur, *best)), best->num_states());
        if (key < bkey) best = it;
      }
      Automaton next = std::move(*best);
      parts.erase(best);
      cur = settle(combine(BoolOp::kAnd, cur, next));
      if (is_empty(cur)) return Automaton::empty(env_.base());
    }
    return cur;
  }

  Automaton linear_atom(const Term& a, const Term& b, LinearCmp cmp) {
    auto la = a.linear();
    auto lb = b.linear();
    for (const auto& [v, c] : lb.coeffs) la.coeffs[v] -= c;
    std::vector<std::string> tracks;
    std::vector<std::int64_t> coeffs;
    for (const auto& [v, c] : la.coeffs)
      if (c != 0) {
        tracks.push_back(v);
        coeffs.push_back(c);
      }
    std::int64_t rhs = lb.constant - la.constant;
    if (tracks.empty()) {
      bool holds = cmp == LinearCmp::kEq ? rhs == 0 : 0 < rhs;
      return holds ? Automaton::universal(env_.base()) : Automaton::empty(env_.base());
    }
    return linear_relation(env_.base(), std::move(tracks), std::move(coeffs), rhs, cmp);
  }

  Automaton seq_atom(const Formula& f) {
    const Dfao& d = env_.sequence(f.name());
    const Term& index = f.terms()[0];
    if (auto v = index.as_variable()) return dfao_equals(d, f.value(), *v);
    auto lin = index.linear();
    if (lin.coeffs.empty()) {
      bool holds = dfao_output(d, static_cast<Value>(lin.constant)) == f.value();
      return holds ? Automaton::universal(env_.base()) : Automaton::empty(env_.base());
    }
    auto w = fresh();
    std::vector<Automaton> parts{linear_atom(Term::variable(w), index, LinearCmp::kEq), dfao_equals(d, f.value(), w)};
    return conjoin(std::move(parts), {w});
  }

  Automaton seq_eq_atom(const Formula& f) {
    const Dfao& x = env_.sequence(f.name());
    const Dfao& y = env_.sequence(f.other_name());
    auto ys = y.output_alphabet();
    std::vector<Formula> cases;
    for (auto v : x.output_alphabet())
      if (std::binary_search(ys.begin(), ys.end(), v))
        cases.push_back(Formula::seq(f.name(), f.terms()[0], v) && Formula::seq(f.other_name(), f.terms()[1], v));
    return run(Formula::disj(std::move(cases)));
  }

  Automaton rel_atom(const Formula& f) {
    const Automaton& r = env_.relation(f.name());
    const auto& args = f.terms();
    if (static_cast<int>(args.size()) != r.track_count())
      throw InputError("relation '" + f.name() + "' takes " + std::to_string(r.track_count()) + " arguments, got " +
                       std::to_string(args.size()));
    std::map<std::string, std::string> renaming;
    std::set<std::string> used;
    std::set<std::string> aux;
    std::vector<Automaton> parts;
    for (std::size_t i = 0; i < args.size(); ++i) {
      auto v = args[i].as_variable();
      std::string target;
      if (v && !used.count(*v)) {
        target = *v;
      } else {
        target = fresh();
        aux.insert(target);
        parts.push_back(linear_atom(Term::variable(target), args[i], LinearCmp::kEq));
      }
      used.insert(target);
      renaming[r.tracks()[i]] = target;
    }
    parts.push_back(rename_tracks(r, renaming));
    if (parts.size() == 1) return std::move(parts.front());
    return conjoin(std::move(parts), aux);
  }

  const Environment& env_;
  int counter_ = 0;
};

}  // namespace

Automaton compile(const Formula& phi, const Environment& env, const std::vector<std::string>& free_order) {
  for (const auto& v : phi.free_variables())
    if (std::find(free_order.begin(), free_order.end(), v) == free_order.end())
      throw InputError("free variable '" + v + "' missing from the track order");
  Compiler c(env);
  return reorder_tracks(c.run(phi), free_order);
}

bool decide(const Formula& sentence, const Environment& env) {
  auto fv = sentence.free_variables();
  if (!fv.empty()) throw InputError("sentence has free variable '" + *fv.begin() + "'");
  auto a = compile(sentence, env, {});
  return a.is_accepting(a.initial());
}

bool is_functional(const Automaton& relation, const std::string& output) {
  if (!relation.has_track(output)) throw InputError("relation has no track '" + output + "'");
  Environment env(relation.base());
  env.add_relation("R", relation);
  const std::string other = "_o" + output;
  std::vector<Term> args, args2;
  std::vector<std::string> inputs, all{other};
  for (const auto& t : relation.tracks()) {
    args.push_back(var(t));
    args2.push_back(var(t == output ? other : t));
    all.push_back(t);
    if (t != output) inputs.push_back(t);
  }
  Formula total = Formula::forall(inputs, Formula::exists({output}, Formula::rel("R", args)));
  Formula unique = Formula::forall(all, Formula::implies(Formula::rel("R", args) && Formula::rel("R", args2),
                                                         Formula::eq(var(output), var(other))));
  return decide(total && unique, env);
}

std::optional<std::vector<Value>> witness(const Formula& phi, const Environment& env, Value bound,
                                          std::vector<std::string> order) {
  if (order.empty()) {
    auto fv = phi.free_variables();
    order.assign(fv.begin(), fv.end());
  }
  Automaton a = compile(phi, env, order);
  for (const auto& v : order)
    a = combine(BoolOp::kAnd, a,
                linear_relation(env.base(), {v}, {1}, static_cast<std::int64_t>(bound) + 1, LinearCmp::kLt));
  if (is_empty(a)) return std::nullopt;
  std::vector<Value> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::vector<std::string> rest;
    for (const auto& t : a.tracks())
      if (t != order[i]) rest.push_back(t);
    Automaton head = reorder_tracks(rest.empty() ? a : project_exists(a, rest), {order[i]});
    auto v = min_accepted(head);
    if (!v) throw InternalError("witness search lost its solution");
    out.push_back(*v);
    a = combine(BoolOp::kAnd, a,
                linear_relation(env.base(), {order[i]}, {1}, static_cast<std::int64_t>(*v), LinearCmp::kEq));
  }
  return out;
}

}  // namespace pcabel
