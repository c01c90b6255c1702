#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "pcabel/error.hpp"
#include "pcabel/logic.hpp"
#include "testing_util.hpp"

using namespace pcabel;

namespace {

Dfao thue_morse() { return Dfao(2, 2, 0, {0, 1, 1, 0}, {0, 1}); }

Environment tm_env() {
  Environment env(2);
  env.add_sequence("T", thue_morse());
  return env;
}

int popcount_parity(Value n) { return __builtin_popcountll(n) & 1; }

Formula parse(const char* text) { return parse_formula(text).formula; }

// Random sentences over bounded quantifiers for the substitution check.
struct RandomSentence {
  std::mt19937_64& rng;
  std::vector<std::string> vars;

  Term random_term(const std::vector<std::string>& scope) {
    Term t = cst(static_cast<Value>(testing::uniform(rng, 0, 5)));
    int parts = testing::uniform(rng, 1, 2);
    for (int i = 0; i < parts; ++i) {
      const auto& v = scope[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(scope.size()) - 1))];
      Value c = static_cast<Value>(testing::uniform(rng, 1, 3));
      t = t + (c == 1 ? var(v) : c * var(v));
    }
    return t;
  }

  Formula atom(const std::vector<std::string>& scope) {
    auto a = random_term(scope), b = random_term(scope);
    return testing::uniform(rng, 0, 1) ? Formula::eq(a, b) : Formula::lt(a, b);
  }

  Formula body(const std::vector<std::string>& scope, int depth) {
    int pick = testing::uniform(rng, 0, depth > 0 ? 5 : 2);
    switch (pick) {
      case 0:
      case 1:
        return atom(scope);
      case 2:
        return !atom(scope);
      case 3:
        return body(scope, depth - 1) && body(scope, depth - 1);
      case 4:
        return body(scope, depth - 1) || body(scope, depth - 1);
      default:
        return quantified(scope, depth - 1);
    }
  }

  Formula quantified(std::vector<std::string> scope, int depth) {
    std::string v = "v" + std::to_string(scope.size());
    scope.push_back(v);
    Formula guard = Formula::le(var(v), cst(64));
    Formula inner = body(scope, depth);
    return testing::uniform(rng, 0, 1) ? Formula::exists({v}, guard && inner)
                                       : Formula::forall({v}, Formula::implies(guard, inner));
  }
};

Value eval_term(const Term& t, const std::map<std::string, Value>& env) {
  switch (t.kind()) {
    case Term::Kind::kVariable:
      return env.at(t.name());
    case Term::Kind::kConstant:
      return t.value();
    case Term::Kind::kSum:
      return eval_term(t.lhs(), env) + eval_term(t.rhs(), env);
    case Term::Kind::kScale:
      return t.value() * eval_term(t.lhs(), env);
  }
  return 0;
}

// Direct evaluation; quantifiers range over 0..64, which is exact because
// every quantifier is guarded by v <= 64.
bool eval(const Formula& f, std::map<std::string, Value>& env) {
  using K = Formula::Kind;
  const auto& c = f.children();
  switch (f.kind()) {
    case K::kTrue:
      return true;
    case K::kFalse:
      return false;
    case K::kEq:
      return eval_term(f.terms()[0], env) == eval_term(f.terms()[1], env);
    case K::kLt:
      return eval_term(f.terms()[0], env) < eval_term(f.terms()[1], env);
    case K::kNot:
      return !eval(c[0], env);
    case K::kAnd:
      for (const auto& x : c)
        if (!eval(x, env)) return false;
      return true;
    case K::kOr:
      for (const auto& x : c)
        if (eval(x, env)) return true;
      return false;
    case K::kImplies:
      return !eval(c[0], env) || eval(c[1], env);
    case K::kIff:
      return eval(c[0], env) == eval(c[1], env);
    case K::kExists:
    case K::kForall: {
      const auto& v = f.bound()[0];
      bool any = false, all = true;
      for (Value x = 0; x <= 64 && (f.kind() == K::kExists ? !any : all); ++x) {
        env[v] = x;
        bool r = eval(c[0], env);
        any = any || r;
        all = all && r;
      }
      env.erase(v);
      return f.kind() == K::kExists ? any : all;
    }
    default:
      throw std::logic_error("unsupported node in test evaluator");
  }
}

}  // namespace

TEST_CASE("terms") {
  auto t = 3 * (var("x") + cst(2)) + var("y");
  auto lin = t.linear();
  CHECK(lin.coeffs.at("x") == 3);
  CHECK(lin.coeffs.at("y") == 1);
  CHECK(lin.constant == 6);
  CHECK(t.to_string() == "3*(x+2)+y");
}

TEST_CASE("parser") {
  auto p = parse_formula("?msd_3 Ep,i p>0 & An (n>=i) => T[n]=T[n+p]");
  CHECK(p.base == 3);
  CHECK(p.formula.kind() == Formula::Kind::kExists);
  CHECK(p.formula.free_variables().empty());

  auto q = parse("~(x=y) | $rel(x+1, 2*y) & T[x]=@1");
  CHECK(q.free_variables() == std::set<std::string>{"x", "y"});
  // printing then re-parsing gives the same tree
  CHECK(parse(q.to_string().c_str()).to_string() == q.to_string());
  CHECK(parse("(x+1)*2=y").to_string() == parse("2*(x+1)=y").to_string());

  CHECK_THROWS_AS(parse("x = "), InputError);
  CHECK_THROWS_AS(parse("x < y)"), InputError);
  CHECK_THROWS_AS(parse("T[x] < @1"), InputError);
  try {
    parse("x=y &\n  y ? 3");
    FAIL("expected parse failure");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("2:5") != std::string::npos);
  }
}

TEST_CASE("compile and decide basics") {
  auto env = tm_env();
  auto all = compile(parse("x=x"), env, {"x"});
  CHECK(is_universal(all));
  CHECK_FALSE(decide(parse("En n<n"), env));
  CHECK(decide(parse("An Em m=n+1"), env));
  CHECK_FALSE(decide(parse("Am En n<m & n>=m"), env));
  CHECK(decide(parse("An T[n]=@1 <=> ~(T[n]=@0)"), env));
  CHECK(decide(parse("An T[2*n+1] != T[2*n]"), env));
  CHECK_THROWS_AS(decide(parse("x=1"), env), InputError);
  CHECK_THROWS_AS(compile(parse("U[x]=@1"), env, {"x"}), InputError);
  CHECK_THROWS_AS(compile(parse("x=y"), env, {"x"}), InputError);
}

TEST_CASE("sequence indexing is consistent with the DFAO") {
  auto env = tm_env();
  auto ones = compile(parse("T[n]=@1"), env, {"n"});
  auto shifted = compile(parse("T[n+3]=@1"), env, {"n"});
  auto back = compile(parse("T[n-1]=@1"), env, {"n"});
  bool ok = true;
  for (Value n = 0; n <= 10000; ++n) {
    ok = ok && ones.accepts({n}) == (popcount_parity(n) == 1);
    ok = ok && shifted.accepts({n}) == (popcount_parity(n + 3) == 1);
    ok = ok && back.accepts({n}) == (n >= 1 && popcount_parity(n - 1) == 1);
  }
  CHECK(ok);
  auto same = compile(parse("T[n]=T[n+1]"), env, {"n"});
  for (Value n = 0; n < 2000; ++n) CHECK(same.accepts({n}) == (popcount_parity(n) == popcount_parity(n + 1)));
}

TEST_CASE("relations") {
  auto env = tm_env();
  env.add_relation("plus", builtin_relation("add", 2, {"a", "b", "c"}));
  auto doubled = compile(parse("$plus(x,x,y)"), env, {"x", "y"});
  CHECK(doubled.accepts({4, 8}));
  CHECK_FALSE(doubled.accepts({4, 9}));
  auto shifted = compile(parse("$plus(x+1, 2, y)"), env, {"x", "y"});
  CHECK(shifted.accepts({4, 7}));
  auto swapped = compile(parse("$plus(y, x, z)"), env, {"x", "y", "z"});
  CHECK(swapped.accepts({1, 5, 6}));
  CHECK_THROWS_AS(compile(parse("$plus(x,y)"), env, {"x", "y"}), InputError);
  CHECK_THROWS_AS(compile(parse("$minus(x,y,z)"), env, {"x", "y", "z"}), InputError);
}

TEST_CASE("witness") {
  auto env = tm_env();
  CHECK(witness(parse("n=n"), env, 100) == std::vector<Value>{0});
  CHECK_FALSE(witness(parse("n<n"), env, 100).has_value());
  CHECK(witness(parse("T[n]=@1 & n>2"), env, 100) == std::vector<Value>{4});
  CHECK(witness(parse("x+y=5 & x>y"), env, 100, {"y", "x"}) == std::vector<Value>{0, 5});
  CHECK(witness(parse("x+y=5 & x>y"), env, 100) == std::vector<Value>{3, 2});
  CHECK_FALSE(witness(parse("x>200"), env, 100).has_value());
}

TEST_CASE("quantifier duality on random formulas") {
  std::mt19937_64 rng(314);
  auto env = tm_env();
  for (int trial = 0; trial < 200; ++trial) {
    RandomSentence gen{rng, {}};
    Formula phi = gen.body({"x", "y"}, 2);
    if (testing::uniform(rng, 0, 1)) phi = phi && Formula::seq("T", var("x") + var("y"), testing::uniform(rng, 0, 1));
    auto lhs = compile(!Formula::exists({"x"}, phi), env, {"y"});
    auto rhs = compile(Formula::forall({"x"}, !phi), env, {"y"});
    CHECK(equivalent(lhs, rhs));
  }
}

TEST_CASE("bounded sentences agree with direct evaluation") {
  std::mt19937_64 rng(2718);
  auto env = tm_env();
  int agreed = 0;
  for (int trial = 0; trial < 200; ++trial) {
    RandomSentence gen{rng, {}};
    Formula phi = gen.quantified({}, testing::uniform(rng, 1, 2));
    std::map<std::string, Value> scope;
    bool want = eval(phi, scope);
    bool got = decide(phi, env);
    CHECK_MESSAGE(want == got, phi.to_string());
    agreed += want == got;
  }
  CHECK(agreed == 200);
}
