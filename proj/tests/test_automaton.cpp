#include <random>

#include "doctest.h"
#include "pcabel/automaton.hpp"
#include "pcabel/dfao.hpp"
#include "pcabel/error.hpp"
#include "pcabel/export.hpp"
#include "testing_util.hpp"

using namespace pcabel;

TEST_CASE("symbol encoding") {
  CHECK(symbol_count(3, 2) == 9);
  std::vector<int> d{2, 1};
  CHECK(encode_symbol(d, 3) == 2 + 3);
  CHECK(decode_symbol(5, 3, 2) == d);
  CHECK(digits_msd(5, 2, 4) == std::vector<int>{0, 1, 0, 1});
  CHECK(digit_length(0, 3) == 0);
  CHECK(digit_length(27, 3) == 4);
}

TEST_CASE("builtin relations") {
  auto add = builtin_relation("add", 3, {"x", "y", "z"});
  CHECK(add.accepts({1, 2, 3}));
  CHECK_FALSE(add.accepts({4, 5, 10}));
  auto mul = builtin_relation("mul_const", 3, {"x", "y"}, 3);
  CHECK(mul.accepts({4, 12}));
  CHECK_FALSE(mul.accepts({4, 13}));
  auto c = builtin_relation("const", 3, {"x"}, 5);
  CHECK(c.accepts({5}));
  CHECK_FALSE(c.accepts({6}));
  CHECK_THROWS_AS(builtin_relation("pow", 3, {"x", "y"}), InputError);
}

TEST_CASE("arithmetic soundness on exhaustive grids") {
  for (int k : {2, 3}) {
    auto add = builtin_relation("add", k, {"x", "y", "z"});
    auto lt = builtin_relation("lt", k, {"x", "y"});
    auto eq = builtin_relation("eq", k, {"x", "y"});
    bool ok = true;
    for (Value x = 0; x < 200 && ok; ++x)
      for (Value y = 0; y < 200 && ok; ++y) {
        ok = ok && lt.accepts({x, y}) == (x < y) && eq.accepts({x, y}) == (x == y);
        for (Value z = 0; z < 200 && ok; ++z) ok = ok && add.accepts({x, y, z}) == (z == x + y);
      }
    CHECK(ok);
  }
}

TEST_CASE("random linear relations match direct evaluation") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int k = testing::uniform(rng, 2, 5);
    int t = testing::uniform(rng, 1, 3);
    std::vector<std::string> tracks;
    std::vector<std::int64_t> coeffs;
    for (int j = 0; j < t; ++j) {
      tracks.push_back("v" + std::to_string(j));
      int c = 0;
      while (c == 0) c = testing::uniform(rng, -3, 3);
      coeffs.push_back(c);
    }
    std::int64_t rhs = testing::uniform(rng, -6, 12);
    auto cmp = testing::uniform(rng, 0, 1) ? LinearCmp::kEq : LinearCmp::kLt;
    auto a = linear_relation(k, tracks, coeffs, rhs, cmp);
    CHECK(is_padding_closed(a));
    const Value bound = t == 3 ? 12 : 30;
    std::vector<Value> v(static_cast<std::size_t>(t), 0);
    bool ok = true;
    for (;;) {
      std::int64_t s = 0;
      for (int j = 0; j < t; ++j) s += coeffs[static_cast<std::size_t>(j)] * static_cast<std::int64_t>(v[static_cast<std::size_t>(j)]);
      bool want = cmp == LinearCmp::kEq ? s == rhs : s < rhs;
      ok = ok && a.accepts(std::span<const Value>(v)) == want;
      int j = 0;
      while (j < t && ++v[static_cast<std::size_t>(j)] > bound) v[static_cast<std::size_t>(j++)] = 0;
      if (j == t) break;
    }
    CHECK(ok);
  }
}

TEST_CASE("boolean combination examples") {
  auto eq = builtin_relation("eq", 2, {"x", "y"});
  auto lt = builtin_relation("lt", 2, {"x", "y"});
  auto le = combine(BoolOp::kOr, eq, lt);
  CHECK(le.accepts({2, 2}));
  CHECK(le.accepts({1, 2}));
  CHECK_FALSE(le.accepts({3, 2}));
  CHECK(equivalent(complement(complement(lt)), lt));
  CHECK(is_empty(combine(BoolOp::kAnd, lt, complement(lt))));
  CHECK_THROWS_AS(combine(BoolOp::kAnd, lt, builtin_relation("lt", 3, {"x", "y"})), InputError);
}

TEST_CASE("projection examples") {
  auto add = builtin_relation("add", 2, {"x", "y", "z"});
  auto yz = project_exists(add, "x");
  CHECK(yz.tracks() == std::vector<std::string>{"y", "z"});
  CHECK(yz.accepts({2, 5}));
  CHECK_FALSE(yz.accepts({5, 2}));
  CHECK(is_universal(project_exists(add, "z")));
  CHECK(is_universal(project_exists(builtin_relation("const", 2, {"x"}, 9), "x")));
  CHECK_THROWS_AS(project_exists(add, "w"), InputError);
}

TEST_CASE("finiteness, enumeration, least element") {
  CHECK(is_finite(builtin_relation("const", 3, {"x"}, 5)));
  auto below7 = linear_relation(2, {"x"}, {1}, 7, LinearCmp::kLt);
  auto above7 = linear_relation(2, {"x"}, {-1}, -7, LinearCmp::kLt);
  CHECK(is_finite(below7));
  CHECK_FALSE(is_finite(above7));
  CHECK(is_finite(Automaton::empty(2, {"x"})));
  CHECK(enumerate(below7, 100).size() == 7);
  CHECK(min_accepted(above7) == Value{8});
  CHECK_FALSE(min_accepted(Automaton::empty(2, {"x"})).has_value());
  // y = 2x with x <= 3 : finitely many pairs
  auto twice = combine(BoolOp::kAnd, builtin_relation("mul_const", 2, {"x", "y"}, 2),
                       linear_relation(2, {"x"}, {1}, 4, LinearCmp::kLt));
  CHECK(is_finite(twice));
  auto pairs = enumerate(twice, 100);
  CHECK(pairs == std::vector<std::vector<Value>>{{0, 0}, {1, 2}, {2, 4}, {3, 6}});
  CHECK_FALSE(is_finite(builtin_relation("mul_const", 2, {"x", "y"}, 2)));
}

TEST_CASE("canonical minimization") {
  auto lt1 = builtin_relation("lt", 3, {"x", "y"});
  auto lt2 = linear_relation(3, {"y", "x"}, {-1, 1}, 0, LinearCmp::kLt);
  auto lt3 = complement(combine(BoolOp::kOr, builtin_relation("lt", 3, {"y", "x"}), builtin_relation("eq", 3, {"x", "y"})));
  CHECK(reorder_tracks(lt2, {"x", "y"}) == lt1);
  CHECK(reorder_tracks(lt3, {"x", "y"}) == lt1);
  CHECK(minimize(lt1) == lt1);
}

TEST_CASE("random automata properties") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 220; ++trial) {
    int k = testing::uniform(rng, 2, 3);
    auto a = testing::random_automaton(rng, k, {"x"});
    auto b = testing::random_automaton(rng, k, {"x", "y"});
    auto c = testing::random_automaton(rng, k, {"y"});

    // minimization preserves language and is idempotent
    auto ma = minimize(a);
    CHECK(minimize(ma) == ma);
    CHECK(equivalent(ma, a));
    CHECK(ma.num_states() <= a.num_states());

    auto na = complement(a), nb = complement(b);
    CHECK(equivalent(complement(na), a));
    CHECK(equivalent(complement(combine(BoolOp::kAnd, a, b)), combine(BoolOp::kOr, na, nb)));
    CHECK(equivalent(complement(combine(BoolOp::kOr, a, b)), combine(BoolOp::kAnd, na, nb)));
    CHECK(equivalent(combine(BoolOp::kAnd, a, combine(BoolOp::kOr, b, c)),
                     combine(BoolOp::kOr, combine(BoolOp::kAnd, a, b), combine(BoolOp::kAnd, a, c))));
    CHECK(equivalent(combine(BoolOp::kImplies, a, b), combine(BoolOp::kOr, na, b)));

    // padding closure after every operation
    auto p = project_exists(b, "y");
    for (const auto* r : {&ma, &na, &p}) CHECK(is_padding_closed(*r));
    CHECK(is_padding_closed(combine(BoolOp::kXor, a, c)));

    // enumerate agrees with membership; projection agrees with a bounded search
    // whenever the witness range is small enough to be exhaustive
    auto listed = enumerate(b, 20);
    std::vector<std::vector<Value>> brute;
    for (Value x = 0; x <= 20; ++x)
      for (Value y = 0; y <= 20; ++y)
        if (b.accepts({x, y})) brute.push_back({x, y});
    CHECK(listed == brute);

    auto cut = combine(BoolOp::kAnd, b, linear_relation(k, {"y"}, {1}, 9, LinearCmp::kLt));
    auto px = project_exists(cut, "y");
    bool ok = true;
    for (Value x = 0; x <= 30; ++x) {
      bool any = false;
      for (Value y = 0; y < 9; ++y) any = any || b.accepts({x, y});
      ok = ok && px.accepts({x}) == any;
    }
    CHECK(ok);

    // finiteness agrees with the presence of large members
    auto fa = combine(BoolOp::kAnd, a, linear_relation(k, {"x"}, {1}, 50, LinearCmp::kLt));
    CHECK(is_finite(fa));
    if (is_finite(a)) CHECK(enumerate(a, 100000).size() == enumerate(a, 1u << 30).size());
    ++checked;
  }
  CHECK(checked >= 200);
}

TEST_CASE("track handling") {
  auto lt = builtin_relation("lt", 2, {"x", "y"});
  auto r = rename_tracks(lt, {{"x", "y"}, {"y", "x"}});
  CHECK(reorder_tracks(r, {"x", "y"}).accepts({3, 1}));
  auto wide = reorder_tracks(lt, {"z", "y", "x"});
  CHECK(wide.accepts({100, 5, 3}));
  CHECK_FALSE(wide.accepts({0, 3, 5}));
  CHECK_THROWS_AS(reorder_tracks(lt, {"x"}), InputError);
}

TEST_CASE("dfao basics") {
  // Thue-Morse: parity of the binary digit sum
  Dfao tm(2, 2, 0, {0, 1, 1, 0}, {0, 1});
  std::vector<std::int64_t> want{0, 1, 1, 0, 1, 0, 0, 1};
  for (Value n = 0; n < want.size(); ++n) {
    CHECK(dfao_output(tm, n) == want[n]);
    CHECK(dfao_output_padded(tm, n, 3) == want[n]);
  }
  Dfao redundant(2, 4, 0, {2, 1, 3, 0, 0, 3, 1, 2}, {0, 1, 0, 1});
  auto m = minimize_dfao(redundant);
  CHECK(m.num_states() == 2);
  CHECK(minimize_dfao(m) == m);
  for (Value n = 0; n < 64; ++n) CHECK(dfao_output(m, n) == dfao_output(redundant, n));

  auto ones = dfao_equals(tm, 1, "n");
  for (Value n = 0; n < 64; ++n) CHECK(ones.accepts({n}) == (dfao_output(tm, n) == 1));

  auto product = dfao_from_predicates({ones, linear_relation(2, {"n"}, {1}, 4, LinearCmp::kLt)},
                                      [](const std::vector<bool>& b) { return std::int64_t{b[0]} + 2 * b[1]; });
  for (Value n = 0; n < 64; ++n)
    CHECK(dfao_output(product, n) == (dfao_output(tm, n) == 1) + 2 * (n < 4));
  CHECK_THROWS_AS(Dfao(2, 1, 0, {0}, {0}), InputError);
}

TEST_CASE("export formats") {
  auto add = builtin_relation("add", 2, {"x", "y", "z"});
  auto back = automaton_from_json(to_json(add));
  CHECK(back == add);
  CHECK(equivalent(back, add));
  auto text = to_walnut(add);
  CHECK(text.rfind("msd_2 msd_2 msd_2\n", 0) == 0);
  CHECK(to_dot(add).find("digraph") == 0);
  Dfao tm(2, 2, 0, {0, 1, 1, 0}, {0, 1});
  CHECK(dfao_from_json(to_json(tm)) == tm);
  CHECK(to_walnut(tm).rfind("msd_2\n", 0) == 0);
  CHECK_THROWS_AS(automaton_from_json("{nope"), InputError);
}

TEST_CASE("state cap") {
  auto add = builtin_relation("add", 5, {"x", "y", "z"});
  auto lt = builtin_relation("lt", 5, {"x", "z"});
  {
    ScopedEngineLimits guard(EngineLimits{2, std::size_t{1} << 22});
    CHECK_THROWS_AS(combine(BoolOp::kAnd, add, lt), ResourceLimitError);
  }
  CHECK_NOTHROW(combine(BoolOp::kAnd, add, lt));
}
