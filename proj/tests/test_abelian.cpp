#include <chrono>
#include <random>

#include "doctest.h"
#include "pcabel/abelian.hpp"
#include "pcabel/error.hpp"
#include "pcabel/logic.hpp"
#include "pcabel/oracle.hpp"
#include "testing_util.hpp"

using namespace pcabel;

namespace {

using Vec = std::vector<std::int64_t>;

const char* kGolden = "0->012 1->112002 2->";

struct Golden {
  Morphism f = parse_morphism(kGolden);
  AbelianContext ctx = make_context(f, 0);
  std::vector<PrefixCountRelation> prefs;
  std::vector<Automaton> factors;
  std::vector<SignedDifferences> diffs;
  std::vector<Vec> sets;
  DifferenceProfile profile;
  Dfao dfao;

  Golden() {
    for (Letter b = 0; b < 3; ++b) {
      prefs.push_back(prefix_count_relation(b, ctx));
      factors.push_back(factor_count_relation(prefs.back()));
      diffs.push_back(difference_relations(prefs.back(), factors.back()));
      sets.push_back(attained_difference_set(diffs.back()));
    }
    profile = attainable_vectors(diffs, sets);
    dfao = abelian_dfao(profile);
  }
};

const Golden& golden() {
  static const Golden g;
  return g;
}

}  // namespace

TEST_CASE("prefix count relations") {
  const auto& g = golden();
  CHECK(g.prefs[0].r == 1);
  CHECK(g.prefs[0].q == 3);
  oracle::PrefixBuffer buf(g.f, 0, 1200);
  for (Letter b = 0; b < 3; ++b) {
    const auto& rel = g.prefs[static_cast<std::size_t>(b)].relation;
    CHECK(rel.accepts({0, 0}));
    bool ok = true;
    for (Value n = 0; n <= 1000; ++n) {
      Value y = static_cast<Value>(oracle::brute_prefix_counts(buf, b, n));
      ok = ok && rel.accepts({n, y}) && !rel.accepts({n, y + 1}) && (y == 0 || !rel.accepts({n, y - 1}));
    }
    CHECK(ok);
  }
  CHECK(g.prefs[2].relation.accepts({3, 1}));
  // counts over all letters sum to n
  bool sums = true;
  for (Value n = 0; n <= 10000; n += 7) {
    Value total = 0;
    for (const auto& p : g.prefs) {
      auto vals = enumerate(reorder_tracks(combine(BoolOp::kAnd, p.relation, builtin_relation("const", 3, {"n"}, n)), {"n", "y"}), n);
      REQUIRE(vals.size() == 1);
      total += vals[0][1];
    }
    sums = sums && total == n;
  }
  CHECK(sums);
}

TEST_CASE("factor count relation") {
  const auto& g = golden();
  // x[3..9) = 112002
  CHECK(g.factors[1].accepts({3, 6, 2}));
  CHECK_FALSE(g.factors[1].accepts({3, 6, 4}));
  for (Value i = 0; i < 50; ++i) CHECK(g.factors[0].accepts({i, 0, 0}));
  CHECK(is_functional(g.factors[0], "z"));
  auto x = fixed_point_prefix(g.f, 0, 300);
  bool ok = true;
  for (Value i = 0; i < 100; i += 3)
    for (Value n = 0; n < 100; n += 5) {
      Value z = static_cast<Value>(std::count(x.begin() + static_cast<std::ptrdiff_t>(i), x.begin() + static_cast<std::ptrdiff_t>(i + n), 2));
      ok = ok && g.factors[2].accepts({i, n, z});
    }
  CHECK(ok);
}

TEST_CASE("difference sets and vectors") {
  const auto& g = golden();
  CHECK(g.sets[0] == Vec{-2, -1, 0, 1, 2});
  CHECK(g.sets[1] == Vec{-3, -2, -1, 0, 1, 2});
  CHECK(g.sets[2] == Vec{0, 1});
  std::vector<Vec> got;
  for (const auto& av : g.profile.vectors) {
    got.push_back(av.v);
    CHECK(av.v[0] + av.v[1] + av.v[2] == 0);
  }
  std::vector<Vec> want{{-2, 1, 1}, {-2, 2, 0}, {-1, 0, 1}, {-1, 1, 0}, {0, -1, 1},
                        {0, 0, 0},  {1, -2, 1}, {1, -1, 0}, {2, -3, 1}, {2, -2, 0}};
  CHECK(got == want);
}

TEST_CASE("per-length vector sets against the oracle") {
  const auto& g = golden();
  oracle::PrefixBuffer buf(g.f, 0, 60000);
  for (std::size_t n = 0; n <= 300; ++n) {
    auto brute = oracle::brute_difference_vectors(buf, n, 50000);
    auto got = vectors_at(g.profile, n);
    CHECK(std::set<Vec>(got.begin(), got.end()) == brute);
  }
}

TEST_CASE("abelian DFAO and description") {
  const auto& g = golden();
  for (Value n = 0; n < 9; ++n) CHECK(dfao_output(g.dfao, n) == Vec{1, 3, 5, 3, 7, 7, 3, 7, 7}[n]);
  auto d = describe_sequence(g.dfao);
  CHECK_FALSE(d.aperiodic);
  CHECK(d.preperiod == Vec{1, 3, 5});
  CHECK(d.period == Vec{3, 7, 7});
  CHECK(d.compact() == "135(377)^w");
  CHECK(d.spaced() == "1 3 5 (3 7 7)^w");
  CHECK(is_aperiodic(dfao_of_word(g.ctx.presentation)));
  CHECK(is_ultimately_periodic(g.dfao));

  oracle::PrefixBuffer buf(g.f, 0, 1000);
  auto brute = oracle::brute_abelian_range(buf, 300);
  for (Value n = 0; n <= 300; ++n) CHECK(dfao_output(g.dfao, n) == brute[n]);
}

TEST_CASE("describing sequences") {
  Dfao zero(2, 1, 0, {0, 0}, {0});
  auto d = describe_sequence(zero);
  CHECK(d.preperiod.empty());
  CHECK(d.period == Vec{0});
  CHECK(d.compact() == "(0)^w");
  CHECK(describe_sequence(Dfao(2, 2, 0, {0, 1, 1, 0}, {0, 1})).aperiodic);
  ComplexityDescription big{false, {1}, {10, 2}};
  CHECK(big.compact() == "1(10,2)^w");
  CHECK(describe_values({5, 1, 2, 1, 2}, 1, 4) == ComplexityDescription{false, {5}, {1, 2}});
  CHECK(describe_values({1, 2, 1, 2}, 2, 2) == ComplexityDescription{false, {}, {1, 2}});
}

TEST_CASE("abelian complexity of eventually periodic words") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    const int sigma = testing::uniform(rng, 1, 3);
    Word u = testing::random_word(rng, sigma, 5);
    Word v = testing::random_word(rng, sigma, 6);
    if (v.empty()) v.push_back(0);
    Word x = u;
    while (x.size() < 4000) x.insert(x.end(), v.begin(), v.end());
    auto desc = periodic_word_complexity(x, u.size(), v.size(), sigma);
    oracle::PrefixBuffer buf(x, sigma);
    oracle::StabilityPolicy policy{1000, 8, 1};
    bool ok = true;
    for (std::size_t n = 0; n < 60; ++n) {
      std::int64_t want = oracle::brute_abelian(buf, n, policy);
      std::int64_t got = n < desc.preperiod.size() ? desc.preperiod[n]
                                                   : desc.period[(n - desc.preperiod.size()) % desc.period.size()];
      ok = ok && want == got;
    }
    CHECK(ok);
  }
}
