#include <random>

#include "doctest.h"
#include "pcabel/error.hpp"
#include "pcabel/morphism.hpp"
#include "testing_util.hpp"

using namespace pcabel;

namespace {

const char* kGolden = "0->012 1->112002 2->";

ParikhVector pv(std::initializer_list<std::int64_t> xs) { return ParikhVector(xs); }

}  // namespace

TEST_CASE("parse and print") {
  auto f = parse_morphism(kGolden);
  CHECK(f.domain().names() == std::vector<std::string>{"0", "1", "2"});
  CHECK(f.to_string() == "0->012 1->112002 2->");
  CHECK(f.image(2).empty());
  CHECK(f.max_image_length() == 6);

  CHECK_THROWS_AS(parse_morphism("0->01 1->13"), InputError);
  CHECK_THROWS_AS(parse_morphism("0->01 0->1"), InputError);
  CHECK_THROWS_AS(parse_morphism("0-01"), InputError);
  CHECK_THROWS_AS(parse_morphism(""), InputError);
  try {
    parse_morphism("0->01\n1->1x");
    FAIL("expected a parse error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 2, column 1") != std::string::npos);
    CHECK(e.exit_code() == 2);
  }
  auto named = parse_morphism("[a0]->[a0][b1] [b1]->[b1]");
  CHECK(named.domain().size() == 2);
  CHECK(named.to_string() == "[a0]->[a0][b1] [b1]->[b1]");
}

TEST_CASE("apply") {
  auto f = parse_morphism(kGolden);
  const auto& A = f.domain();
  CHECK(A.spell(pcabel::apply(f, A.parse_word("01"))) == "012112002");
  CHECK(pcabel::apply(f, Word{}).empty());
  CHECK(pcabel::apply(f, A.parse_word("22")).empty());
  CHECK_THROWS_AS(pcabel::apply(f, Word{7}), InputError);
}

TEST_CASE("parikh and adjacency") {
  auto f = parse_morphism(kGolden);
  const auto& A = f.domain();
  CHECK(parikh(A.parse_word("112002"), 3) == pv({2, 2, 2}));
  CHECK(parikh(Word{}, 3) == pv({0, 0, 0}));
  CHECK(parikh(A.parse_word("012"), 3) == pv({1, 1, 1}));

  auto m = adjacency_matrix(f);
  Matrix want{{1, 2, 0}, {1, 2, 0}, {1, 2, 0}};
  CHECK(m == want);
  auto id = adjacency_matrix(identity_morphism(A));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(id[i][j] == (i == j ? 1 : 0));
  auto g = adjacency_matrix(parse_morphism("0->01 1->1100"));
  CHECK(g == Matrix{{1, 2}, {1, 2}});

  Morphism nonendo(Alphabet({"a"}), Alphabet({"x", "y"}), {Word{0, 1}});
  CHECK_THROWS_AS(adjacency_matrix(nonendo), InputError);
}

TEST_CASE("collinearity and eigenvalue") {
  CHECK(is_parikh_collinear(parse_morphism(kGolden)));
  CHECK(is_parikh_collinear(parse_morphism("0->01 1->10")));
  auto fib = parse_morphism("0->01 1->0");
  CHECK_FALSE(is_parikh_collinear(fib));
  auto w = collinearity_witness(fib);
  REQUIRE(w);
  CHECK(w->minor == -1);

  CHECK(eigenvalue(parse_morphism(kGolden)) == 3);
  CHECK(eigenvalue(parse_morphism("a->a")) == 1);
  CHECK(eigenvalue(parse_morphism("0->010011 1->1001")) == 5);
  CHECK_THROWS_AS(eigenvalue(fib), InputError);
}

TEST_CASE("mortal partition and kappa") {
  auto f = parse_morphism(kGolden);
  auto p = mortal_partition(f);
  CHECK(p.immortal == std::vector<Letter>{0, 1});
  CHECK(p.mortal == std::vector<Letter>{2});
  CHECK(mortal_partition(parse_morphism("0->01 1->10")).mortal.empty());
  auto erased = mortal_partition(parse_morphism("a->"));
  CHECK(erased.immortal.empty());
  CHECK(erased.mortal == std::vector<Letter>{0});

  auto kp = kappa_projection(f);
  CHECK(kp.g.to_string() == "0->01 1->1100");
  CHECK(eigenvalue(kp.g) == 3);
  auto tm = parse_morphism("0->01 1->10");
  CHECK(kappa_projection(tm).g == tm);
  CHECK_THROWS_AS(kappa_projection(parse_morphism("a->")), InputError);
}

TEST_CASE("primitive and prolongable") {
  CHECK(is_primitive(parse_morphism("0->01 1->1100")));
  CHECK_FALSE(is_primitive(parse_morphism(kGolden)));
  CHECK(is_primitive(parse_morphism("a->a")));

  auto f = parse_morphism(kGolden);
  CHECK(is_prolongable(f, 0));
  CHECK_FALSE(is_prolongable(f, 2));
  CHECK_FALSE(is_prolongable(parse_morphism("0->01 1->"), 0));
}

TEST_CASE("fixed point prefix") {
  auto f = parse_morphism(kGolden);
  CHECK(f.domain().spell(fixed_point_prefix(f, 0, 15)) == "012112002112002");
  CHECK(f.domain().spell(fixed_point_prefix(f, 0, 9)) == "012112002");
  CHECK(fixed_point_prefix(f, 0, 1) == Word{0});
  CHECK_THROWS_AS(fixed_point_prefix(f, 2, 5), InputError);
}

TEST_CASE("restrict to reachable") {
  auto m = parse_morphism("1->12 2->21 3->12");
  auto r = restrict_to_reachable(m, 0);
  CHECK(r.morphism.domain().names() == std::vector<std::string>{"1", "2"});
  auto f = parse_morphism(kGolden);
  CHECK(restrict_to_reachable(f, 0).morphism == f);
  auto abc = parse_morphism("a->ab b->b c->c");
  CHECK(restrict_to_reachable(abc, 0).morphism.domain().names() == std::vector<std::string>{"a", "b"});
}

TEST_CASE("properties on random collinear morphisms") {
  std::mt19937_64 rng(20241);
  for (int trial = 0; trial < 250; ++trial) {
    auto m = testing::random_collinear_morphism(rng);
    const int n = m.domain().size();
    REQUIRE(is_parikh_collinear(m));
    auto M = adjacency_matrix(m);

    auto u = testing::random_word(rng, n, 12);
    auto v = testing::random_word(rng, n, 12);
    Word uv = u;
    uv.insert(uv.end(), v.begin(), v.end());
    auto pu = parikh(u, n), pvv = parikh(v, n), puv = parikh(uv, n);
    for (std::size_t i = 0; i < puv.size(); ++i) CHECK(puv[i] == pu[i] + pvv[i]);

    auto image = parikh(pcabel::apply(m, uv), n);
    for (std::size_t b = 0; b < static_cast<std::size_t>(n); ++b) {
      std::int64_t s = 0;
      for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) s += M[b][c] * puv[c];
      CHECK(s == image[b]);
    }

    auto part = mortal_partition(m);
    auto k = eigenvalue(m);
    for (Letter a : part.immortal) {
      auto psi = parikh(m.image(a), n);
      for (std::size_t b = 0; b < static_cast<std::size_t>(n); ++b) {
        std::int64_t s = 0;
        for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) s += M[b][c] * psi[c];
        CHECK(s == k * psi[b]);
      }
    }

    if (is_prolongable(m, 0)) {
      CHECK(k >= 2);
      auto kp = kappa_projection(m);
      CHECK(eigenvalue(kp.g) == k);
      CHECK(kp.g.min_image_length() > 0);
      const std::size_t N = 40;
      auto gx = fixed_point_prefix(kp.g, kp.from_original[0], N);
      Word lifted;
      for (Letter l : gx) {
        const auto& img = m.image(kp.to_original[static_cast<std::size_t>(l)]);
        lifted.insert(lifted.end(), img.begin(), img.end());
      }
      auto fx = fixed_point_prefix(m, 0, m.max_image_length() * N);
      REQUIRE(lifted.size() <= fx.size());
      CHECK(std::equal(lifted.begin(), lifted.end(), fx.begin()));
      auto short_prefix = fixed_point_prefix(m, 0, 17);
      CHECK(std::equal(short_prefix.begin(), short_prefix.end(), fx.begin()));
    }
  }
}
