#include <doctest.h>

#include <random>

#include "geo4/fpgroup.hpp"

using namespace geo4;

namespace {

FpGroup telescoping() {
  return parse_group("group{ gens: a1, b2; rels: [a1,b2] }");
}

} // namespace

TEST_CASE("presentation literal parses and prints") {
  auto g = parse_group("group{ gens: a1,b2; rels: [a1,b2], a1, b2^2 }");
  CHECK(g.gens == std::vector<std::string>{"a1", "b2"});
  REQUIRE(g.rels.size() == 3);
  CHECK(g.rels[0] == Word{1, 2, -1, -2});
  CHECK(g.rels[2] == Word{2, 2});
  auto again = parse_group(print_group(g));
  CHECK(again.gens == g.gens);
  CHECK(again.rels == g.rels);
  CHECK_THROWS_AS(parse_group("group{ gens: a; rels: b }"), ParseError);
  CHECK_THROWS_AS(parse_group("group{ gens: a; rels: [a, }"), ParseError);
}

TEST_CASE("commutator convention is u v u^-1 v^-1") {
  CHECK(commutator({1}, {2}) == Word{1, 2, -1, -2});
  CHECK(commutator({-1}, {-2}) == Word{-1, -2, 1, 2});
}

TEST_CASE("Z2 presentation: index 2, divisors [2]") {
  auto g = parse_group("group{ gens: a1,b2; rels: [a1,b2], a1, b2^2 }");
  auto ab = abelianization(g);
  CHECK(ab.rank == 0);
  CHECK(ab.torsion == std::vector<std::int64_t>{2});
  auto c = coset_enumeration(g);
  REQUIRE(c.finite);
  CHECK(c.index == 2);
}

TEST_CASE("small enumerations") {
  CHECK(coset_enumeration(parse_group("group{ gens: x; rels: x }")).index == 1);
  auto s3 = parse_group("group{ gens: a,b; rels: a^2, b^3, (a b)^2 }");
  CHECK(coset_enumeration(s3).index == 6);
  CHECK(coset_enumeration(s3, {Word{1}}).index == 3);
  // Free group: never a false Finite.
  auto f2 = parse_group("group{ gens: a,b; rels: }");
  auto r = coset_enumeration(f2, {}, 500);
  CHECK_FALSE(r.finite);
  CHECK(abelianization(f2).rank == 2);
  // Binary icosahedral group, order 120.
  auto q = parse_group("group{ gens: a,b; rels: a^2 = b^3, b^3 = (a b)^5, a^4 }");
  CHECK(coset_enumeration(q).index == 120);
}

TEST_CASE("coset index is consistent with the abelianization order") {
  const char *groups[] = {
      "group{ gens: a,b; rels: a^3, b^4, [a,b] }",
      "group{ gens: a,b; rels: a^2, b^2, (a b)^5 }",
      "group{ gens: a,b,c; rels: a^2, b^2, c^2, (a b)^3, (b c)^3, (a c)^2 }",
      "group{ gens: a,b; rels: a^5, b^4, b a b^-1 a^-2 }",
  };
  for (auto text : groups) {
    auto g = parse_group(text);
    auto c = coset_enumeration(g);
    REQUIRE(c.finite);
    auto ab = abelianization(g);
    REQUIRE(ab.rank == 0);
    CHECK(c.index % ab.order() == 0);
  }
}

TEST_CASE("is_trivial_in") {
  auto g = parse_group("group{ gens: a,b; rels: a^2, b^3, (a b)^2 }");
  CHECK(is_trivial_in(g, power({1}, 2)).value());
  CHECK_FALSE(is_trivial_in(g, {1}).value());
  CHECK(is_trivial_in(g, {1, 2, 1, 2}).value());
  auto f = parse_group("group{ gens: a; rels: }");
  CHECK_FALSE(is_trivial_in(f, {1}, 100).has_value());
}

TEST_CASE("Tietze simplification") {
  auto g = tietze_simplify(parse_group("group{ gens: a,b; rels: a b^-1 }"));
  CHECK(g.gens == std::vector<std::string>{"a"});
  CHECK(g.rels.empty());

  auto z = parse_group("group{ gens: a1,a2,a3,a4;"
                       " rels: a3 = [a1^-1,a4^-1], a4 = [a1,a3^-1],"
                       " [a1,a2], [a2,a3], [a2,a4], [a3,a4] }");
  auto s = tietze_simplify(z);
  CHECK(s.gens.size() < z.gens.size());
  CHECK(abelianization(s) == abelianization(z));
  auto twice = tietze_simplify(s);
  CHECK(twice.gens == s.gens);
  CHECK(twice.rels == s.rels);
}

TEST_CASE("Tietze preserves abelianization on random presentations") {
  std::mt19937 rng(7);
  for (int t = 0; t < 200; ++t) {
    FpGroup g;
    int n = 2 + static_cast<int>(rng() % 3);
    for (int i = 0; i < n; ++i)
      g.gens.push_back("g" + std::to_string(i));
    int r = static_cast<int>(rng() % 4);
    for (int j = 0; j < r; ++j) {
      Word w;
      int len = 1 + static_cast<int>(rng() % 6);
      for (int k = 0; k < len; ++k) {
        int l = 1 + static_cast<int>(rng() % static_cast<unsigned>(n));
        w.push_back(rng() % 2 ? l : -l);
      }
      g.rels.push_back(w);
    }
    CHECK(abelianization(tietze_simplify(g)) == abelianization(g));
  }
}

TEST_CASE("surgery quotients on the telescoping pair") {
  auto g = telescoping();
  auto a1 = g.gen("a1"), b2 = g.gen("b2");
  // 1/1 on the first torus kills a1 (meridian trivial), 1/2 on the second
  // leaves b2^2.
  auto h = surgery_quotient(surgery_quotient(g, {}, a1, 1, 1), {}, b2, 1, 2);
  CHECK(abelianization(h).torsion == std::vector<std::int64_t>{2});
  CHECK(coset_enumeration(h).index == 2);
  for (std::int64_t n = 0; n <= 6; ++n) {
    auto q = surgery_quotient(surgery_quotient(g, {}, a1, 1, 1), {}, b2, 1, n);
    auto snf = smith_normal_form(relation_matrix(q));
    // Divisors after dropping units: exactly [n].
    std::vector<std::int64_t> nonunit;
    for (auto d : snf.divisors)
      if (d != 1)
        nonunit.push_back(d);
    CHECK(nonunit == (n == 1 ? std::vector<std::int64_t>{}
                             : std::vector<std::int64_t>{n}));
  }
  CHECK_THROWS_AS(surgery_quotient(g, {3}, {}, 1, 1), InvalidWord);
}

TEST_CASE("amalgam evaluation") {
  auto g1 = parse_group("group{ gens: x; rels: x^4 }");
  auto triv = FpGroup{};
  AmalgamDescription a{g1, triv, {}};
  auto e = evaluate_amalgam(a);
  CHECK(e.gens == g1.gens);
  CHECK(abelianization(e) == abelianization(g1));

  auto g2 = parse_group("group{ gens: x; rels: x^6 }");
  AmalgamDescription free_prod{g1, g2, {}};
  auto fp = evaluate_amalgam(free_prod);
  CHECK(fp.gens == std::vector<std::string>{"x", "x'"});
  CHECK(abelianization(fp).torsion == std::vector<std::int64_t>{2, 12});

  AmalgamDescription glued{g1, g2, {{"h", {1}, {1}}}};
  CHECK(abelianization(evaluate_amalgam(glued)).torsion ==
        std::vector<std::int64_t>{2});
}

TEST_CASE("amalgam simplification") {
  auto g1 = parse_group("group{ gens: u; rels: u }");
  auto g2 = parse_group("group{ gens: m, v; rels: [m, v] }");
  AmalgamDescription a{g1, g2, {{"mu", {1}, {1}}}};
  auto before = abelianization(evaluate_amalgam(a));
  auto s = amalgam_simplify(a);
  CHECK(s.edges.empty());
  CHECK(abelianization(s.g2).rank == 1);
  CHECK(abelianization(evaluate_amalgam(s)) == before);

  auto z = parse_group("group{ gens: u; rels: u^3 }");
  AmalgamDescription none{z, z, {{"h", {1}, {1}}}};
  CHECK_THROWS_AS(amalgam_simplify(none), NoApplicableEdge);
}

TEST_CASE("punctured-torus complement tables, k = 1") {
  auto cp = product_complement_presentation(1, false);
  CHECK(cp.group.gens == std::vector<std::string>{"x1", "y1", "a", "b"});
  CHECK(cp.group.rels.empty());
  auto &g = cp.group;
  auto &t = cp.boundary.at("T1");
  CHECK(t.mu == commutator(inverse(g.gen("b")), inverse(g.gen("y1"))));
  CHECK(t.m == g.gen("x1"));
  CHECK(t.ell == g.gen("a"));
  auto &l = cp.boundary.at("L1");
  CHECK(l.mu == commutator(inverse(g.gen("x1")), g.gen("b")));
  CHECK(l.m == g.gen("y1"));
  CHECK(l.ell == concat(concat(g.gen("b"), g.gen("a")), inverse(g.gen("b"))));
  CHECK_THROWS_AS((void)cp.boundary.at("J1"), InvalidWord);
}

TEST_CASE("closed genus-two complement tables, k = 2") {
  auto cp = product_complement_presentation(2, true);
  auto &g = cp.group;
  CHECK(g.gens.size() == 8);
  auto &j1 = cp.boundary.at("J1");
  CHECK(j1.mu == commutator(inverse(g.gen("x1")), inverse(g.gen("b2"))));
  CHECK(j1.m == g.gen("a2"));
  CHECK(j1.ell == g.gen("y1"));
  auto &j2 = cp.boundary.at("J2");
  CHECK(j2.mu == commutator(inverse(g.gen("a2")), g.gen("x1")));
  CHECK(j2.ell ==
        concat(concat(g.gen("x1"), g.gen("y1")), inverse(g.gen("x1"))));
  CHECK(cp.boundary.at("T2").mu ==
        commutator(inverse(g.gen("b1")), inverse(g.gen("y2"))));
  CHECK(cp.boundary.at("T2").ell == g.gen("a1"));
  REQUIRE(g.rels.size() == 2);
  CHECK(g.rels[1] == commutator(g.gen("b2"), g.gen("y2")));
  CHECK_THROWS_AS(product_complement_presentation(0, true), ParamOutOfRange);
}
