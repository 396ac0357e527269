#include <doctest.h>

#include "geo4/pi1_certificates.hpp"

using namespace geo4;

TEST_CASE("1/1 then 1/2 on the telescoping pair") {
  auto g = telescoping_surgery(1, 2);
  auto c = coset_enumeration(g);
  REQUIRE(c.finite);
  CHECK(c.index == 2);
  CHECK(abelianization(g).torsion == std::vector<std::int64_t>{2});
  CHECK(identify_pi1(g) == Pi1Class::z2());
}

TEST_CASE("1/n gives a cyclic group of order n") {
  for (std::int64_t n = 0; n <= 6; ++n) {
    auto ab = abelianization(telescoping_surgery(1, n));
    if (n == 0) {
      CHECK(ab.rank == 1);
      CHECK(ab.torsion.empty());
    } else {
      CHECK(ab.rank == 0);
      CHECK(ab.order() == n);
      CHECK(ab.torsion.size() == (n == 1 ? 0u : 1u));
    }
    CHECK(identify_pi1(telescoping_surgery(1, n), kDefaultCosetCap, true) ==
          Pi1Class::cyclic(n));
  }
}

TEST_CASE("sigma = -3 schedule kills pi1") {
  for (std::int64_t k = 1; k <= 3; ++k) {
    auto g = sigma3_schedule(k);
    CHECK(abelianization(g).trivial());
    auto c = coset_enumeration(g);
    REQUIRE(c.finite);
    CHECK(c.index == 1);
  }
}

TEST_CASE("genus-two amalgam with M(1,1/2) has order two") {
  auto g = evaluate_amalgam(amalgam_r14());
  auto c = coset_enumeration(g);
  REQUIRE(c.finite);
  CHECK(c.index == 2);
  CHECK(abelianization(g).torsion == std::vector<std::int64_t>{2});
  // Neither side kills an edge generator on its own.
  CHECK_THROWS_AS(amalgam_simplify(amalgam_r14()), NoApplicableEdge);
}

TEST_CASE("sign choices do not matter") {
  for (const auto &s : sign_vectors(4)) {
    CHECK(identify_pi1(evaluate_amalgam(amalgam_r16(s))) == Pi1Class::z2());
    CHECK(identify_pi1(evaluate_amalgam(amalgam_r27(s))) == Pi1Class::trivial());
    CHECK(identify_pi1(r615_group(s)) == Pi1Class::trivial());
  }
  auto all = sign_vectors(8);
  CHECK(all.size() == 256);
  for (const auto &s : all)
    CHECK(coset_enumeration(r613_group(s)).index == 1);
}

TEST_CASE("remaining complements") {
  CHECK(identify_pi1(evaluate_amalgam(amalgam_r25())) == Pi1Class::trivial());
  CHECK(identify_pi1(r4n_complement()) == Pi1Class::trivial());
  CHECK(cokernel(dx26_relations()).trivial());
}

TEST_CASE("Z' presentation reduces to three generators") {
  auto s = tietze_simplify(z_prime_four());
  CHECK(s.gens.size() == 3);
  auto ab = abelianization(z_prime_four());
  CHECK(ab.rank == 3);
  CHECK(ab == abelianization(z_prime_three()));
}

TEST_CASE("identify_pi1 leaves non-cyclic groups presented") {
  auto s3 = parse_group("group{ gens: a,b; rels: a^2, b^3, (a b)^2 }");
  CHECK(identify_pi1(s3).kind == Pi1Kind::Presented);
  auto v4 = parse_group("group{ gens: a,b; rels: a^2, b^2, [a,b] }");
  CHECK(identify_pi1(v4).kind == Pi1Kind::Presented);
  CHECK(identify_pi1(telescoping_pair(), 1000, true) == Pi1Class::free_abelian(2));
}

TEST_CASE("every registered check passes") {
  for (const auto &c : group_checks()) {
    auto r = c.run(kDefaultCosetCap);
    INFO(c.name << ": " << r.detail);
    CHECK(r.ok);
  }
  CHECK_THROWS_AS(find_group_check("nope"), InvalidWord);
}
