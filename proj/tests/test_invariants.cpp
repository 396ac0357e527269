#include <doctest.h>

#include <random>

#include "geo4/invariants.hpp"

using namespace geo4;

TEST_CASE("chars_from examples") {
  auto c = chars_from(16, -12, 0);
  CHECK(c.b2plus == 1);
  CHECK(c.b2minus == 13);
  CHECK(c.c1sq == -4);
  CHECK(c.chih == Rational(1));

  // g = 3, k = 2 on the Y family
  auto y = chars_from(6 * 3 + 6 - 2, -4 - 4 * 3 + 2, 0);
  CHECK(y.b2plus == 3);
  CHECK(y.b2minus == 17);

  auto s = chars_from(4, 0, 0);
  CHECK(s.b2plus == 1);
  CHECK(s.b2minus == 1);
  CHECK(s.c1sq == 8);
  CHECK(s.chih == Rational(1));
}

TEST_CASE("chars_from errors") {
  CHECK_THROWS_AS(chars_from(3, 0, 0), ParityMismatch);
  CHECK_THROWS_AS(chars_from(0, 0, 0), NegativeBetti);
  CHECK_THROWS_AS(chars_from(2, -4, 0), NegativeBetti);
}

TEST_CASE("alternate constructors agree") {
  for (i64 p = 0; p < 8; ++p)
    for (i64 m = 0; m < 8; ++m) {
      auto a = chars_from_betti(p, m);
      CHECK(a.b2plus == p);
      CHECK(a.b2minus == m);
      CHECK(chars_from_c1sq_chih(a.c1sq, a.chih) == a);
    }
}

TEST_CASE("conversion identities hold on random tuples") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<i64> d(0, 200);
  for (int t = 0; t < 2000; ++t) {
    i64 p = d(rng), m = d(rng);
    i64 e = 2 + p + m, s = p - m;
    auto c = chars_from(e, s, 0);
    CHECK(*c.b2plus + *c.b2minus == e - 2);
    CHECK(c.c1sq == 4 + 5 * p - m);
    CHECK(c.chih == Rational(1 + p, 2));
    CHECK(Rational(e) == 12 * c.chih - c.c1sq);
    CHECK(Rational(c.sigma) == c.c1sq - 8 * c.chih);
  }
}

TEST_CASE("fiber sum") {
  auto a = chars_from(12, -8, 0), b = chars_from(24, -16, 0);
  auto t = fiber_sum_chars(a, b, 1);
  CHECK(t.e == 36);
  CHECK(t.sigma == -24);
  CHECK(fiber_sum_chars(b, a, 1) == t);

  std::vector<std::string> warnings;
  auto old = diag::set_sink([&](const std::string &w) { warnings.push_back(w); });
  auto n0 = make_chars(3, -3, std::nullopt);
  auto sk = make_chars(4 * 3 - 4, 0, std::nullopt);
  CHECK(fiber_sum_chars(n0, sk, 2).e == 4 * 3 + 3);
  diag::set_sink(old);
  CHECK(warnings.size() == 1);

  auto d = fiber_sum_chars(make_chars(4, -4, std::nullopt),
                           make_chars(2, -2, std::nullopt), 2);
  CHECK(d.e == 10);
  CHECK(d.sigma == -6);
  CHECK(d.c1sq == 2);
  CHECK(d.chih == Rational(1));
}

TEST_CASE("blow up and surgery") {
  auto s = chars_from(4, 0, 0);
  auto b = blow_up_chars(s, 4);
  CHECK(b.e == 8);
  CHECK(b.sigma == -4);
  CHECK(b.b2minus == 5);
  CHECK(blow_up_chars(s, 0) == s);
  auto t4 = chars_from(0, 0, 4);
  auto w2 = blow_up_chars(t4, 2);
  CHECK(w2.e == 2);
  CHECK(w2.sigma == -2);
  CHECK(surgery_chars(b) == b);
}

TEST_CASE("Z2 table") {
  auto x = chars_from(16, -12, 0);
  auto d = z2_table_chars(x, 2, Z2Kind::Double);
  CHECK(d.e == 36);
  CHECK(d.sigma == -24);
  CHECK(d.chih == 2 * x.chih + 1);
  auto z = z2_table_chars(x, 2, Z2Kind::Z2Construction);
  CHECK(z.c1sq == x.c1sq + 4);
  CHECK(z.chih == x.chih + Rational(1, 2));
  CHECK(z2_table_chars(x, 1, Z2Kind::Z2Construction) == x);
  CHECK(z2_table_chars(d, 2, Z2Kind::Quotient) == z);
  CHECK_THROWS_AS(z2_table_chars(chars_from(8, -2, 0), 2, Z2Kind::Quotient),
                  IndivisibleQuotient);
  CHECK_THROWS_AS(z2_table_chars(make_chars(7, -3, std::nullopt), 2,
                                 Z2Kind::Quotient),
                  IndivisibleQuotient);
}

TEST_CASE("Z2 table coherence on random inputs") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<i64> d(0, 60);
  for (int t = 0; t < 500; ++t) {
    i64 p = d(rng), m = d(rng);
    auto a = chars_from_betti(p, m);
    for (i64 g = 0; g <= 5; ++g) {
      if (p + g - 1 < 0 || m + g - 1 < 0)
        continue;
      auto dq = z2_table_chars(z2_table_chars(a, g, Z2Kind::Double), g,
                               Z2Kind::Quotient);
      CHECK(dq == z2_table_chars(a, g, Z2Kind::Z2Construction));
    }
  }
}

TEST_CASE("lantern step") {
  auto a = chars_from(36, -24, 0);
  auto l = lantern_chars(a);
  CHECK(l.e == 35);
  CHECK(l.sigma == -23);
  CHECK(l.c1sq - a.c1sq == 1);
  CHECK(l.chih == a.chih);
  CHECK(lantern_chars(a, 0) == a);
}

namespace {
ManifoldDescriptor desc(i64 p, i64 m, Pi1Class pi1, Parity par) {
  ManifoldDescriptor d;
  d.chars = chars_from_betti(p, m);
  d.pi1 = pi1;
  d.parity = par;
  return d;
}
} // namespace

TEST_CASE("classify") {
  auto r = classify(desc(2, 5, Pi1Class::z2(), Parity::Odd));
  CHECK(r.kind == StandardModel::Kind::Rab);
  CHECK(r.a == 2);
  CHECK(r.b == 5);
  auto c = classify(desc(1, 9, Pi1Class::trivial(), Parity::Odd));
  CHECK(c.kind == StandardModel::Kind::CPsum);
  CHECK(c.b == 9);
  CHECK_THROWS_AS(classify(desc(2, 5, Pi1Class::z2(), Parity::Unknown)),
                  InsufficientCertificates);
  auto u = classify(desc(2, 5, Pi1Class::cyclic(3), Parity::Odd));
  CHECK(u.kind == StandardModel::Kind::Unclassified);
}

TEST_CASE("descriptor rules") {
  auto d = apply_rules(desc(2, 5, Pi1Class::z2(), Parity::Odd));
  CHECK(d.w2type == W2Type::TypeI);
  CHECK_THROWS_AS(apply_rules(desc(1, 4, Pi1Class::trivial(), Parity::Even)),
                  RejectedDescriptor);
  CHECK(apply_rules(desc(1, 4, Pi1Class::trivial(), Parity::Unknown)).parity ==
        Parity::Odd);
  CHECK(apply_rules(desc(3, 19, Pi1Class::trivial(), Parity::Unknown)).parity ==
        Parity::Unknown);
}

TEST_CASE("Usher cases") {
  FiberSumMeta m;
  m.genus = 2;
  m.left_minus_one_sphere = false;
  m.right_minus_one_sphere = false;
  m.left_sphere_bundle = false;
  m.right_sphere_bundle = false;
  CHECK(usher_minimality(m) == Minimality::Minimal);
  auto m1 = m;
  m1.left_minus_one_sphere = true;
  CHECK(usher_minimality(m1) == Minimality::NotMinimal);
  auto m2 = m;
  m2.left_sphere_bundle = true;
  m2.right_minimal = false;
  CHECK(usher_minimality(m2) == Minimality::NotMinimal);
  m2.right_minimal = true;
  CHECK(usher_minimality(m2) == Minimality::Minimal);
  FiberSumMeta blank;
  blank.genus = 2;
  CHECK(usher_minimality(blank) == Minimality::Unknown);
}

TEST_CASE("irreducibility rule") {
  auto d = desc(2, 5, Pi1Class::z2(), Parity::Odd);
  d.minimal = Verdict::yes("given");
  d.symplectic = true;
  CHECK(hk_irreducible(d).irreducible.is_yes());
  d.minimal = Verdict::no("blown up");
  CHECK_THROWS_AS(hk_irreducible(d), RuleNotApplicable);
  d.minimal = Verdict::yes("given");
  d.pi1 = Pi1Class::presented("G");
  CHECK_THROWS_AS(hk_irreducible(d), RuleNotApplicable);
}

TEST_CASE("JSON round trip") {
  auto c = chars_from(17, -9, 0);
  nlohmann::json j = c;
  CHECK(j["chih"] == "2/1");
  CHECK(j.get<CharNumbers>() == c);
  j["c1sq"] = 0;
  CHECK_THROWS_AS(j.get<CharNumbers>(), InvariantMismatch);
}
