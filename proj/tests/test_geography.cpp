#include <doctest.h>

#include <algorithm>
#include <optional>
#include <set>

#include "geo4/blocks.hpp"
#include "geo4/planner.hpp"
#include "geo4/scan.hpp"

using namespace geo4;

namespace {

/// Exhaustive search, smallest (g, b, c, d, k) in lexicographic order.
std::optional<Decomposition> brute_decompose(i64 halfc, i64 chi) {
  std::optional<Decomposition> best;
  auto key = [](const Decomposition &x) { return std::tuple(x.g, x.b, x.c, x.d, x.k); };
  for (i64 b = 0; b <= chi; ++b)
    for (i64 c = 0; b + c <= chi; ++c)
      for (i64 d = 0; b + c + d <= chi; ++d)
        for (i64 g = 0; b + c + d + g <= chi; ++g) {
          if (g > 0 && b == 0)
            continue;
          i64 k = chi - b - c - d - g;
          if (3 * b + 2 * c + d + 4 * g != halfc)
            continue;
          Decomposition x{b, c, d, g, k};
          if (!best || key(x) < key(*best))
            best = x;
        }
  return best;
}

std::set<LatticePoint> core_open_points() {
  std::set<LatticePoint> s;
  for (i64 m = 1; m <= 7; ++m)
    s.insert({m, m});
  const LatticePoint off[] = {{1, 4},  {1, 6},  {1, 8},  {1, 9},  {2, 5},  {2, 7},
                              {2, 9},  {2, 10}, {3, 12}, {3, 14}, {4, 13}, {4, 15}};
  for (auto p : off) {
    s.insert(p);
    s.insert({p.n, p.m});
  }
  return s;
}

} // namespace

TEST_CASE("region membership") {
  CHECK(in_region({1, 9}));
  CHECK_FALSE(in_region({1, 10}));
  CHECK(in_region({7, 7}));
  CHECK(in_region({9, 1}));
  CHECK_FALSE(in_region({10, 1}));
  CHECK_FALSE(in_region({0, 3}));
  for (i64 m = 1; m <= 30; ++m)
    for (i64 n = 1; n <= 30; ++n) {
      auto c = chars_from_betti(m, n);
      CHECK(in_region({m, n}) == (c.c1sq >= 0 && reverse_orientation_chars(c).c1sq >= 0));
    }
}

TEST_CASE("decompose examples") {
  CHECK(decompose(3, 1) == Decomposition{1, 0, 0, 0, 0});
  for (i64 k = 1; k <= 5; ++k)
    CHECK(decompose(0, k) == Decomposition{0, 0, 0, 0, k});
  for (i64 g = 1; g <= 6; ++g) {
    CHECK(decompose(4 * g + 3, g + 1) == Decomposition{1, 0, 0, g, 0});
    auto bg = block_chars("Bg", {}, g);
    CHECK(bg.e == 4 * g + 6);
    CHECK(bg.sigma == -2);
  }
  CHECK_THROWS_AS(decompose(4, 1), NoSolution);
  CHECK_THROWS_AS(decompose(-1, 3), NoSolution);
  CHECK_THROWS_AS(decompose(0, 0), NoSolution);
}

TEST_CASE("decompose agrees with exhaustive search") {
  int compared = 0;
  for (i64 chi = 1; chi <= 24; ++chi)
    for (i64 halfc = 0; halfc <= 4 * chi + 2; ++halfc) {
      auto want = brute_decompose(halfc, chi);
      if (want) {
        CHECK(decompose(halfc, chi) == *want);
      } else {
        CHECK(halfc > 4 * chi - 1);
        CHECK_THROWS_AS(decompose(halfc, chi), NoSolution);
      }
      ++compared;
    }
  CHECK(compared > 1000);
}

TEST_CASE("building blocks fold to the sum formulas") {
  // genus-two fiber sum: e adds 4, sigma adds
  auto sum2 = [](CharNumbers a, CharNumbers b) {
    return std::pair{a.e + b.e + 4, a.sigma + b.sigma};
  };
  auto pair = [](const CharNumbers &c) { return std::pair{c.e, c.sigma}; };
  auto W1 = block_chars("W1"), W2 = block_chars("W2"), M = block_chars("M");
  CHECK(pair(W1) == std::pair<i64, i64>{4, -4});
  CHECK(pair(W2) == std::pair<i64, i64>{2, -2});
  CHECK(pair(M) == std::pair<i64, i64>{0, 0});
  CHECK(pair(block_chars("B")) == sum2(W2, M));
  CHECK(pair(block_chars("B")) == std::pair<i64, i64>{6, -2});
  CHECK(pair(block_chars("C")) == sum2(W1, M));
  CHECK(pair(block_chars("C")) == std::pair<i64, i64>{8, -4});
  CHECK(pair(block_chars("D")) == sum2(W1, W2));
  CHECK(pair(block_chars("D")) == std::pair<i64, i64>{10, -6});
  for (i64 g = 1; g <= 4; ++g) {
    auto Z = block_chars("Zg", {}, g);
    CHECK(pair(Z) == std::pair<i64, i64>{4 * g - 4, 0});
    CHECK(pair(block_chars("Bg", {}, g)) == sum2(block_chars("B"), Z));
  }
  for (i64 k = 1; k <= 4; ++k)
    CHECK(pair(block_chars("Nk", k)) == std::pair<i64, i64>{4 * k + 3, -3});
  CHECK(block_chars("T4").b1 == 4);
  for (const auto &name : block_names()) {
    std::optional<i64> k, g;
    if (name == "Sigma2xSigma" || name == "E" || name == "E_2" || name == "E_22" ||
        name == "Eprime" || name == "Pk" || name == "Nk")
      k = 2;
    if (name == "XgLF" || name == "Zg" || name == "Bg")
      g = 2;
    CHECK_NOTHROW(block_chars(name, k, g));
  }
}

TEST_CASE("core-stage scan of the small box") {
  auto rep = scan({1, 15, 1, 15}, Stage::Core);
  std::set<LatticePoint> open(rep.open.begin(), rep.open.end());
  CHECK(rep.open.size() == 31);
  CHECK(open == core_open_points());
  for (const auto &[p, cite] : rep.external)
    CHECK(std::abs(p.m - p.n) <= 1);
}

TEST_CASE("final scan: every planned point validates to its model") {
  auto rep = scan({1, 30, 1, 30});
  for (const auto &p : rep.open) {
    CHECK(p.m == p.n);
    CHECK(p.m <= 7);
  }
  CHECK(rep.open.size() == 7);
  for (const auto &[p, rec] : rep.realized) {
    auto d = validate(rec);
    auto m = classify(d);
    CHECK(m.kind == StandardModel::Kind::Rab);
    CHECK(m.a == p.m);
    CHECK(m.b == p.n);
    CHECK(d.irreducible.is_yes());
    CHECK(d.chars.c1sq >= 0);
    CHECK(std::abs(p.m - p.n) >= 2);
  }
  for (const auto &[p, cite] : rep.external) {
    CHECK(std::abs(p.m - p.n) <= 1);
    CHECK(cite == kExternalCitation);
  }
}

TEST_CASE("orientation reversal mirrors the plan") {
  for (i64 m = 1; m <= 25; ++m)
    for (i64 n = m + 1; n <= 25; ++n) {
      if (!in_region({m, n}))
        continue;
      auto a = plan({m, n}), b = plan({n, m});
      CHECK(a.status == b.status);
      if (a.status != PlanStatus::Realized)
        continue;
      CHECK(b.recipe->root->head == "OrientationReversal");
      auto da = validate(*a.recipe), db = validate(*b.recipe);
      CHECK(db.chars.e == da.chars.e);
      CHECK(db.chars.sigma == -da.chars.sigma);
      CHECK(b.rule == "reversed-" + a.rule);
    }
}

TEST_CASE("planner edge cases") {
  CHECK_THROWS_AS(plan({1, 10}), OutOfRegion);
  CHECK_THROWS_AS(plan({0, 0}), OutOfRegion);
  CHECK(plan({7, 7}).status == PlanStatus::Open);
  CHECK(plan({8, 8}).status == PlanStatus::External);
  CHECK(plan({5, 5}).status == PlanStatus::Open);
  auto r25 = plan({2, 5});
  REQUIRE(r25.status == PlanStatus::Realized);
  CHECK(r25.recipe->root->head == "Z2Construction");
  auto x = plan({2, 14});
  REQUIRE(x.status == PlanStatus::Realized);
  CHECK(x.rule == "xg-z2");
  auto nk = plan({4, 7});
  REQUIRE(nk.status == PlanStatus::Realized);
}

TEST_CASE("scan outputs are deterministic") {
  Bounds b{1, 20, 1, 20};
  auto one = scan(b, Stage::Final, 1), three = scan(b, Stage::Final, 3);
  CHECK(coverage_csv(one) == coverage_csv(three));
  CHECK(coverage_svg(one) == coverage_svg(three));
  auto csv = coverage_csv(one);
  CHECK(csv.rfind("m,n,status,recipe-id\n", 0) == 0);
  CHECK(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')) == one.total() + 1);

  auto empty = scan({1, 2, 20, 30});
  CHECK(empty.total() == 0);
  CHECK(coverage_csv(empty) == "m,n,status,recipe-id\n");

  auto fig = scan({1, 15, 1, 15}, Stage::Core);
  auto svg = coverage_svg(fig);
  auto count = [&](const std::string &needle) {
    std::size_t c = 0;
    for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1))
      ++c;
    return c;
  };
  CHECK(count("<line ") == 2);
  CHECK(count("fill=\"none\" stroke=\"red\" stroke-width") == 31);
}

TEST_CASE("Y_{g,2k} recipes fold to the table") {
  for (i64 g = 2; g <= 10; ++g)
    for (i64 k = 0; k <= 4; ++k) {
      auto d = validate(y_g2k_recipe(g, k));
      CHECK(d.chars.e == 6 * g + 6 - k);
      CHECK(d.chars.sigma == -4 - 4 * g + k);
      CHECK(d.chars.b2plus == g);
      CHECK(d.chars.b2minus == 5 * g + 4 - k);
      CHECK(d.pi1 == Pi1Class::z2());
    }
}
