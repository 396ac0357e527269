#include <doctest.h>

#include <filesystem>

#include "geo4/cli.hpp"
#include "geo4/planner.hpp"
#include "geo4/recipe.hpp"
#include "geo4/validate.hpp"

using namespace geo4;

namespace {

std::filesystem::path fixtures() { return std::filesystem::path(GEO4_SOURCE_DIR) / "fixtures"; }

int parse_error_column(std::string_view text, int *line = nullptr) {
  try {
    parse_recipe(text);
  } catch (const ParseError &e) {
    if (line)
      *line = e.line();
    return e.column();
  }
  return -1;
}

} // namespace

TEST_CASE("grammar basics") {
  auto r = parse_recipe("Z2(g=2, child=Block(XgLF, g=2))");
  CHECK(r.root->head == "Z2");
  REQUIRE(r.root->args.size() == 2);
  CHECK(r.root->get_int("g") == 2);
  auto c = r.root->find("child");
  REQUIRE(c);
  CHECK(c->node->head == "Block");
  CHECK(c->node->name() == "XgLF");

  auto v = parse_recipe("TorusSurgery(Block(B), torus=T1, coeff=1/2, note=\"x \\\"y\\\"\")");
  CHECK(v.root->get_rational("coeff") == Rational(1, 2));
  CHECK(v.root->get_text("torus") == "T1");
  CHECK(v.root->get_text("note") == "x \"y\"");
  CHECK(v.root->children().size() == 1);

  auto commented = parse_recipe("# header\nBlock(T4, # inline\n e=0, sigma=0)\n# tail\n");
  CHECK(commented.root->get_int("e") == 0);
}

TEST_CASE("print and parse round trip") {
  const char *texts[] = {
      "Block(T4)",
      "BlowUp(count=2, Block(T4), e=2, sigma=-2)",
      "Luttinger(count=1, coeff=1/1, torus=T2, Block(B, attest=Cert(odd, why=\"surface\")))",
      "FiberSum(genus=2, Block(W1), Block(M), note=\"two\\\\parts\")",
  };
  for (auto t : texts) {
    auto r = parse_recipe(t);
    auto printed = print_recipe(r);
    CHECK(parse_recipe(printed) == r);
    CHECK(print_recipe(parse_recipe(printed)) == printed);
  }
  // 1/1 stays a rational after a round trip
  auto one = parse_recipe("X(coeff=1/1)");
  CHECK(one.root->find("coeff")->kind == Value::Kind::Rat);
  CHECK(parse_recipe(print_recipe(one)).root->find("coeff")->kind == Value::Kind::Rat);
}

TEST_CASE("every shipped recipe round trips") {
  std::size_t n = 0;
  for (const auto &p : cli::fixture_files(fixtures() / "recipes", ".recipe")) {
    auto f = cli::load_recipe(p);
    CHECK(parse_recipe(print_recipe(f.recipe)) == f.recipe);
    CHECK(f.point.has_value());
    ++n;
  }
  CHECK(n >= 30);
}

TEST_CASE("planner recipes round trip") {
  for (i64 m = 1; m <= 20; ++m)
    for (i64 n = 1; n <= 20; ++n) {
      if (!in_region({m, n}))
        continue;
      auto r = plan({m, n});
      if (r.recipe)
        CHECK(parse_recipe(print_recipe(*r.recipe)) == *r.recipe);
    }
}

TEST_CASE("parse errors carry positions") {
  int line = 0;
  CHECK(parse_error_column("Block(T4", &line) == 9);
  CHECK(line == 1);
  CHECK(parse_error_column("FiberSum(\n  Block(T4),\n  Block(M)", &line) == 11);
  CHECK(line == 3);
  CHECK(parse_error_column("Block(T4))", &line) == 10);
  CHECK(parse_error_column("Block(coeff=1/0)") == 13);
  CHECK(parse_error_column("Block(T4,)") == 10);
  CHECK(parse_error_column("Block(\"open)") > 0);
  CHECK(parse_error_column("") > 0);
  CHECK(parse_error_column("42") == 1);
}

TEST_CASE("certificates need a known kind and an anchor") {
  CHECK_THROWS_AS(validate(parse_recipe("Block(T4, attest=Cert(odd, why=\"\"))")),
                  UnanchoredCertificate);
  CHECK_THROWS_AS(validate(parse_recipe("Block(T4, attest=Cert(odd, why=\"   \"))")),
                  UnanchoredCertificate);
  CHECK_THROWS_AS(validate(parse_recipe("Block(T4, attest=Cert(odd))")), UnanchoredCertificate);
  CHECK_THROWS_AS(validate(parse_recipe("Block(T4, attest=Cert(lucky, why=\"x\"))")),
                  ParseError);
}

TEST_CASE("shipped recipes anchor every certificate") {
  std::function<void(const RecipeNode &)> walk = [&](const RecipeNode &n) {
    for (const auto &c : n.certificates()) {
      auto why = c->get_text("why");
      REQUIRE(why.has_value());
      CHECK(why->find_first_not_of(" \t") != std::string::npos);
      CHECK(certificate_kinds().count(*c->name()) == 1);
    }
    for (const auto &c : n.children())
      walk(*c);
  };
  for (const auto &p : cli::fixture_files(fixtures() / "recipes", ".recipe"))
    walk(*cli::load_recipe(p).recipe.root);
}

TEST_CASE("expectations guard the fold") {
  CHECK_NOTHROW(validate(parse_recipe("Block(B, e=6, sigma=-2)")));
  CHECK_THROWS_AS(validate(parse_recipe("Block(B, e=6, sigma=-4)")), InvariantMismatch);
  CHECK_THROWS_AS(validate(parse_recipe("BlowUp(count=2, Block(T4), e=2, sigma=-1)")),
                  InvariantMismatch);
  CHECK_THROWS_AS(validate(parse_recipe("Block(T4, e=0, sigma=0, b1=3)")), InvariantMismatch);
  CHECK_THROWS_AS(validate(parse_recipe("Block(T4)")), InvariantMismatch);

  // one digit changed inside a shipped recipe
  auto text = cli::read_file(fixtures() / "recipes" / "R_2_5.recipe");
  auto r = parse_recipe(text);
  auto pos = text.rfind("sigma=-3");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 8, "sigma=-5");
  CHECK_THROWS_AS(validate(parse_recipe(text)), InvariantMismatch);
  CHECK_NOTHROW(validate(r));
}

TEST_CASE("unknown heads and keys are rejected") {
  CHECK_THROWS_AS(validate(parse_recipe("Frobnicate(Block(T4, e=0, sigma=0), e=0, sigma=0)")), ParseError);
  CHECK_THROWS_AS(validate(parse_recipe("BlowUp(count=1, Block(T4, e=0, sigma=0), colour=red, e=1, sigma=-1)")), ParseError);
  CHECK_THROWS_AS(validate(parse_recipe("Block(Nope)")), ParamOutOfRange);
  CHECK_THROWS_AS(validate(parse_recipe("ExternalReference(note=\"x\")")), RuleNotApplicable);
  CHECK_THROWS_AS(validate(parse_recipe("Quotient(g=2, Block(XgLF, g=2, e=16, sigma=-12), e=8, sigma=-6)")), RuleNotApplicable);
}

TEST_CASE("a hand-written pipeline validates") {
  // Z2-construction of the genus-two fibration X_2: the point (2, 14).
  const std::string body = R"(
    Z2Construction(
      g=2,
      Block(XgLF, g=2, e=16, sigma=-12),
      attest=Cert(meridian_trivial, why="a section meets every fiber once"),
      %RELMIN%
      e=18, sigma=-12))";
  auto with = [&](const std::string &extra) {
    auto t = body;
    t.replace(t.find("%RELMIN%"), 8, extra);
    return validate(parse_recipe(t));
  };
  auto bare = with("");
  CHECK(bare.pi1 == Pi1Class::z2());
  CHECK_FALSE(bare.irreducible.is_yes());
  auto m = classify(bare);
  CHECK(m.kind == StandardModel::Kind::Rab);
  CHECK(m.a == 2);
  CHECK(m.b == 14);

  auto full = with("attest=Cert(relmin, why=\"fiber-sum pieces carry no stray spheres\"),");
  CHECK(full.irreducible.is_yes());
  CHECK(classify(full) == m);
}
