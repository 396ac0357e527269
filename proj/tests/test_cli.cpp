#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <cstdlib>
#include <unistd.h>

#include "geo4/cli.hpp"

using namespace geo4;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const fs::path kFixtures = fs::path(GEO4_SOURCE_DIR) / "fixtures";

/// Scratch directory removed on scope exit.
struct TempDir {
  fs::path path;
  explicit TempDir(const std::string &tag) {
    path = fs::temp_directory_path() / ("geo4-test-" + tag + "-" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void write(const fs::path &p, const std::string &text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

} // namespace

TEST_CASE("convert") {
  auto r = run({"convert", "--e", "16", "--sigma", "-12"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("b2+     1\n") != std::string::npos);
  CHECK(r.out.find("b2-     13\n") != std::string::npos);

  r = run({"convert", "--chih", "1", "--c1sq", "0"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("e       12\n") != std::string::npos);

  r = run({"convert", "--e", "3", "--sigma", "0"});
  CHECK(r.code == cli::kParity);
  CHECK(r.err.find("ParityMismatch") != std::string::npos);

  r = run({"convert", "--b2plus", "2", "--b2minus", "5", "--json"});
  CHECK(r.code == cli::kOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["e"] == 9);
  CHECK(j["sigma"] == -3);

  CHECK(run({"convert", "--chih", "1/3", "--c1sq", "0"}).code == cli::kParity);
  CHECK(run({"convert", "--e", "3"}).code == cli::kDomain);
  CHECK(run({"convert", "--e", "2", "--sigma", "0", "--b2plus", "1", "--b2minus", "1"}).code ==
        cli::kDomain);
  CHECK(run({"convert", "--e", "0", "--sigma", "-4"}).code == cli::kDomain);
}

TEST_CASE("plan exit codes") {
  auto r = run({"plan", "2", "5"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("status        realized") != std::string::npos);
  CHECK(r.out.find("R_{2,5}") != std::string::npos);
  CHECK(r.out.find("fixture-hash  fnv1a64:") != std::string::npos);

  CHECK(run({"plan", "7", "7"}).code == cli::kOpen);
  CHECK(run({"plan", "1", "10"}).code == cli::kDomain);
  CHECK(run({"plan", "4", "5"}).code == cli::kOk);
  CHECK(run({"plan", "2", "5", "--stage", "core"}).code == cli::kOpen);
  CHECK(run({"plan", "2", "5", "--stage", "weird"}).code == cli::kDomain);
  CHECK(run({"plan", "x", "5"}).code == cli::kDomain);
}

TEST_CASE("plan --emit-recipe writes a file that validates") {
  TempDir tmp("emit");
  auto file = tmp.path / "out.recipe";
  auto r = run({"plan", "2", "14", "--emit-recipe", file.string()});
  REQUIRE(r.code == cli::kOk);
  auto f = cli::load_recipe(file);
  REQUIRE(f.point.has_value());
  CHECK(*f.point == LatticePoint{2, 14});
  auto v = run({"recipe", file.string(), "--validate"});
  CHECK(v.code == cli::kOk);
  CHECK(v.out.find("R_{2,14}") != std::string::npos);
}

TEST_CASE("recipe command") {
  TempDir tmp("recipe");
  write(tmp.path / "bad.recipe", "Block(B, e=6, sigma=-4)\n");
  write(tmp.path / "broken.recipe", "FiberSum(\n  Block(W1),\n  Block(M)\n");
  write(tmp.path / "good.recipe", "Block(B,   e=6,sigma=-2)");
  CHECK(run({"recipe", (tmp.path / "bad.recipe").string(), "--validate"}).code ==
        cli::kVerifyFailed);
  auto broken = run({"recipe", (tmp.path / "broken.recipe").string()});
  CHECK(broken.code == cli::kDomain);
  CHECK(broken.err.find("ParseError: 4:") != std::string::npos);
  auto good = run({"recipe", (tmp.path / "good.recipe").string()});
  CHECK(good.code == cli::kOk);
  CHECK(good.out == "Block(B, e=6, sigma=-2)\n");
  CHECK(run({"recipe", (tmp.path / "missing.recipe").string()}).code == cli::kDomain);
}

TEST_CASE("scan writes byte-stable files") {
  TempDir tmp("scan");
  auto a = tmp.path / "a.csv", b = tmp.path / "b.csv", svg = tmp.path / "s.svg";
  auto r = run({"scan", "--stage", "core", "--csv", a.string(), "--svg", svg.string()});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("open      31\n") != std::string::npos);
  CHECK(run({"scan", "--stage", "core", "--threads", "1", "--csv", b.string()}).code == cli::kOk);
  CHECK(cli::read_file(a) == cli::read_file(b));
  CHECK(cli::read_file(svg).rfind("<svg", 0) == 0);

  auto e = tmp.path / "empty.csv";
  CHECK(run({"scan", "--m-range", "1", "2", "--n-range", "20", "30", "--csv", e.string()}).code ==
        cli::kOk);
  CHECK(cli::read_file(e) == "m,n,status,recipe-id\n");
  CHECK(run({"scan", "--m-range", "5", "1"}).code == cli::kDomain);
}

TEST_CASE("verify suites pass on the shipped fixtures") {
  for (const char *suite : {"relations", "words", "groups", "recipes"}) {
    auto r = run({"--fixtures", kFixtures.string(), "verify", suite});
    CHECK_MESSAGE(r.code == cli::kOk, suite, "\n", r.out);
    CHECK(r.out.find("FAIL") == std::string::npos);
  }
}

TEST_CASE("verify reports failures") {
  TempDir tmp("verify");
  write(tmp.path / "words" / "bad.json",
        R"([{"name": "wrong", "genus": 2, "word": "t[c1]", "expect": "I", "anchor": "x"}])");
  write(tmp.path / "groups" / "bad.json",
        R"([{"name": "wrong-index", "group": "group{ gens: a; rels: a^3 }", "index": 2}])");
  write(tmp.path / "recipes" / "bad.recipe", "# point: 2 5\nBlock(B, e=6, sigma=-2)\n");
  for (const char *suite : {"words", "groups", "recipes"}) {
    auto r = run({"--fixtures", tmp.path.string(), "verify", suite});
    CHECK(r.code == cli::kVerifyFailed);
    CHECK(r.out.find("FAIL") != std::string::npos);
  }
  // nothing to check counts as a failure too
  TempDir none("verify-empty");
  CHECK(run({"--fixtures", none.path.string(), "verify", "recipes"}).code == cli::kVerifyFailed);
  CHECK(run({"verify", "everything"}).code == cli::kDomain);
}

TEST_CASE("fixture hash tracks content") {
  TempDir tmp("hash");
  write(tmp.path / "a.txt", "one");
  auto h1 = cli::fixture_hash(tmp.path);
  CHECK(h1 == cli::fixture_hash(tmp.path));
  write(tmp.path / "a.txt", "two");
  CHECK(cli::fixture_hash(tmp.path) != h1);
  CHECK(h1.size() == std::string("fnv1a64:").size() + 16);
}

TEST_CASE("config file and environment") {
  TempDir tmp("config");
  auto cfg = tmp.path / "geo4.conf";
  write(cfg, "fixtures=" + kFixtures.string() + "\ncoset-cap=50000\n");
  auto r = run({"--config", cfg.string(), "verify", "groups"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find(kFixtures.string()) != std::string::npos);

  ::setenv("GEO4_FIXTURES", tmp.path.string().c_str(), 1);
  CHECK(cli::fixture_dir() == tmp.path);
  CHECK(cli::fixture_dir("elsewhere") == fs::path("elsewhere"));
  ::unsetenv("GEO4_FIXTURES");
}
