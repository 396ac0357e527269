#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "geo4/lefschetz.hpp"
#include "geo4/mcg.hpp"
#include "geo4/pi1_certificates.hpp"
#include "geo4/planner.hpp"
#include "geo4/scan.hpp"
#include "geo4/validate.hpp"

#ifndef GEO4_DEFAULT_FIXTURES
#define GEO4_DEFAULT_FIXTURES "fixtures"
#endif

namespace geo4::cli {

/// Process exit codes.
enum Exit : int {
  kOk = 0,
  kVerifyFailed = 1,
  kParity = 2,
  kOpen = 3,
  kDomain = 4,
};

namespace fs = std::filesystem;
using nlohmann::json;

/// Explicit flag, then GEO4_FIXTURES, then the build-time default.
inline fs::path fixture_dir(const std::string &flag = {}) {
  if (!flag.empty())
    return flag;
  if (const char *env = std::getenv("GEO4_FIXTURES"); env && *env)
    return env;
  return GEO4_DEFAULT_FIXTURES;
}

inline std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in)
    throw ParamOutOfRange("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Regular files below `dir`, sorted by relative path.
inline std::vector<fs::path> fixture_files(const fs::path &dir,
                                           const std::string &ext = {}) {
  std::vector<fs::path> out;
  std::error_code ec;
  if (!fs::is_directory(dir, ec))
    return out;
  for (const auto &e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && (ext.empty() || e.path().extension() == ext))
      out.push_back(e.path());
  std::sort(out.begin(), out.end(), [&](const fs::path &a, const fs::path &b) {
    return a.lexically_relative(dir).generic_string() <
           b.lexically_relative(dir).generic_string();
  });
  return out;
}

/// FNV-1a over relative paths and contents of every fixture file.
inline std::string fixture_hash(const fs::path &dir) {
  std::uint64_t h = 1469598103934665603ull;
  auto feed = [&](const std::string &s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const auto &p : fixture_files(dir)) {
    feed(p.lexically_relative(dir).generic_string());
    feed(read_file(p));
  }
  std::ostringstream o;
  o << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return o.str();
}

inline json descriptor_json(const ManifoldDescriptor &d) {
  json j;
  j["chars"] = d.chars;
  j["pi1"] = to_string(d.pi1);
  j["parity"] = to_string(d.parity);
  j["minimal"] = to_string(d.minimal);
  j["irreducible"] = to_string(d.irreducible);
  j["irreducible_reason"] = d.irreducible.reason;
  j["symplectic"] = d.symplectic;
  return j;
}

/// A recipe file: optional `# point: m n` header, then one node.
struct RecipeFile {
  Recipe recipe;
  std::optional<LatticePoint> point;
};

inline RecipeFile load_recipe(const fs::path &p) {
  std::string text = read_file(p);
  RecipeFile f{parse_recipe(text, p.stem().string()), std::nullopt};
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const std::string tag = "# point:";
    if (line.rfind(tag, 0) == 0) {
      std::istringstream v(line.substr(tag.size()));
      LatticePoint pt;
      if (v >> pt.m >> pt.n)
        f.point = pt;
    }
  }
  return f;
}

inline std::string recipe_file_text(const PlanResult &r) {
  return "# point: " + std::to_string(r.point.m) + " " + std::to_string(r.point.n) +
         "\n# rule: " + r.rule + "\n" + print_recipe(*r.recipe);
}

// ---------------------------------------------------------------------------
// verify

struct Transcript {
  std::ostream &out;
  int passed = 0;
  int failed = 0;

  void record(bool ok, const std::string &name, const std::string &detail,
              const std::string &anchor) {
    (ok ? passed : failed)++;
    out << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty())
      out << "  " << detail;
    if (!anchor.empty())
      out << "  [" << anchor << "]";
    out << "\n";
  }
  template <class F>
  void check(const std::string &name, const std::string &anchor, F &&f) {
    try {
      auto [ok, detail] = f();
      record(ok, name, detail, anchor);
    } catch (const std::exception &e) {
      record(false, name, e.what(), anchor);
    }
  }
};

using Outcome = std::pair<bool, std::string>;

inline void verify_relations(Transcript &t) {
  auto I = [](int g) { return IntMatrix::identity(2 * static_cast<std::size_t>(g)); };
  for (int g = 2; g <= 5; ++g) {
    auto s = standard_surface(g);
    auto h = hyperelliptic_word(g);
    t.check("hyperelliptic-g" + std::to_string(g), "chain word acts as -I",
            [&]() -> Outcome { return {evaluate_matrix(s, h) == -I(g), ""}; });
    t.check("hyperelliptic-squared-g" + std::to_string(g), "square acts as I",
            [&]() -> Outcome { return {evaluate_matrix(s, repeat(h, 2)) == I(g), ""}; });
  }
  for (int g = 2; g <= 3; ++g) {
    t.check("Wg-closes-g" + std::to_string(g), "W_g closes up on homology", [&]() -> Outcome {
      return {closes_over_sphere(build_family(Family::Wg, g)), ""};
    });
    t.check("Vg-closes-g" + std::to_string(g), "fiber-reversing double V_g closes up",
            [&]() -> Outcome { return {closes_over_sphere(build_family(Family::Vg, g)), ""}; });
  }
  for (int g = 2; g <= 4; ++g) {
    auto s = standard_surface(g);
    t.check("lantern-g" + std::to_string(g), "t_a t_b t_c t_d = t_x t_y t_z", [&]() -> Outcome {
      return {evaluate_matrix(s, twists({"a", "b", "c", "d"})) ==
                  evaluate_matrix(s, twists({"x", "y", "z"})),
              ""};
    });
    t.check("lantern-substitution-Vg-g" + std::to_string(g),
            "substitution keeps the monodromy", [&]() -> Outcome {
              auto V = build_family(Family::Vg, g).word;
              auto at = find_lantern(V);
              if (!at)
                return {false, "no lantern pattern"};
              auto V2 = lantern_substitute(V, *at);
              return {V2.size() + 1 == V.size() &&
                          evaluate_matrix(s, V2) == evaluate_matrix(s, V),
                      "at letter " + std::to_string(*at)};
            });
  }
  t.check("ty-z-reflection-g2", "t_y(z) = r(z) in homology", [&]() -> Outcome {
    auto s = standard_surface(2);
    return {twist_image(s, {twist("y")}, "z") == *s.reflection * s.curve("z").homology, ""};
  });
  for (std::int64_t k = 0; k <= 3; ++k)
    t.check("Vg2k-closes-g2-k" + std::to_string(k), "lantern-modified double closes up",
            [&]() -> Outcome { return {closes_over_sphere(build_family(Family::Vg2k, 2, k)), ""}; });
  for (std::int64_t n = 1; n <= 3; ++n)
    t.check("En-closes-n" + std::to_string(n), "(t_a t_b)^{6n} = 1 on the torus",
            [&]() -> Outcome { return {closes_over_sphere(build_family(Family::En, 1, n)), ""}; });
}

/// Word identity files: a JSON list of {name, genus, word, expect, anchor}
/// where expect is "I", "-I" or another word.
inline void verify_words(Transcript &t, const fs::path &dir) {
  for (const auto &p : fixture_files(dir / "words", ".json")) {
    json doc;
    try {
      doc = json::parse(read_file(p));
    } catch (const std::exception &e) {
      t.record(false, p.filename().string(), e.what(), "");
      continue;
    }
    for (const auto &item : doc) {
      std::string name = item.value("name", p.stem().string());
      t.check(name, item.value("anchor", ""), [&]() -> Outcome {
        int g = item.at("genus").get<int>();
        auto s = standard_surface(g);
        auto lhs = evaluate_matrix(s, parse_mc_word(item.at("word").get<std::string>()));
        std::string expect = item.at("expect").get<std::string>();
        IntMatrix want = IntMatrix::identity(2 * static_cast<std::size_t>(g));
        if (expect == "-I")
          want = -want;
        else if (expect != "I")
          want = evaluate_matrix(s, parse_mc_word(expect));
        return {lhs == want, ""};
      });
    }
  }
}

/// Presentation files: a JSON list of {name, group, index?, divisors?,
/// rank?, anchor}.
inline void verify_group_files(Transcript &t, const fs::path &dir, std::int64_t cap) {
  for (const auto &p : fixture_files(dir / "groups", ".json")) {
    json doc;
    try {
      doc = json::parse(read_file(p));
    } catch (const std::exception &e) {
      t.record(false, p.filename().string(), e.what(), "");
      continue;
    }
    for (const auto &item : doc) {
      std::string name = item.value("name", p.stem().string());
      t.check(name, item.value("anchor", ""), [&]() -> Outcome {
        auto g = parse_group(item.at("group").get<std::string>());
        auto ab = abelianization(g);
        std::string detail = "H1 = " + to_string(ab);
        bool ok = true;
        if (item.contains("divisors"))
          ok = ok && ab.torsion == item.at("divisors").get<std::vector<std::int64_t>>();
        if (item.contains("rank"))
          ok = ok && ab.rank == item.at("rank").get<std::int64_t>();
        if (item.contains("index")) {
          auto c = coset_enumeration(g, {}, cap);
          detail += c.finite ? ", index " + std::to_string(c.index) : ", enumeration capped";
          ok = ok && c.finite && c.index == item.at("index").get<std::int64_t>();
        }
        return {ok, detail};
      });
    }
  }
}

inline void verify_groups(Transcript &t, const fs::path &dir, std::int64_t cap) {
  for (const auto &c : group_checks())
    t.check("group:" + c.name, c.claim, [&]() -> Outcome {
      auto r = run_group_check(c.name, cap);
      return {r.ok, r.detail};
    });
  verify_group_files(t, dir, cap);
}

inline void verify_recipes(Transcript &t, const fs::path &dir, std::int64_t cap) {
  for (const auto &p : fixture_files(dir / "recipes", ".recipe")) {
    t.check("recipe:" + p.stem().string(), "validate, classify, round trip", [&]() -> Outcome {
      auto f = load_recipe(p);
      if (!(parse_recipe(print_recipe(f.recipe)) == f.recipe))
        return {false, "print/parse round trip differs"};
      auto d = validate(f.recipe, {cap});
      auto model = classify(d);
      std::string detail = to_string(model) + ", irreducible " + to_string(d.irreducible);
      bool ok = d.irreducible.is_yes() && model.kind == StandardModel::Kind::Rab;
      if (f.point)
        ok = ok && model.a == f.point->m && model.b == f.point->n;
      return {ok, detail};
    });
  }
}

// ---------------------------------------------------------------------------
// Command line

struct Options {
  std::string fixtures;
  std::int64_t coset_cap = kDefaultCosetCap;
  unsigned threads = 0;
};

inline Stage parse_stage(const std::string &s) {
  if (s == "core")
    return Stage::Core;
  if (s == "final")
    return Stage::Final;
  throw ParamOutOfRange("stage must be 'core' or 'final'");
}

inline void print_chars_table(std::ostream &out, const CharNumbers &c) {
  auto opt = [](const std::optional<i64> &v) { return v ? std::to_string(*v) : std::string("?"); };
  out << "e       " << c.e << "\n"
      << "sigma   " << c.sigma << "\n"
      << "b1      " << opt(c.b1) << "\n"
      << "b2+     " << opt(c.b2plus) << "\n"
      << "b2-     " << opt(c.b2minus) << "\n"
      << "c1^2    " << c.c1sq << "\n"
      << "chi_h   " << to_string(c.chih) << "\n";
}

/// Maps library errors onto the exit-code contract.
inline int exit_code_for(const Error &e) {
  if (e.kind() == "ParityMismatch")
    return kParity;
  if (e.kind() == "InvariantMismatch" || e.kind() == "UnanchoredCertificate" ||
      e.kind() == "RejectedDescriptor")
    return kVerifyFailed;
  return kDomain;
}

/// Runs one command line; argv[0] is not included in `args`.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"geo4: characteristic numbers, Lefschetz words and the b1 = 0, pi1 = Z2 geography"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file; [section] headers select a subcommand");
  Options opt;
  app.add_option("--fixtures", opt.fixtures, "fixture directory (default: $GEO4_FIXTURES)");
  app.add_option("--coset-cap", opt.coset_cap, "coset enumeration cap")->check(CLI::PositiveNumber);
  app.add_option("--threads", opt.threads, "scan threads (0 = hardware)");

  // convert
  auto *convert = app.add_subcommand("convert", "print every coordinate of one point");
  std::optional<i64> e, sigma, b1, b2p, b2m, c1sq;
  std::optional<std::string> chih;
  bool convert_json = false;
  convert->add_option("--e", e);
  convert->add_option("--sigma", sigma);
  convert->add_option("--b1", b1, "with --e/--sigma (default 0)");
  convert->add_option("--b2plus", b2p);
  convert->add_option("--b2minus", b2m);
  convert->add_option("--c1sq", c1sq);
  convert->add_option("--chih", chih, "integer or p/q");
  convert->add_flag("--json", convert_json);

  // plan
  auto *planc = app.add_subcommand("plan", "plan one lattice point (m, n) = (b2+, b2-)");
  i64 pm = 0, pn = 0;
  std::string emit, stage_name = "final";
  bool plan_json = false;
  planc->add_option("m", pm)->required();
  planc->add_option("n", pn)->required();
  planc->add_option("--emit-recipe", emit, "write the recipe to FILE");
  planc->add_option("--stage", stage_name, "core or final");
  planc->add_flag("--json", plan_json);

  // scan
  auto *scanc = app.add_subcommand("scan", "plan every point of a box");
  std::vector<i64> mr{1, 15}, nr{1, 15};
  std::string csv, svg, scan_stage = "final";
  bool scan_json = false;
  scanc->add_option("--m-range", mr, "LO HI")->expected(2);
  scanc->add_option("--n-range", nr, "LO HI")->expected(2);
  scanc->add_option("--csv", csv, "write CSV to FILE");
  scanc->add_option("--svg", svg, "write SVG to FILE");
  scanc->add_option("--stage", scan_stage, "core or final");
  scanc->add_flag("--json", scan_json);

  // verify
  auto *verify = app.add_subcommand("verify", "run a fixture suite");
  std::string what;
  verify->add_option("suite", what)
      ->required()
      ->check(CLI::IsMember({"relations", "words", "groups", "recipes", "all"}));

  // recipe
  auto *recipec = app.add_subcommand("recipe", "parse, print and optionally validate a recipe");
  std::string recipe_path;
  bool do_validate = false;
  recipec->add_option("file", recipe_path, "recipe file, or - for stdin")->required();
  recipec->add_flag("--validate", do_validate);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError &pe) {
    std::ostringstream o, eo;
    int rc = app.exit(pe, o, eo);
    out << o.str();
    err << eo.str();
    return rc == 0 ? kOk : kDomain;
  }

  const fs::path fix = fixture_dir(opt.fixtures);
  try {
    if (*convert) {
      int given = (e || sigma) + (b2p || b2m) + (c1sq || chih);
      if (given != 1)
        throw ParamOutOfRange("give exactly one of --e/--sigma, --b2plus/--b2minus, --c1sq/--chih");
      CharNumbers c;
      if (e || sigma) {
        if (!e || !sigma)
          throw ParamOutOfRange("--e and --sigma go together");
        c = chars_from(*e, *sigma, b1.value_or(0));
      } else if (b2p || b2m) {
        if (!b2p || !b2m)
          throw ParamOutOfRange("--b2plus and --b2minus go together");
        if (*b2p < 0 || *b2m < 0)
          throw NegativeBetti("b2 must be non-negative");
        c = chars_from_betti(*b2p, *b2m);
      } else {
        if (!c1sq || !chih)
          throw ParamOutOfRange("--c1sq and --chih go together");
        c = chars_from_c1sq_chih(*c1sq, rational_from_string(*chih));
      }
      if (convert_json) {
        json j = c;
        j["fixture_hash"] = fixture_hash(fix);
        out << j.dump(2) << "\n";
      } else {
        print_chars_table(out, c);
      }
      return kOk;
    }

    if (*planc) {
      auto r = plan({pm, pn}, parse_stage(stage_name));
      std::optional<ManifoldDescriptor> d;
      std::optional<StandardModel> model;
      if (r.status == PlanStatus::Realized) {
        d = validate(*r.recipe, {opt.coset_cap});
        model = classify(*d);
      }
      if (!emit.empty()) {
        if (!r.recipe) {
          err << "no recipe for " << to_string(r.point) << "\n";
        } else {
          std::ofstream f(emit, std::ios::binary);
          f << recipe_file_text(r);
          if (!f)
            throw ParamOutOfRange("cannot write " + emit);
        }
      }
      if (plan_json) {
        json j;
        j["point"] = {{"m", r.point.m}, {"n", r.point.n}};
        j["status"] = to_string(r.status);
        j["rule"] = r.rule;
        j["recipe"] = r.recipe ? json(print_recipe(*r.recipe)) : json(nullptr);
        j["citation"] = r.citation.empty() ? json(nullptr) : json(r.citation);
        j["descriptor"] = d ? descriptor_json(*d) : json(nullptr);
        j["model"] = model ? json(to_string(*model)) : json(nullptr);
        j["fixture_hash"] = fixture_hash(fix);
        out << j.dump(2) << "\n";
      } else {
        out << "point         " << to_string(r.point) << "\n"
            << "status        " << to_string(r.status) << "\n"
            << "rule          " << r.rule << "\n";
        if (!r.citation.empty())
          out << "citation      " << r.citation << "\n";
        if (model)
          out << "model         " << to_string(*model) << "\n"
              << "irreducible   " << to_string(d->irreducible) << " ("
              << d->irreducible.reason << ")\n";
        out << "fixture-hash  " << fixture_hash(fix) << "\n";
        if (r.recipe)
          out << "\n" << print_recipe(*r.recipe);
      }
      return r.status == PlanStatus::Open ? kOpen : kOk;
    }

    if (*scanc) {
      Bounds b{mr[0], mr[1], nr[0], nr[1]};
      if (b.m_lo > b.m_hi || b.n_lo > b.n_hi)
        throw ParamOutOfRange("empty or reversed range");
      auto rep = scan(b, parse_stage(scan_stage), opt.threads);
      auto write = [](const std::string &path, const std::string &text) {
        std::ofstream f(path, std::ios::binary);
        f << text;
        if (!f)
          throw ParamOutOfRange("cannot write " + path);
      };
      if (!csv.empty())
        write(csv, coverage_csv(rep));
      if (!svg.empty())
        write(svg, coverage_svg(rep));
      if (scan_json) {
        json j;
        j["bounds"] = {b.m_lo, b.m_hi, b.n_lo, b.n_hi};
        j["realized"] = rep.realized.size();
        j["external"] = rep.external.size();
        j["open"] = json::array();
        for (const auto &p : rep.open)
          j["open"].push_back({p.m, p.n});
        j["fixture_hash"] = fixture_hash(fix);
        out << j.dump(2) << "\n";
      } else {
        out << "box       [" << b.m_lo << "," << b.m_hi << "] x [" << b.n_lo << "," << b.n_hi
            << "]\nrealized  " << rep.realized.size() << "\nexternal  " << rep.external.size()
            << "\nopen      " << rep.open.size() << "\n";
        for (const auto &p : rep.open)
          out << "  " << to_string(p) << "\n";
        out << "fixture-hash  " << fixture_hash(fix) << "\n";
      }
      return kOk;
    }

    if (*verify) {
      Transcript t{out};
      out << "fixtures " << fix.string() << " " << fixture_hash(fix) << "\n";
      if (what == "relations" || what == "all")
        verify_relations(t);
      if (what == "words" || what == "all")
        verify_words(t, fix);
      if (what == "groups" || what == "all")
        verify_groups(t, fix, opt.coset_cap);
      if (what == "recipes" || what == "all")
        verify_recipes(t, fix, opt.coset_cap);
      out << t.passed << " passed, " << t.failed << " failed\n";
      return t.failed == 0 && t.passed > 0 ? kOk : kVerifyFailed;
    }

    if (*recipec) {
      std::string text;
      if (recipe_path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        text = s.str();
      } else {
        text = read_file(recipe_path);
      }
      auto r = parse_recipe(text, fs::path(recipe_path).stem().string());
      std::string printed = print_recipe(r);
      if (!(parse_recipe(printed) == r)) {
        err << "round trip failed\n";
        return kVerifyFailed;
      }
      out << printed;
      if (do_validate) {
        auto rep = validate_report(r, {opt.coset_cap});
        out << "\n";
        for (const auto &line : rep.trail)
          out << "  " << line << "\n";
        out << "model         " << to_string(classify(rep.descriptor)) << "\n"
            << "irreducible   " << to_string(rep.descriptor.irreducible) << "\n";
      }
      return kOk;
    }
  } catch (const Error &ex) {
    err << ex.what() << "\n";
    return exit_code_for(ex);
  } catch (const std::exception &ex) {
    err << ex.what() << "\n";
    return kDomain;
  }
  return kDomain;
}

} // namespace geo4::cli
