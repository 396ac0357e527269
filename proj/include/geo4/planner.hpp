#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geo4/recipe.hpp"
#include "geo4/validate.hpp"

namespace geo4 {

/// (b2+, b2-) of a manifold with b1 = 0.
struct LatticePoint {
  i64 m = 0;
  i64 n = 0;
  friend bool operator==(const LatticePoint &, const LatticePoint &) = default;
  friend auto operator<=>(const LatticePoint &, const LatticePoint &) = default;
};

inline std::string to_string(const LatticePoint &p) {
  return "(" + std::to_string(p.m) + "," + std::to_string(p.n) + ")";
}

/// m, n > 0 with c1^2 >= 0 on both sides of the signature-zero line.
inline bool in_region(const LatticePoint &p) {
  return p.m > 0 && p.n > 0 && 4 + 5 * p.m >= p.n && 4 + 5 * p.n >= p.m;
}

struct Decomposition {
  i64 b = 0, c = 0, d = 0, g = 0, k = 0;
  friend bool operator==(const Decomposition &, const Decomposition &) = default;
};

/// Solves halfc = 3b + 2c + d + 4g and chi = b + c + d + g + k with b > 0
/// when g > 0; the lexicographically smallest (g, b, c, d, k) wins.
inline Decomposition decompose(i64 halfc, i64 chi) {
  if (halfc < 0 || chi < 1)
    throw NoSolution("decompose(" + std::to_string(halfc) + ", " +
                     std::to_string(chi) + "): out of domain");
  for (i64 g = 0; 4 * g <= halfc; ++g)
    for (i64 b = g > 0 ? 1 : 0; 3 * b + 4 * g <= halfc; ++b)
      for (i64 c = 0; 3 * b + 2 * c + 4 * g <= halfc; ++c) {
        i64 d = halfc - 3 * b - 2 * c - 4 * g;
        i64 k = chi - b - c - d - g;
        if (k >= 0)
          return {b, c, d, g, k};
      }
  throw NoSolution("decompose(" + std::to_string(halfc) + ", " +
                   std::to_string(chi) + ")");
}

enum class PlanStatus { Realized, External, Open };
enum class Stage { Core, Final };

inline std::string to_string(PlanStatus s) {
  return s == PlanStatus::Realized ? "realized"
         : s == PlanStatus::External ? "external"
                                     : "open";
}

struct PlanResult {
  LatticePoint point;
  PlanStatus status = PlanStatus::Open;
  std::string rule;
  std::optional<Recipe> recipe;
  std::string citation;
};

inline const char *kExternalCitation =
    "Baykur-Stipsicz-Szabo: irreducible structures on the lines sigma in {-1,0,1}";

namespace plan_detail {

struct Piece {
  NodePtr node;
  CharNumbers chars;
};

struct Att {
  std::string kind;
  std::string why;
};

namespace why {
inline const char *meridian =
    "a sphere or section meets the surface once, so its meridian bounds in the complement";
inline const char *odd = "an odd-square surface survives away from the surgery loci";
inline const char *relmin = "exceptional spheres of the pieces meet the summing surface";
inline const char *involution =
    "the reflection commutes with the monodromy at the level of diffeomorphisms";
inline const char *lantern_pi1 =
    "the substituted factorization keeps vanishing cycles that generate the fiber group";
inline const char *lantern_min =
    "no exceptional sphere survives the equivariant lantern substitutions";
inline const char *z22 =
    "the multiple fibers of order two together with the torus sum leave pi1 = Z2";
inline const char *telescoping =
    "the second summand surjects onto the surface group, so both tori keep their roles";
inline const char *fiber_complement =
    "a regular fiber of the Lefschetz fibration has simply connected complement";
} // namespace why

inline Piece finish(NodeBuilder &b, const CharNumbers &c, const std::vector<Att> &atts) {
  for (const auto &a : atts)
    b.attest(a.kind, a.why);
  b.chars(c.e, c.sigma);
  return {b.build(), c};
}

inline Piece blk(const std::string &name, std::optional<i64> k = {},
                 std::optional<i64> g = {}) {
  NodeBuilder b("Block");
  b.pos(name);
  if (k)
    b.kv("k", *k);
  if (g)
    b.kv("g", *g);
  return finish(b, block_chars(name, k, g), {});
}

/// Adds the relmin attestation only when some summand is not known minimal.
inline Piece fsum(i64 genus, const std::vector<Piece> &parts,
                  std::optional<std::string> along = {}, std::vector<Att> atts = {},
                  std::optional<std::string> group = {}, bool relmin = false) {
  NodeBuilder b("FiberSum");
  b.kv("genus", genus);
  if (along)
    b.kv_ident("along", *along);
  if (group)
    b.kv_ident("group", *group);
  CharNumbers c = parts.at(0).chars;
  for (std::size_t i = 1; i < parts.size(); ++i)
    c = fiber_sum_chars(c, parts[i].chars, genus);
  for (const auto &p : parts)
    b.child(p.node);
  if (relmin)
    atts.push_back({"relmin", why::relmin});
  return finish(b, c, atts);
}

inline Piece lutt_torus(const Piece &p, const std::string &torus, i64 q) {
  NodeBuilder b("Luttinger");
  b.kv_ident("torus", torus).kv("coeff", Rational(1, q)).child(p.node);
  return finish(b, surgery_chars(p.chars), {});
}

inline Piece lutt_count(const Piece &p, i64 count, std::optional<std::string> group = {}) {
  NodeBuilder b("Luttinger");
  b.kv("count", count);
  if (group)
    b.kv_ident("group", *group);
  b.child(p.node);
  return finish(b, surgery_chars(p.chars), {});
}

inline Piece blowup(const Piece &p, i64 count) {
  NodeBuilder b("BlowUp");
  b.kv("count", count).child(p.node);
  return finish(b, blow_up_chars(p.chars, count), {});
}

inline Piece z2(const Piece &p, i64 g, std::vector<Att> atts,
                std::optional<std::string> group = {}) {
  NodeBuilder b("Z2Construction");
  b.kv("g", g);
  if (group)
    b.kv_ident("group", *group);
  b.child(p.node);
  auto c = z2_table_chars(p.chars, g, Z2Kind::Z2Construction);
  if (c.sigma % 8 == 0)
    atts.push_back({"odd", why::odd});
  return finish(b, c, atts);
}

inline Piece reversal(const Piece &p) {
  NodeBuilder b("OrientationReversal");
  b.child(p.node);
  return finish(b, reverse_orientation_chars(p.chars), {});
}

/// Telescoping piece Z from a decomposition: B_g then B's, C's and D's.
inline Piece telescoping_sum(const Decomposition &dc) {
  std::vector<Piece> parts;
  i64 bs = dc.b;
  if (dc.g > 0) {
    parts.push_back(blk("Bg", {}, dc.g));
    --bs;
  }
  for (i64 i = 0; i < bs; ++i)
    parts.push_back(blk("B"));
  for (i64 i = 0; i < dc.c; ++i)
    parts.push_back(blk("C"));
  for (i64 i = 0; i < dc.d; ++i)
    parts.push_back(blk("D"));
  if (parts.empty())
    throw NoSolution("empty telescoping sum");
  if (parts.size() == 1)
    return parts[0];
  return fsum(1, parts);
}

/// Z with T1 dealt with: a 1/1 surgery when k = 0, else a sum with E(k).
inline Piece kill_t1(const Decomposition &dc) {
  auto z = telescoping_sum(dc);
  if (dc.k == 0)
    return lutt_torus(z, "T1", 1);
  auto e = blk("E", dc.k);
  return fsum(1, {z, e}, std::string("T1"), {}, {}, dc.k == 1);
}

/// Simply connected minimal symplectic Y with c1^2 = c even, chi_h = chi.
inline Piece sc_even(i64 c, i64 chi) {
  return lutt_torus(kill_t1(decompose(c / 2, chi)), "T2", 1);
}

struct OddBlock {
  const char *name;
  i64 dc, dchi, lo, hi; // lo <= c <= 8 chi - hi
};

inline const OddBlock kOddBlocks[] = {
    {"S11", 1, 2, 1, 17}, {"X312", 7, 2, 7, 11}, {"P58", 21, 3, 21, 5}};

/// Simply connected Y with odd c1^2 = c, or nothing outside the ranges.
inline std::optional<std::pair<Piece, std::string>> sc_odd(i64 c, i64 chi) {
  for (const auto &ob : kOddBlocks) {
    if (c < ob.lo || c > 8 * chi - ob.hi)
      continue;
    i64 c2 = c - ob.dc, chi2 = chi - ob.dchi;
    auto block = blk(ob.name);
    if (c2 == 0) {
      if (std::string(ob.name) == "P58")
        continue;
      return std::make_pair(fsum(1, {blk("Eprime", chi2), block}), std::string(ob.name));
    }
    auto inner = kill_t1(decompose(c2 / 2, chi2));
    return std::make_pair(fsum(1, {inner, block}, std::string("T2")), std::string(ob.name));
  }
  return std::nullopt;
}

inline Recipe make(std::string id, const Piece &p) { return {std::move(id), p.node}; }

inline Piece xg_z2(i64 g) {
  return z2(blk("XgLF", {}, g), g, {{"meridian_trivial", why::meridian},
                                    {"relmin", why::relmin}});
}

} // namespace plan_detail

/// Lefschetz-fibration route to c1^2 = k, chi_h = g + 1: fiber-reversing
/// double of X_g, 2k equivariant lanterns, quotient.
inline Recipe y_g2k_recipe(i64 g, i64 k) {
  using namespace plan_detail;
  auto x = blk("XgLF", {}, g);
  NodeBuilder d("FiberReversingDouble");
  d.kv("g", g).child(x.node);
  auto dbl = finish(d, z2_table_chars(x.chars, g, Z2Kind::Double),
                    {{"involution", why::involution}});
  NodeBuilder l("LanternSub");
  l.kv("count", 2 * k).child(dbl.node);
  auto lan = finish(l, lantern_chars(dbl.chars, 2 * k),
                    {{"involution", why::involution},
                     {"pi1_trivial", why::lantern_pi1},
                     {"minimal", why::lantern_min}});
  NodeBuilder q("Quotient");
  q.kv("g", g).child(lan.node);
  auto qc = z2_table_chars(lan.chars, g, Z2Kind::Quotient);
  std::vector<Att> atts;
  if (qc.sigma % 8 == 0)
    atts.push_back({"odd", why::odd});
  auto quo = finish(q, qc, atts);
  return make("lantern-quotient", quo);
}

namespace plan_detail {

/// sigma <= 0 half; returns nothing when no rule applies.
inline std::optional<PlanResult> plan_canonical(LatticePoint p, Stage stage) {
  const i64 m = p.m, n = p.n;
  const i64 c1 = 4 + 5 * m - n;
  const i64 sigma = m - n;
  PlanResult r;
  r.point = p;
  r.status = PlanStatus::Realized;
  auto done = [&](std::string id, const Piece &piece) {
    r.rule = id;
    r.recipe = make(std::move(id), piece);
    return r;
  };
  std::vector<Att> mer = {{"meridian_trivial", why::meridian}};

  if (m % 2 == 0) {
    const i64 chi = m / 2, c = 5 * m - n;
    if (c > 0 && c <= 8 * chi - 2 && c % 2 == 0)
      return done("z2-even-c", z2(sc_even(c, chi), 2, mer));
    if (c > 0 && c <= 8 * chi - 2 && c % 2 != 0)
      if (auto y = sc_odd(c, chi))
        return done("z2-odd-c-" + y->second, z2(y->first, 2, mer));
    if (sigma == -3 && m >= 4) {
      i64 k = m / 2;
      auto y = lutt_count(blk("Nk", k), 2 + 2 * k, "sigma3_k" + std::to_string(k));
      return done("sigma3-z2", z2(y, 2, mer));
    }
    if (c1 == 0)
      return done("xg-z2", xg_z2(m));
    if (c1 == 4 && m >= 12) {
      auto y = fsum(1, {blk("E", 4), blk("E_2", (m - 8) / 2)});
      return done("e4-sum-z2", z2(y, 2, mer));
    }
  }
  if (c1 >= 1 && c1 <= 3 && m >= 2)
    return done("lantern-quotient", Piece{y_g2k_recipe(m, c1).root,
                                          chars_from_betti(m, n)});
  if (m % 2 == 0) {
    if (c1 == 4 && (m == 4 || m == 6 || m == 8 || m == 10))
      return done("lantern-quotient-8", Piece{y_g2k_recipe(m, 4).root,
                                              chars_from_betti(m, n)});
    if (m == 4 && n == 19)
      return done("s11-z2", z2(blk("S11"), 2, mer));
    if (m == 4 && n == 17)
      return done("gompf-z2", z2(blk("Gompf21"), 2, mer));
    if (m == 4 && (n == 9 || n == 11)) {
      auto x = blk(n == 9 ? "Cprime" : "Dprime");
      auto y = fsum(2, {x, blk("Zprime")}, {}, {}, {}, true);
      return done("w-prime-z2", z2(y, 2, {}, std::string("r4n_complement")));
    }
    if (m == 6 && n == 13) {
      auto y = lutt_count(fsum(2, {blk("BK_CP8"), blk("Sigma2xSigma", 2)}), 4);
      return done("bk-product-z2", z2(y, 2, {}, std::string("r613")));
    }
    if (m == 6 && n == 15) {
      auto y = lutt_count(fsum(2, {blk("BK_3CP12"), blk("M")}), 2);
      return done("bk-torus-product-z2", z2(y, 2, {}, std::string("r615")));
    }
    if (m == 6 && n == 11)
      return done("bk-bhat-z2", z2(fsum(2, {blk("BK_CP4"), blk("Bhat")}, {},
                                        {{"pi1_trivial", why::fiber_complement}}),
                                   2, mer));
  } else {
    const i64 chi = (m + 1) / 2, c = c1;
    auto with_odd = [&](const Piece &y) {
      if (y.chars.sigma % 8 != 0)
        return y;
      auto copy = std::make_shared<RecipeNode>(*y.node);
      auto cn = std::make_shared<RecipeNode>();
      cn->head = "Cert";
      cn->args.push_back({"", Value::ident("odd")});
      cn->args.push_back({"why", Value::string(why::odd)});
      copy->args.insert(copy->args.end() - 2, {"attest", Value::of(cn)});
      return Piece{copy, y.chars};
    };
    if (c > 0 && c <= 8 * chi - 2 && c % 2 == 0) {
      auto dc = decompose(c / 2, chi);
      return done("odd-even-c", with_odd(lutt_torus(kill_t1(dc), "T2", 2)));
    }
    if (c == 0 && chi >= 2)
      return done("odd-c0", z2(blk("E_2", chi), 1, mer));
    if (c > 0 && c % 2 != 0) {
      for (const auto &ob : kOddBlocks) {
        if (c <= ob.lo || c > 8 * chi - ob.hi)
          continue;
        auto dc = decompose((c - ob.dc) / 2, chi - ob.dchi);
        auto z = telescoping_sum(dc);
        auto s = fsum(1, {z, blk(ob.name)}, std::string("T1"));
        if (dc.k == 0)
          return done(std::string("odd-odd-c-") + ob.name, with_odd(lutt_torus(s, "T2", 2)));
        auto y = fsum(1, {s, blk("E_22", dc.k)}, {}, {{"pi1_z2", why::z22}},
                      {}, false);
        return done(std::string("odd-odd-c-") + ob.name + "-e22", with_odd(y));
      }
      for (const auto &ob : kOddBlocks) {
        if (c != ob.lo || chi - ob.dchi < 1)
          continue;
        auto y = fsum(1, {blk(ob.name), blk("E_22", chi - ob.dchi)}, {},
                      {{"pi1_z2", why::z22}});
        return done(std::string("odd-block-e22-") + ob.name, with_odd(y));
      }
      if (sigma == -3 && m >= 5)
        return done("odd-sigma3", lutt_torus(blk("Pk", (m - 1) / 2), "T", 2));
    }
    if (m == 3 && (n == 6 || n == 8 || n == 10)) {
      auto x = blk(n == 6 ? "B" : n == 8 ? "C" : "D");
      auto s = fsum(2, {x, blk("Zprime")}, {}, {{"telescoping", why::telescoping}}, {}, true);
      return done("odd-genus2-sum", lutt_torus(lutt_torus(s, "T1", 1), "T2", 2));
    }
    if (m == 5 && (n == 10 || n == 12 || n == 14)) {
      auto x = blowup(blk(n == 10 ? "B" : n == 12 ? "C" : "D"), 1);
      auto s = fsum(3, {x, blowup(blk("M"), 2)}, {}, {{"telescoping", why::telescoping}},
                    {}, true);
      return done("odd-genus3-sum", lutt_torus(lutt_torus(s, "T1", 1), "T2", 2));
    }
  }
  if ((sigma == 0 || sigma == -1) && !(sigma == 0 && m <= 7)) {
    r.status = PlanStatus::External;
    r.rule = "external";
    r.citation = kExternalCitation;
    return r;
  }
  if (stage == Stage::Final) {
    auto pair = [&](i64 a, i64 b) { return m == a && n == b; };
    if (pair(1, 4))
      return done("final-m-half-zpp", fsum(2, {blk("M1half"), blk("Zpp11")}, {}, {},
                                           std::string("amalgam_r14"), true));
    if (pair(1, 6))
      return done("final-w1-zpp-half", fsum(2, {blk("W1"), blk("Zpp_half1")}, {}, {},
                                            std::string("amalgam_r16"), true));
    if (pair(2, 5))
      return done("final-m11-zpp-z2",
                  z2(fsum(2, {blk("M11"), blk("Zpp11")}, {}, {}, {}, true), 2, {},
                     std::string("amalgam_r25")));
    if (pair(2, 7))
      return done("final-w1-zpp-z2",
                  z2(fsum(2, {blk("W1"), blk("Zpp11")}, {}, {}, {}, true), 2, {},
                     std::string("amalgam_r27")));
    if (pair(1, 8))
      return done("final-bk-r18", blk("BK_R18"));
    if (pair(1, 9))
      return done("final-bk-r19", blk("BK_R19"));
    if (pair(2, 9))
      return done("final-bk-cp8-z2", z2(blk("BK_CP8"), 2, mer));
    if (pair(2, 10))
      return done("final-bk-cp9-z2", z2(blk("BK_CP9"), 2, mer));
    if (pair(4, 13))
      return done("final-bk-3cp12-z2", z2(blk("BK_3CP12"), 2, mer));
    if (pair(4, 15))
      return done("final-bk-3cp14-z2", z2(blk("BK_3CP14"), 2, mer));
    if (pair(3, 12))
      return done("final-bk-r312", blk("BK_R312"));
    if (pair(3, 14))
      return done("final-bk-r314", blk("BK_R314"));
  }
  return std::nullopt;
}

} // namespace plan_detail

/// First matching rule; points with sigma > 0 reuse the mirror point under
/// orientation reversal.
inline PlanResult plan(LatticePoint p, Stage stage = Stage::Final) {
  if (!in_region(p))
    throw OutOfRegion(to_string(p) + " is outside the region");
  bool mirror = p.m > p.n;
  LatticePoint q = mirror ? LatticePoint{p.n, p.m} : p;
  auto r = plan_detail::plan_canonical(q, stage);
  if (!r) {
    PlanResult open;
    open.point = p;
    open.status = PlanStatus::Open;
    open.rule = "open";
    return open;
  }
  r->point = p;
  if (mirror && r->status == PlanStatus::Realized) {
    auto piece = plan_detail::reversal({r->recipe->root, chars_from_betti(q.m, q.n)});
    r->rule = "reversed-" + r->rule;
    r->recipe = Recipe{r->rule, piece.node};
  }
  return *r;
}

} // namespace geo4
